#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <string>
#include <vector>

#include "dla/certificate.hpp"
#include "dla/errors.hpp"
#include "dla/graph.hpp"
#include "dla/pauli.hpp"

using namespace dla;
using R = Rational;

namespace {

PauliSum<R> entry_sum(const CertEntry& e, int n) {
  return e.is_zz ? zz_set<R>(n, e.edges) : x_set<R>(n, e.vertices);
}

/*
 * Replays the rules that map to closed commutator identities:
 *   Axiom           X_V is the mixer, ZZ_E the phase Hamiltonian;
 *   EdgeSplit       ZZ_{E(S,T)} = (1/16)[X_S,[X_S,[X_T,[X_T,H_p]]]];
 *   CommutatorWalk  X_b = f_{ZZ_{ab}}(X_V) - X_a  and, when deg(b) = 2,
 *                   ZZ_{bc} = f_{X_b}(ZZ_E) - ZZ_{ab}.
 * The split rules are replayed structurally by verify_certificate.
 */
std::map<CertRule, int> replay_algebraically(const Certificate& cert, const Graph& g) {
  auto [hm, hp] = hamiltonians_for_graph<R>(g);
  std::map<CertRule, int> replayed;
  for (const CertEntry& e : cert.entries) {
    PauliSum<R> claim = entry_sum(e, g.n);
    auto prem = [&](int i) { return entry_sum(cert.entries[i], g.n); };
    switch (e.rule) {
      case CertRule::Axiom: {
        const PauliSum<R>& axiom = e.is_zz ? hp : hm;
        REQUIRE(claim.terms == axiom.terms);
        break;
      }
      case CertRule::EdgeSplit: {
        PauliSum<R> xs = prem(e.premises[0]), xt = prem(e.premises[1]);
        PauliSum<R> nested = bracket(xs, bracket(xs, bracket(xt, bracket(xt, hp))));
        REQUIRE(claim.terms == scaled(nested, R(1, 16)).terms);
        break;
      }
      case CertRule::CommutatorWalk: {
        // Both walk directions read f against the matching axiom and subtract
        // the element already walked past.
        PauliSum<R> derived = sum(f_apply(prem(e.premises[1]), prem(e.premises[0])),
                                  scaled(prem(e.premises[2]), R(-1)));
        REQUIRE(claim.terms == derived.terms);
        break;
      }
      default:
        break;
    }
    ++replayed[e.rule];
  }
  return replayed;
}

}  // namespace

TEST_CASE("spider certificate derives every singleton") {
  Graph spider = spider_graph({1, 2, 3});
  Certificate cert = certify_asym_subdivision(spider);
  CHECK(cert.n == 7);
  CHECK(cert.entries.size() == 21);

  CertEntry mixer{CertRule::Axiom, {}, false, {0, 1, 2, 3, 4, 5, 6}, {}};
  CertEntry phase{CertRule::Axiom, {}, true, {}, spider.edges};
  CHECK(cert.entries[0] == mixer);
  CHECK(cert.entries[1] == phase);

  CHECK_NOTHROW(verify_certificate(cert, spider));
  CHECK(covers_all_singletons(cert, spider));

  std::map<CertRule, int> hist;
  for (const CertEntry& e : cert.entries) ++hist[e.rule];
  CHECK(hist[CertRule::Axiom] == 2);
  CHECK(hist[CertRule::InternalSplit] == 3);
  CHECK(hist[CertRule::ExternalSplit] == 6);
  CHECK(hist[CertRule::PathPeel] == 2);
  CHECK(hist[CertRule::EdgeSplit] == 3);
  CHECK(hist[CertRule::CommutatorWalk] == 5);
}

TEST_CASE("certificate entries replay through the commutator identities") {
  Graph spider = spider_graph({1, 2, 3});
  auto counts = replay_algebraically(certify_asym_subdivision(spider), spider);
  CHECK(counts[CertRule::EdgeSplit] == 3);
  CHECK(counts[CertRule::CommutatorWalk] == 5);

  Graph second = spider_graph({1, 2, 4});
  CHECK_NOTHROW(replay_algebraically(certify_asym_subdivision(second), second));

  // The 48-vertex reduction output still fits the 64-qubit Pauli engine, so
  // the identities can be replayed at full size.
  Graph big = reduce_to_subdivision(complete_graph(3)).subdivided;
  auto big_counts = replay_algebraically(certify_asym_subdivision(big), big);
  CHECK(big_counts[CertRule::CommutatorWalk] > 30);
}

TEST_CASE("certified sums lie in the multi-angle closure") {
  Graph spider = spider_graph({1, 2, 3});
  Certificate cert = certify_asym_subdivision(spider);
  ClosureResult<R> res = lie_closure<R>(multiangle_generators<R>(spider));
  REQUIRE(res.basis.dim() == 4095);
  for (const CertEntry& e : cert.entries)
    CHECK(span_membership(res.basis, entry_sum(e, spider.n)));
}

TEST_CASE("reduction outputs are always certifiable") {
  for (const Graph& g : {path_graph(2), path_graph(3), path_graph(4), complete_graph(3),
                         star_graph(3), cycle_graph(4), cycle_graph(5), complete_graph(4),
                         complete_graph(5)}) {
    CAPTURE(g.n);
    CAPTURE(g.m());
    Graph sub = reduce_to_subdivision(g).subdivided;
    Certificate cert = certify_asym_subdivision(sub);
    CHECK_NOTHROW(verify_certificate(cert, sub));
    CHECK(covers_all_singletons(cert, sub));
  }
  CHECK(certify_asym_subdivision(reduce_to_subdivision(complete_graph(3)).subdivided)
            .entries.size() == 112);
}

TEST_CASE("structural rejections name the violated property") {
  CHECK_THROWS_AS(certify_asym_subdivision(Graph::make_weighted(2, {{0, 1}}, {2.0})),
                  PreconditionError);
  CHECK_THROWS_WITH_AS(
      certify_asym_subdivision(Graph::make(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})),
      "graph is disconnected", NotASubdivisionError);
  CHECK_THROWS_WITH_AS(certify_asym_subdivision(cycle_graph(9)),
                       "no odd-degree vertices, base would be empty", NotASubdivisionError);

  // A triangle with all three edges subdivided (sizes 2, 2, 4) is a plain
  // 11-cycle: every degree is even, so it fails before path sizes matter.
  Graph tri_sub = Graph::make(11, {{0, 3}, {3, 4}, {4, 1}, {0, 5}, {5, 6}, {6, 2},
                                   {1, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 2}});
  CHECK_THROWS_WITH_AS(certify_asym_subdivision(tri_sub),
                       "no odd-degree vertices, base would be empty", NotASubdivisionError);

  CHECK_THROWS_WITH_AS(certify_asym_subdivision(path_graph(4)),
                       "base graph needs at least 3 vertices, found 2", NotASubdivisionError);
  CHECK_THROWS_WITH_AS(certify_asym_subdivision(star_graph(4)),
                       "even-degree vertex 0 has degree 4, inserted vertices must have degree 2",
                       NotASubdivisionError);
  CHECK_THROWS_WITH_AS(certify_asym_subdivision(complete_graph(4)),
                       "more than one unsubdivided edge", NotASubdivisionError);

  // Star with arms of sizes 1, 2, 3 plus a two-vertex excursion that returns
  // to the center.
  Graph loopback = Graph::make(12, {{0, 4}, {4, 1}, {0, 5}, {5, 6}, {6, 2}, {0, 7}, {7, 8},
                                    {8, 9}, {9, 3}, {0, 10}, {10, 11}, {11, 0}});
  CHECK_THROWS_WITH_AS(certify_asym_subdivision(loopback),
                       "inserted path loops back to base vertex 0", NotASubdivisionError);

  // Two distinct inserted paths joining the same pair of base vertices.
  Graph parallel = Graph::make(10, {{0, 3}, {3, 1}, {0, 4}, {4, 5}, {5, 1}, {1, 7}, {7, 2},
                                    {0, 8}, {8, 9}, {9, 6}});
  CHECK_THROWS_WITH_AS(certify_asym_subdivision(parallel),
                       "parallel connections between base vertices 0 and 1",
                       NotASubdivisionError);

  // Star of arms 2, 2, 4: the sizes the duplicate rule is about.
  Graph dup = Graph::make(12, {{0, 4}, {4, 5}, {5, 1}, {0, 6}, {6, 7}, {7, 2}, {0, 8},
                               {8, 9}, {9, 10}, {10, 11}, {11, 3}});
  CHECK_THROWS_WITH_AS(certify_asym_subdivision(dup), "two inserted paths with equal size 2",
                       NotASubdivisionError);
}

TEST_CASE("verifier rejects tampered certificates") {
  Graph spider = spider_graph({1, 2, 3});
  Certificate good = certify_asym_subdivision(spider);

  Certificate wrong_vertex = good;
  wrong_vertex.entries[16].vertices = {5};
  CHECK_THROWS_AS(verify_certificate(wrong_vertex, spider), ValidationError);

  Certificate wrong_premise = good;
  wrong_premise.entries[16].premises = {0, 13, 9};
  CHECK_THROWS_AS(verify_certificate(wrong_premise, spider), ValidationError);

  Certificate forward = good;
  forward.entries[4].premises = {20};
  CHECK_THROWS_AS(verify_certificate(forward, spider), ValidationError);

  Certificate unsorted = good;
  unsorted.entries[2].vertices = {1, 0, 3, 6};
  CHECK_THROWS_AS(verify_certificate(unsorted, spider), ValidationError);

  Certificate zz_first = good;
  std::swap(zz_first.entries[0], zz_first.entries[1]);
  CHECK_THROWS_WITH_AS(verify_certificate(zz_first, spider),
                       "entry 0: entry 0 must be the mixer axiom", ValidationError);

  Certificate wrong_n = good;
  wrong_n.n = 6;
  CHECK_THROWS_AS(verify_certificate(wrong_n, spider), ValidationError);

  // Dropping the final entry keeps the certificate valid but incomplete.
  Certificate trimmed = good;
  trimmed.entries.pop_back();
  CHECK_NOTHROW(verify_certificate(trimmed, spider));
  CHECK_FALSE(covers_all_singletons(trimmed, spider));
}

TEST_CASE("certificate text round-trips") {
  Graph spider = spider_graph({1, 2, 3});
  Certificate cert = certify_asym_subdivision(spider);
  std::string text = serialize_certificate(cert);
  CHECK(text.substr(0, 20) == "0 Axiom X 0 1 2 3 4 ");
  Certificate back = parse_certificate(text);
  CHECK(back == cert);
  CHECK(serialize_certificate(back) == text);

  CHECK_THROWS_WITH_AS(parse_certificate("0 Bogus X 1\n"), "unknown certificate rule: Bogus",
                       ValidationError);
  CHECK_THROWS_AS(parse_certificate("1 Axiom X 0\n"), ValidationError);
  CHECK_THROWS_AS(parse_certificate("0 Axiom 1 2\n"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_certificate("0 Axiom ZZ 1+2\n"), "malformed edge token: 1+2",
                       ValidationError);
}
