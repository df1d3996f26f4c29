#include "dla/io.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "dla/errors.hpp"
#include "dla/prng.hpp"

namespace dla {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ls(line);
  std::string t;
  while (ls >> t) toks.push_back(t);
  return toks;
}

bool parse_ll(const std::string& s, long long& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

Graph parse_mqlib(std::istream& in, bool ignore_weights) {
  std::string line;
  int lineno = 0;
  long long n = -1, m = -1, read_edges = 0;
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::set<Edge> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (n < 0) {
      if (toks.size() != 2 || !parse_ll(toks[0], n) || !parse_ll(toks[1], m) || n < 0 || m < 0)
        throw ParseError(lineno, "malformed header, expected '<n> <m>'");
      if (n > 10000000) throw ParseError(lineno, "vertex count too large");
      continue;
    }
    if (read_edges == m)
      throw ParseError(lineno, "unexpected line after " + std::to_string(m) + " edges");
    if (toks.size() != 3) throw ParseError(lineno, "expected '<u> <v> <w>'");
    long long u = 0, v = 0;
    double w = 0.0;
    if (!parse_ll(toks[0], u) || !parse_ll(toks[1], v))
      throw ParseError(lineno, "vertex labels must be integers");
    if (!parse_real(toks[2], w)) throw ParseError(lineno, "weight must be a number");
    if (u < 1 || u > n || v < 1 || v > n)
      throw ParseError(lineno, "vertex label out of range 1.." + std::to_string(n));
    if (u == v) throw ParseError(lineno, "self-loop on vertex " + std::to_string(u));
    Edge e = make_edge(static_cast<int>(u) - 1, static_cast<int>(v) - 1);
    if (!seen.insert(e).second)
      throw ParseError(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    edges.push_back(e);
    weights.push_back(w);
    ++read_edges;
  }
  if (n < 0) throw ParseError(lineno + 1, "missing header");
  if (read_edges < m)
    throw ParseError(lineno + 1, "expected " + std::to_string(m) + " edge lines, found " +
                                     std::to_string(read_edges));
  if (ignore_weights) return Graph::make(static_cast<int>(n), std::move(edges));
  return Graph::make_weighted(static_cast<int>(n), std::move(edges), std::move(weights));
}

Graph parse_mqlib(const std::string& text, bool ignore_weights) {
  std::istringstream in(text);
  return parse_mqlib(in, ignore_weights);
}

Graph parse_edgelist(std::istream& in) {
  std::string line;
  int lineno = 0;
  long long maxv = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    long long u = 0, v = 0;
    if (toks.size() != 2 || !parse_ll(toks[0], u) || !parse_ll(toks[1], v))
      throw ParseError(lineno, "expected '<u> <v>'");
    if (u < 0 || v < 0) throw ParseError(lineno, "vertex labels must be nonnegative");
    if (u > 10000000 || v > 10000000) throw ParseError(lineno, "vertex label too large");
    if (u == v) throw ParseError(lineno, "self-loop on vertex " + std::to_string(u));
    Edge e = make_edge(static_cast<int>(u), static_cast<int>(v));
    if (!seen.insert(e).second)
      throw ParseError(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    edges.push_back(e);
    maxv = std::max({maxv, u, v});
  }
  return Graph::make(static_cast<int>(maxv + 1), std::move(edges));
}

Graph parse_edgelist(const std::string& text) {
  std::istringstream in(text);
  return parse_edgelist(in);
}

void emit_mqlib(const Graph& g, std::ostream& out) {
  out << g.n << ' ' << g.m() << '\n';
  char buf[64];
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", g.weighted() ? g.weights[i] : 1.0);
    out << g.edges[i].u + 1 << ' ' << g.edges[i].v + 1 << ' ' << buf << '\n';
  }
}

std::string emit_mqlib(const Graph& g) {
  std::ostringstream out;
  emit_mqlib(g, out);
  return out.str();
}

Graph load_graph_file(const std::string& path, const std::string& format, bool ignore_weights) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open file: " + path);
  if (format == "mqlib") return parse_mqlib(in, ignore_weights);
  if (format == "edgelist") return parse_edgelist(in);
  throw ParameterError("unknown input format: " + format);
}

nlohmann::ordered_json report_to_json(const DlaReport& rep, const ReportFormat& fmt) {
  nlohmann::ordered_json j;
  j["id"] = rep.id;
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["weighted"] = rep.weighted;
  std::string freeness = to_string(rep.freeness);
  if (rep.freeness == Freeness::BruteForcedNotFree)
    freeness += "(" + std::to_string(rep.brute_dim) + ")";
  j["freeness"] = freeness;
  std::vector<std::size_t> sizes;
  for (const auto& block : rep.partition.blocks) sizes.push_back(block.size());
  j["partition_block_sizes"] = sizes;
  j["ma_class"] = to_string(rep.ma_class.label);
  if (rep.ma_dim.exact == 0)
    j["ma_dim_log2"] = nullptr;
  else
    j["ma_dim_log2"] = rep.ma_dim.log2;
  std::string exact = rep.ma_dim.exact.str();
  if (fmt.exact_dims || exact.size() <= 120)
    j["ma_dim_exact"] = exact;
  else
    j["ma_dim_exact"] = nullptr;
  if (rep.lower_bound.exact == 0)
    j["lower_bound_log2"] = nullptr;
  else
    j["lower_bound_log2"] = rep.lower_bound.log2;
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();
  for (const auto& [stage, ms] : rep.timings_ms) timings[stage] = fmt.stable ? 0.0 : ms;
  j["timings_ms"] = timings;
  j["method_trail"] = rep.method_trail;
  j["prng_id"] = kPrngId;
  j["version"] = kToolVersion;
  return j;
}

BatchOutcome run_batch(const std::vector<std::string>& paths, const AnalysisOptions& opts,
                       const BatchOptions& bopts) {
  std::vector<std::optional<DlaReport>> reports(paths.size());
  std::vector<std::string> failures(paths.size());
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < paths.size();) {
      std::string id = std::filesystem::path(paths[i]).stem().string();
      try {
        Graph g = load_graph_file(paths[i], bopts.format, bopts.ignore_weights);
        DlaReport rep = analyze(g, opts);
        rep.id = id;
        reports[i] = std::move(rep);
      } catch (const std::exception& e) {
        failures[i] = id + ": " + e.what();
      }
    }
  };

  std::size_t nthreads = bopts.threads > 0 ? static_cast<std::size_t>(bopts.threads)
                                           : std::thread::hardware_concurrency();
  nthreads = std::max<std::size_t>(1, std::min(nthreads, paths.size()));
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  BatchOutcome out;
  const BigInt t32 = BigInt(1) << 32, t64 = BigInt(1) << 64, t128 = BigInt(1) << 128,
               t256 = BigInt(1) << 256, t512 = BigInt(1) << 512;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!reports[i]) {
      out.errors.push_back(failures[i]);
      ++out.summary.errors;
      continue;
    }
    const DlaReport& rep = *reports[i];
    out.lines.push_back(report_to_json(rep, bopts.report).dump());
    ++out.summary.total;
    if (is_free_verdict(rep.freeness)) ++out.summary.free_count;
    const BigInt& lb = rep.lower_bound.exact;
    if (lb >= t32) ++out.summary.ge_2_32;
    if (lb >= t64) ++out.summary.ge_2_64;
    if (lb >= t128) ++out.summary.ge_2_128;
    if (lb >= t256) ++out.summary.ge_2_256;
    if (lb >= t512) ++out.summary.ge_2_512;
  }
  if (out.summary.total > 0)
    out.summary.free_fraction =
        static_cast<double>(out.summary.free_count) / static_cast<double>(out.summary.total);
  return out;
}

nlohmann::ordered_json summary_to_json(const BatchSummary& s) {
  nlohmann::ordered_json j;
  j["total"] = s.total;
  j["free_count"] = s.free_count;
  j["free_fraction"] = s.free_fraction;
  j["ge_2_32"] = s.ge_2_32;
  j["ge_2_64"] = s.ge_2_64;
  j["ge_2_128"] = s.ge_2_128;
  j["ge_2_256"] = s.ge_2_256;
  j["ge_2_512"] = s.ge_2_512;
  j["errors"] = s.errors;
  return j;
}

std::string summary_to_csv(const BatchSummary& s) {
  std::ostringstream out;
  out << "total,free_count,free_fraction,ge_2_32,ge_2_64,ge_2_128,ge_2_256,ge_2_512,errors\n";
  out << s.total << ',' << s.free_count << ',' << nlohmann::json(s.free_fraction).dump() << ','
      << s.ge_2_32 << ',' << s.ge_2_64 << ',' << s.ge_2_128 << ',' << s.ge_2_256 << ','
      << s.ge_2_512 << ',' << s.errors << '\n';
  return out.str();
}

}  // namespace dla
