#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dla/classifier.hpp"
#include "dla/cli.hpp"
#include "dla/errors.hpp"
#include "dla/graph.hpp"
#include "dla/io.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct TempDir {
  fs::path path;

  TempDir() {
    path = fs::temp_directory_path() /
           ("dla_io_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  static int& counter() {
    static int c = 0;
    return c;
  }

  std::string write(const std::string& name, const std::string& text) const {
    fs::path p = path / name;
    std::ofstream f(p);
    f << text;
    return p.string();
  }
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = dla::cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kSpiderMqlib =
    "7 6\n1 2 1\n1 3 1\n1 5 1\n3 4 1\n5 6 1\n6 7 1\n";

}  // namespace

TEST_CASE("mqlib parsing accepts the documented layout") {
  dla::Graph k3 = dla::parse_mqlib(std::string("3 3\n1 2 1\n2 3 1\n1 3 1\n"));
  CHECK(k3.n == 3);
  CHECK(k3.m() == 3);
  CHECK(k3.weighted());
  CHECK(k3.weights == std::vector<double>{1.0, 1.0, 1.0});

  dla::Graph neg = dla::parse_mqlib(std::string("2 1\n1 2 -0.5\n"));
  CHECK(neg.n == 2);
  CHECK(neg.weights == std::vector<double>{-0.5});

  dla::Graph commented =
      dla::parse_mqlib(std::string("\n# header next\n2 1\n\n# edge next\n1 2 2.5\n"));
  CHECK(commented.n == 2);
  CHECK(commented.weights == std::vector<double>{2.5});

  dla::Graph plain = dla::parse_mqlib(std::string("3 1\n1 3 7\n"), true);
  CHECK_FALSE(plain.weighted());
  CHECK(plain.m() == 1);

  dla::Graph isolated = dla::parse_mqlib(std::string("5 0\n"));
  CHECK(isolated.n == 5);
  CHECK(isolated.m() == 0);
}

TEST_CASE("mqlib parsing reports the offending line") {
  auto parse = [](const char* text) { dla::parse_mqlib(std::string(text)); };

  CHECK_THROWS_WITH_AS(parse("3 2\n1 2 1\n1 2 1\n"),
                       "line 3: duplicate edge 1 2", dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("3\n"), "line 1: malformed header, expected '<n> <m>'",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("x y\n"), "line 1: malformed header, expected '<n> <m>'",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("2 1\n1 2\n"), "line 2: expected '<u> <v> <w>'",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("2 1\n1.5 2 1\n"), "line 2: vertex labels must be integers",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("2 1\n1 2 abc\n"), "line 2: weight must be a number",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("3 1\n0 2 1\n"), "line 2: vertex label out of range 1..3",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("3 1\n1 4 1\n"), "line 2: vertex label out of range 1..3",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("3 1\n2 2 1\n"), "line 2: self-loop on vertex 2",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("3 2\n1 2 1\n"), "line 3: expected 2 edge lines, found 1",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("2 1\n1 2 1\n2 1 5\n"), "line 3: unexpected line after 1 edges",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse(""), "line 1: missing header", dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("# a\n# b\n"), "line 3: missing header", dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("10000001 0\n"), "line 1: vertex count too large",
                       dla::ParseError);

  try {
    parse("3 2\n1 2 1\n1 2 1\n");
    FAIL("expected a parse error");
  } catch (const dla::ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("edgelist parsing") {
  dla::Graph p3 = dla::parse_edgelist(std::string("# fixture\n0 1\n1 2\n"));
  CHECK(p3.n == 3);
  CHECK(p3.m() == 2);
  CHECK_FALSE(p3.weighted());

  dla::Graph empty = dla::parse_edgelist(std::string(""));
  CHECK(empty.n == 0);
  CHECK(empty.m() == 0);

  auto parse = [](const char* text) { dla::parse_edgelist(std::string(text)); };
  CHECK_THROWS_WITH_AS(parse("0 1 2\n"), "line 1: expected '<u> <v>'", dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("0 -1\n"), "line 1: vertex labels must be nonnegative",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("0 10000001\n"), "line 1: vertex label too large",
                       dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("3 3\n"), "line 1: self-loop on vertex 3", dla::ParseError);
  CHECK_THROWS_WITH_AS(parse("0 1\n1 0\n"), "line 2: duplicate edge 1 0", dla::ParseError);
}

TEST_CASE("mqlib emission round-trips") {
  dla::Graph w = dla::Graph::make_weighted(2, {{0, 1}}, {0.1});
  CHECK(dla::emit_mqlib(w) == "2 1\n1 2 0.10000000000000001\n");

  CHECK(dla::emit_mqlib(dla::path_graph(3)) == "3 2\n1 2 1\n2 3 1\n");
  CHECK(dla::emit_mqlib(dla::spider_graph({1, 2, 3})) == kSpiderMqlib);

  dla::Graph first = dla::parse_mqlib(
      std::string("4 3\n1 2 0.30000000000000004\n2 4 -17.25\n1 3 3\n"));
  dla::Graph again = dla::parse_mqlib(dla::emit_mqlib(first));
  CHECK(again.n == first.n);
  CHECK(again.edges == first.edges);
  CHECK(again.weights == first.weights);
  CHECK(again.weighted() == first.weighted());
}

TEST_CASE("graph files load by format") {
  TempDir dir;
  std::string mq = dir.write("k3.txt", "3 3\n1 2 1\n2 3 1\n1 3 1\n");
  std::string el = dir.write("p3.txt", "0 1\n1 2\n");

  CHECK(dla::load_graph_file(mq, "mqlib", false).m() == 3);
  CHECK(dla::load_graph_file(el, "edgelist", false).n == 3);
  CHECK_FALSE(dla::load_graph_file(mq, "mqlib", true).weighted());

  CHECK_THROWS_WITH_AS(dla::load_graph_file(mq, "yaml", false),
                       "unknown input format: yaml", dla::ParameterError);
  std::string missing = (dir.path / "absent.txt").string();
  CHECK_THROWS_WITH_AS(dla::load_graph_file(missing, "mqlib", false),
                       ("cannot open file: " + missing).c_str(), dla::ParameterError);
}

TEST_CASE("reports serialize with a fixed key layout") {
  dla::AnalysisOptions no_brute;
  no_brute.allow_bruteforce = false;

  // Large enough that the exact dimension (241 digits) drops to null while
  // the log2 view stays finite.
  dla::DlaReport star = dla::analyze(dla::star_graph(400), no_brute);
  CHECK(dla::report_to_json(star, dla::ReportFormat{true, false}).dump() ==
        "{\"id\":\"\",\"n\":401,\"m\":400,\"weighted\":false,"
        "\"freeness\":\"Undetermined\",\"partition_block_sizes\":[1,400],"
        "\"ma_class\":\"Su\",\"ma_dim_log2\":800.0,\"ma_dim_exact\":null,"
        "\"lower_bound_log2\":0.0,\"timings_ms\":{\"classify\":0.0,"
        "\"bfs_splitting\":0.0,\"certify_subdivision\":0.0,\"lower_bound\":0.0},"
        "\"method_trail\":[\"bfs_splitting\",\"not a subdivision: even-degree "
        "vertex 0 has degree 400, inserted vertices must have degree 2\"],"
        "\"prng_id\":\"splitmix64-v1\",\"version\":\"0.1.0\"}");

  json full = json::parse(
      dla::report_to_json(star, dla::ReportFormat{true, true}).dump());
  CHECK(full["ma_dim_exact"] ==
        ((dla::BigInt(1) << 800) - 1).str());

  dla::DlaReport c5 = dla::analyze(dla::cycle_graph(5));
  c5.id = "c5";
  json j = json::parse(dla::report_to_json(c5).dump());
  CHECK(j["id"] == "c5");
  CHECK(j["freeness"] == "BruteForcedNotFree(14)");
  CHECK(j["ma_class"] == "So2nPlusSo2n");
  CHECK(j["ma_dim_exact"] == "90");
  CHECK(j["ma_dim_log2"].get<double>() == doctest::Approx(std::log2(90.0)));
  CHECK(j["lower_bound_log2"].get<double>() == doctest::Approx(std::log2(14.0)));
  CHECK(j["partition_block_sizes"] == json::array({5}));
  CHECK(j["timings_ms"].size() == 4);

  // Zero dimensions have no logarithm; both views go null.
  dla::DlaReport blank;
  json z = json::parse(dla::report_to_json(blank).dump());
  CHECK(z["ma_dim_log2"].is_null());
  CHECK(z["lower_bound_log2"].is_null());
  CHECK(z["ma_dim_exact"] == "0");
  CHECK(z["freeness"] == "Undetermined");
}

TEST_CASE("batch runs analyze per file and aggregates") {
  TempDir dir;
  std::vector<std::string> paths = {
      dir.write("spider123.txt", dla::emit_mqlib(dla::spider_graph({1, 2, 3}))),
      dir.write("bigspider.txt", dla::emit_mqlib(dla::spider_graph({1, 2, 14}))),
      dir.write("cycle5.txt", dla::emit_mqlib(dla::cycle_graph(5)))};

  dla::AnalysisOptions opts;
  opts.allow_bruteforce = false;
  dla::BatchOptions bopts;
  bopts.threads = 1;
  bopts.report.stable = true;

  dla::BatchOutcome one = dla::run_batch(paths, opts, bopts);
  REQUIRE(one.lines.size() == 3);
  CHECK(one.errors.empty());
  CHECK(one.summary.total == 3);
  CHECK(one.summary.free_count == 2);
  CHECK(one.summary.free_fraction == doctest::Approx(2.0 / 3.0));
  // Spider(1,2,14) is free at dimension 2^34 + 2^17, past the first threshold.
  CHECK(one.summary.ge_2_32 == 1);
  CHECK(one.summary.ge_2_64 == 0);
  CHECK(one.summary.errors == 0);

  // Report lines keep input order whatever the worker count.
  bopts.threads = 4;
  dla::BatchOutcome four = dla::run_batch(paths, opts, bopts);
  CHECK(four.lines == one.lines);

  std::vector<std::string> ids;
  long long free_seen = 0;
  for (const std::string& line : one.lines) {
    json j = json::parse(line);
    ids.push_back(j["id"]);
    std::string f = j["freeness"];
    if (f == "Splittable" || f.starts_with("Certified") || f == "BruteForcedFree")
      ++free_seen;
  }
  CHECK(ids == std::vector<std::string>{"spider123", "bigspider", "cycle5"});
  CHECK(free_seen == one.summary.free_count);
}

TEST_CASE("batch collects per-file failures and keeps going") {
  TempDir dir;
  std::string bad = dir.write("broken.txt", "3 2\n1 2 1\n1 2 1\n");
  std::string missing = (dir.path / "ghost.txt").string();
  std::string good = dir.write("ok.txt", "2 1\n1 2 1\n");

  dla::AnalysisOptions opts;
  opts.allow_bruteforce = false;
  dla::BatchOutcome res = dla::run_batch({bad, missing, good}, opts, {});
  REQUIRE(res.lines.size() == 1);
  CHECK(json::parse(res.lines[0])["id"] == "ok");
  REQUIRE(res.errors.size() == 2);
  CHECK(res.errors[0] == "broken: line 3: duplicate edge 1 2");
  CHECK(res.errors[1] == "ghost: cannot open file: " + missing);
  CHECK(res.summary.total == 1);
  CHECK(res.summary.errors == 2);

  dla::BatchOutcome nothing = dla::run_batch({}, opts, {});
  CHECK(nothing.lines.empty());
  CHECK(nothing.summary.total == 0);
  CHECK(nothing.summary.free_fraction == 0.0);
}

TEST_CASE("summaries print as json and csv") {
  dla::BatchSummary s;
  s.total = 4;
  s.free_count = 2;
  s.free_fraction = 0.5;
  s.ge_2_32 = 1;
  s.errors = 1;

  CHECK(dla::summary_to_json(s).dump() ==
        "{\"total\":4,\"free_count\":2,\"free_fraction\":0.5,\"ge_2_32\":1,"
        "\"ge_2_64\":0,\"ge_2_128\":0,\"ge_2_256\":0,\"ge_2_512\":0,\"errors\":1}");
  CHECK(dla::summary_to_csv(s) ==
        "total,free_count,free_fraction,ge_2_32,ge_2_64,ge_2_128,ge_2_256,ge_2_512,errors\n"
        "4,2,0.5,1,0,0,0,0,1\n");
}

TEST_CASE("cli analyze") {
  TempDir dir;
  std::string spider = dir.write("spider123.txt", kSpiderMqlib);

  CliRun r = run_cli({"analyze", spider, "--stable"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  json j = json::parse(r.out);
  CHECK(j["id"] == "spider123");
  CHECK(j["freeness"] == "Splittable");
  CHECK(j["ma_dim_exact"] == "4095");
  CHECK(j["ma_class"] == "Su");

  CliRun named = run_cli({"analyze", spider, "--id", "web"});
  CHECK(json::parse(named.out)["id"] == "web");

  std::string missing = (dir.path / "absent.txt").string();
  CliRun gone = run_cli({"analyze", missing});
  CHECK(gone.code == 1);
  CHECK(gone.err == "error: cannot open file: " + missing + "\n");

  std::string bad = dir.write("bad.txt", "oops\n");
  CliRun broken = run_cli({"analyze", bad});
  CHECK(broken.code == 1);
  CHECK(broken.err == "error: line 1: malformed header, expected '<n> <m>'\n");

  std::string el = dir.write("p3.el", "0 1\n1 2\n");
  CliRun fmt = run_cli({"analyze", el, "--format", "edgelist", "--bruteforce"});
  CHECK(fmt.code == 0);
  CHECK(json::parse(fmt.out)["freeness"] == "BruteForcedNotFree(9)");
}

TEST_CASE("cli usage errors exit with 2") {
  CliRun none = run_cli({});
  CHECK(none.code == 2);

  CliRun unknown = run_cli({"frobnicate"});
  CHECK(unknown.code == 2);
  CHECK_FALSE(unknown.err.empty());

  CliRun badflag = run_cli({"enumerate", "--n", "9"});
  CHECK(badflag.code == 2);

  CliRun badformat = run_cli({"analyze", "x.txt", "--format", "yaml"});
  CHECK(badformat.code == 2);

  CliRun help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("analyze") != std::string::npos);
}

TEST_CASE("cli enumerate and families") {
  CliRun five = run_cli({"enumerate", "--n", "5"});
  CHECK(five.code == 0);
  int lines = 0;
  std::istringstream in(five.out);
  for (std::string line; std::getline(in, line);) {
    ++lines;
    CHECK(line.rfind("5 ", 0) == 0);
  }
  CHECK(lines == 21);

  CliRun fam = run_cli({"families", "--spec", "Spider(1,2,3)"});
  CHECK(fam.code == 0);
  CHECK(fam.out == kSpiderMqlib);

  CliRun nope = run_cli({"families", "--spec", "Foo(2)"});
  CHECK(nope.code == 1);
  CHECK(nope.err == "error: unknown family: Foo\n");
}

TEST_CASE("cli closure") {
  TempDir dir;
  std::string c4 = dir.write("cycle4.txt", dla::emit_mqlib(dla::cycle_graph(4)));

  CliRun qaoa = run_cli({"closure", c4, "--ignore-weights"});
  CHECK(qaoa.code == 0);
  CHECK(qaoa.out ==
        "{\"id\":\"cycle4\",\"n\":4,\"m\":4,\"generators\":\"qaoa\","
        "\"dim\":11,\"truncated\":false}\n");

  CliRun ma = run_cli({"closure", c4, "--ignore-weights", "--multiangle"});
  json mj = json::parse(ma.out);
  CHECK(mj["generators"] == "multiangle");
  CHECK(mj["dim"] == 56);

  CliRun capped = run_cli({"closure", c4, "--ignore-weights", "--maxdim", "5"});
  CHECK(json::parse(capped.out)["truncated"] == true);

  CliRun toobig = run_cli({"closure", c4, "--max-qubits", "3"});
  CHECK(toobig.code == 1);
  CHECK(toobig.err == "error: closure on 4 qubits exceeds cap 3\n");

  std::string hub = dir.write("hub5.txt", "5 7\n1 2 1\n1 3 1\n1 4 1\n1 5 1\n2 3 1\n2 4 1\n2 5 1\n");
  CliRun dense = run_cli({"closure", hub, "--ignore-weights"});
  CHECK(dense.code == 0);
  CHECK(json::parse(dense.out)["dim"] == 78);

  // Fractional weights switch the closure to the prime-field scalar.
  std::string t124 = dir.write("t124.txt", "3 3\n1 2 1\n1 3 2\n2 3 4\n");
  CliRun weighted = run_cli({"closure", t124});
  CHECK(weighted.code == 0);
  CHECK(json::parse(weighted.out)["dim"] == 30);

  std::string p2 = dir.write("p2.txt", "2 1\n1 2 1\n");
  CliRun dump = run_cli({"closure", p2, "--ignore-weights", "--dump-basis"});
  CHECK(dump.code == 0);
  int rows = 0;
  std::istringstream in(dump.out);
  std::string line;
  std::getline(in, line);
  CHECK(json::parse(line)["dim"] == 4);
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.find('*') != std::string::npos);
  }
  CHECK(rows == 4);
}

TEST_CASE("cli reduce") {
  TempDir dir;
  std::string p3 = dir.write("path3.txt", dla::emit_mqlib(dla::path_graph(3)));

  CliRun r = run_cli({"reduce", p3, "--ignore-weights"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["n"] == 3);
  CHECK(j["reduced_n"] == 16);
  CHECK(j["added_vertices"] == 13);
  CHECK(j["maxcut_reduced"].get<long long>() -
            j["maxcut_original"].get<long long>() ==
        13);
  CHECK(j["maxcut_delta_verified"] == true);
  CHECK(j["reduced_edges"].size() == json::parse(r.out)["reduced_m"].get<std::size_t>());

  CliRun cert = run_cli({"reduce", p3, "--ignore-weights", "--certificate"});
  json cj = json::parse(cert.out);
  REQUIRE(cj["certificate"].is_string());
  std::string text = cj["certificate"];
  CHECK(text.rfind("0 Axiom X ", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') > 3);

  // Uniform weights reduce like their unweighted shape; mixed weights do not
  // satisfy the reduction's precondition.
  std::string uni = dir.write("uni.txt", "3 2\n1 2 2\n2 3 2\n");
  CHECK(run_cli({"reduce", uni}).code == 0);
  std::string mixed = dir.write("mixed.txt", "3 2\n1 2 2\n2 3 1\n");
  CliRun w = run_cli({"reduce", mixed});
  CHECK(w.code == 1);
  CHECK(w.err == "error: reduction requires an unweighted graph\n");
}

TEST_CASE("cli sample-er is deterministic and parseable") {
  CliRun two = run_cli({"sample-er", "--n", "12", "--p", "0.5", "--seed", "7",
                        "--count", "2"});
  CHECK(two.code == 0);
  CHECK(two.out.find("# sample 0 seed 7\n") != std::string::npos);
  CHECK(two.out.find("# sample 1 seed 8\n") != std::string::npos);
  CHECK(run_cli({"sample-er", "--n", "12", "--p", "0.5", "--seed", "7",
                 "--count", "2"})
            .out == two.out);

  CliRun one = run_cli({"sample-er", "--n", "12", "--p", "0.5", "--seed", "7"});
  CHECK(one.out.find('#') == std::string::npos);
  dla::Graph g = dla::parse_mqlib(one.out);
  CHECK(g.n == 12);

  // The comment markers do not break the parser.
  dla::Graph h = dla::parse_mqlib(two.out.substr(0, two.out.find("# sample 1")));
  CHECK(h.n == 12);
}

TEST_CASE("cli batch routes reports and summaries") {
  TempDir dir;
  fs::path inputs = dir.path / "inputs";
  fs::create_directories(inputs);
  auto put = [&](const std::string& name, const dla::Graph& g) {
    std::ofstream f(inputs / name);
    f << dla::emit_mqlib(g);
  };
  put("bigspider.txt", dla::spider_graph({1, 2, 14}));
  put("cycle5.txt", dla::cycle_graph(5));
  put("spider123.txt", dla::spider_graph({1, 2, 3}));

  CliRun console = run_cli({"batch", inputs.string(), "--threads", "2", "--stable"});
  CHECK(console.code == 0);
  std::vector<std::string> ids;
  std::istringstream lines(console.out);
  for (std::string line; std::getline(lines, line);)
    ids.push_back(json::parse(line)["id"]);
  // Directory contents are taken in sorted order.
  CHECK(ids == std::vector<std::string>{"bigspider", "cycle5", "spider123"});
  json summary = json::parse(console.err);
  CHECK(summary["total"] == 3);
  CHECK(summary["free_count"] == 2);
  CHECK(summary["ge_2_32"] == 1);

  CliRun redo = run_cli({"batch", inputs.string(), "--threads", "1", "--stable"});
  CHECK(redo.out == console.out);

  CliRun ascsv = run_cli({"batch", inputs.string(), "--stable", "--output", "csv"});
  CHECK(ascsv.err.rfind("total,free_count,", 0) == 0);

  fs::path jsonl = dir.path / "reports.jsonl";
  CliRun filed = run_cli({"batch", inputs.string(), "--stable", "--out", jsonl.string()});
  CHECK(filed.code == 0);
  CHECK(json::parse(filed.out)["total"] == 3);
  std::ifstream back(jsonl);
  std::string file_lines((std::istreambuf_iterator<char>(back)),
                         std::istreambuf_iterator<char>());
  CHECK(file_lines == console.out);

  fs::path csv = dir.path / "summary.csv";
  CliRun csved = run_cli({"batch", inputs.string(), "--stable", "--out", csv.string()});
  CHECK(csved.code == 0);
  std::ifstream csvin(csv);
  std::string csv_text((std::istreambuf_iterator<char>(csvin)),
                       std::istreambuf_iterator<char>());
  CHECK(csv_text.rfind("total,free_count,", 0) == 0);
  CHECK(csved.out == console.out);

  std::string bad = dir.write("bad.txt", "nope\n");
  CliRun strict = run_cli({"batch", (inputs / "cycle5.txt").string(), bad});
  CHECK(strict.code == 1);
  CHECK(strict.err.find("error: bad: line 1: malformed header") != std::string::npos);
  CliRun lax = run_cli({"batch", (inputs / "cycle5.txt").string(), bad, "--no-strict"});
  CHECK(lax.code == 0);

  CliRun empty = run_cli({"batch"});
  CHECK(empty.code == 0);
  CHECK(json::parse(empty.err)["total"] == 0);
}

TEST_CASE("closure qubit cap follows the environment override") {
  TempDir dir;
  std::string c5 = dir.write("cycle5.txt", dla::emit_mqlib(dla::cycle_graph(5)));

  ::setenv("DLA_MAX_CLOSURE_QUBITS", "4", 1);
  CliRun capped = run_cli({"analyze", c5, "--ignore-weights", "--bruteforce"});
  CHECK(json::parse(capped.out)["freeness"] == "Undetermined");

  ::unsetenv("DLA_MAX_CLOSURE_QUBITS");
  CliRun full = run_cli({"analyze", c5, "--ignore-weights", "--bruteforce"});
  CHECK(json::parse(full.out)["freeness"] == "BruteForcedNotFree(14)");
}
