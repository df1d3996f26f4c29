#include "dla/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "dla/certificate.hpp"
#include "dla/classifier.hpp"
#include "dla/errors.hpp"
#include "dla/io.hpp"
#include "dla/modp.hpp"
#include "dla/pauli.hpp"
#include "dla/splitter.hpp"

namespace dla {

namespace {

int env_closure_cap() {
  if (const char* s = std::getenv("DLA_MAX_CLOSURE_QUBITS")) {
    int v = 0;
    auto [p, ec] = std::from_chars(s, s + std::strlen(s), v);
    if (ec == std::errc() && p == s + std::strlen(s) && v >= 1) return v;
  }
  return 8;
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

struct AnalyzeArgs {
  std::string file;
  std::string format = "mqlib";
  std::string id;
  bool ignore_weights = false;
  bool bruteforce = false;
  bool stable = false;
  bool exact_dims = false;
  int max_closure_qubits = 8;
  long long max_closure_dim = -1;
};

int run_analyze(const AnalyzeArgs& a, std::ostream& out) {
  Graph g = load_graph_file(a.file, a.format, a.ignore_weights);
  AnalysisOptions opts;
  opts.allow_bruteforce = a.bruteforce;
  opts.max_closure_qubits = a.max_closure_qubits;
  opts.max_closure_dim = a.max_closure_dim;
  DlaReport rep = analyze(g, opts);
  rep.id = a.id.empty() ? stem_of(a.file) : a.id;
  out << report_to_json(rep, ReportFormat{a.stable, a.exact_dims}).dump(2) << '\n';
  return 0;
}

struct BatchArgs {
  std::vector<std::string> inputs;
  std::string out_path;
  std::string output = "json";
  std::string format = "mqlib";
  int threads = 0;
  bool strict = true;
  bool ignore_weights = false;
  bool bruteforce = false;
  bool stable = false;
  bool exact_dims = false;
  int max_closure_qubits = 8;
  long long max_closure_dim = -1;
};

int run_batch_cmd(const BatchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::string> files;
  for (const std::string& input : a.inputs) {
    std::error_code ec;
    if (std::filesystem::is_directory(input, ec)) {
      std::vector<std::string> dir_files;
      for (const auto& entry : std::filesystem::directory_iterator(input))
        if (entry.is_regular_file()) dir_files.push_back(entry.path().string());
      std::sort(dir_files.begin(), dir_files.end());
      files.insert(files.end(), dir_files.begin(), dir_files.end());
    } else {
      files.push_back(input);
    }
  }

  AnalysisOptions opts;
  opts.allow_bruteforce = a.bruteforce;
  opts.max_closure_qubits = a.max_closure_qubits;
  opts.max_closure_dim = a.max_closure_dim;
  BatchOptions bopts;
  bopts.threads = a.threads;
  bopts.format = a.format;
  bopts.ignore_weights = a.ignore_weights;
  bopts.report = ReportFormat{a.stable, a.exact_dims};
  BatchOutcome res = run_batch(files, opts, bopts);

  for (const std::string& e : res.errors) err << "error: " << e << '\n';

  bool csv_to_file = a.out_path.ends_with(".csv");
  if (!a.out_path.empty() && !csv_to_file) {
    std::ofstream f(a.out_path);
    if (!f) {
      err << "error: cannot open output file: " << a.out_path << '\n';
      return 1;
    }
    for (const std::string& line : res.lines) f << line << '\n';
  } else {
    for (const std::string& line : res.lines) out << line << '\n';
  }

  if (csv_to_file) {
    std::ofstream f(a.out_path);
    if (!f) {
      err << "error: cannot open output file: " << a.out_path << '\n';
      return 1;
    }
    f << summary_to_csv(res.summary);
  } else {
    // When the report lines own stdout the summary moves to stderr.
    std::ostream& dst = a.out_path.empty() ? err : out;
    if (a.output == "csv")
      dst << summary_to_csv(res.summary);
    else
      dst << summary_to_json(res.summary).dump() << '\n';
  }
  return !res.errors.empty() && a.strict ? 1 : 0;
}

struct SampleArgs {
  int n = 0;
  double p = 0.5;
  std::uint64_t seed = 0;
  int count = 1;
};

int run_sample_er(const SampleArgs& a, std::ostream& out) {
  for (int i = 0; i < a.count; ++i) {
    std::uint64_t seed = a.seed + static_cast<std::uint64_t>(i);
    if (a.count > 1) out << "# sample " << i << " seed " << seed << '\n';
    emit_mqlib(sample_er(a.n, a.p, seed), out);
  }
  return 0;
}

struct ReduceArgs {
  std::string file;
  std::string format = "mqlib";
  bool ignore_weights = false;
  bool certificate = false;
};

int run_reduce(const ReduceArgs& a, std::ostream& out, std::ostream& err) {
  Graph g = load_graph_file(a.file, a.format, a.ignore_weights);
  if (g.weighted()) {
    bool uniform = !g.weights.empty();
    for (double w : g.weights)
      if (w != g.weights.front() || w == 0.0) uniform = false;
    if (uniform) g = g.unweighted_copy();
  }
  SubdivisionMap sm = reduce_to_subdivision(g);
  nlohmann::ordered_json j;
  j["id"] = stem_of(a.file);
  j["n"] = g.n;
  j["m"] = g.m();
  j["reduced_n"] = sm.subdivided.n;
  j["reduced_m"] = sm.subdivided.m();
  j["added_vertices"] = sm.subdivided.n - g.n;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const Edge& e : sm.subdivided.edges) edges.push_back({e.u, e.v});
  j["reduced_edges"] = edges;
  bool delta_ok = true;
  if (sm.subdivided.n <= 28) {
    long long before = std::llround(brute_maxcut(g).value);
    long long after = std::llround(brute_maxcut(sm.subdivided).value);
    j["maxcut_original"] = before;
    j["maxcut_reduced"] = after;
    delta_ok = after - before == sm.subdivided.n - g.n;
    j["maxcut_delta_verified"] = delta_ok;
  } else {
    j["maxcut_original"] = nullptr;
    j["maxcut_reduced"] = nullptr;
    j["maxcut_delta_verified"] = nullptr;
  }
  if (a.certificate) {
    Certificate cert = certify_asym_subdivision(sm.subdivided);
    verify_certificate(cert, sm.subdivided);
    j["certificate"] = serialize_certificate(cert);
  }
  out << j.dump(2) << '\n';
  if (!delta_ok) {
    err << "error: MaxCut shift does not match the added vertex count\n";
    return 1;
  }
  return 0;
}

struct ClosureArgs {
  std::string file;
  std::string format = "mqlib";
  bool ignore_weights = false;
  bool multiangle = false;
  bool dump_basis = false;
  long long maxdim = -1;
  int max_qubits = 8;
};

int run_closure(const ClosureArgs& a, std::ostream& out) {
  Graph g = load_graph_file(a.file, a.format, a.ignore_weights);
  ClosureOptions copts;
  copts.maxdim = a.maxdim;
  copts.qubit_cap = a.max_qubits;
  std::size_t dim = 0;
  bool truncated = false;
  std::string basis_dump;
  if (g.weighted()) {
    std::vector<PauliSum<Fp>> gens;
    if (a.multiangle) {
      gens = multiangle_generators<Fp>(g);
    } else {
      auto [hm, hp] = hamiltonians_for_graph<Fp>(g);
      gens = {hm, hp};
    }
    ClosureResult<Fp> res = lie_closure(gens, copts);
    dim = res.basis.dim();
    truncated = res.truncated;
    if (a.dump_basis) basis_dump = res.basis.dump();
  } else {
    std::vector<PauliSum<Rational>> gens;
    if (a.multiangle) {
      gens = multiangle_generators<Rational>(g);
    } else {
      auto [hm, hp] = hamiltonians_for_graph<Rational>(g);
      gens = {hm, hp};
    }
    ClosureResult<Rational> res = lie_closure(gens, copts);
    dim = res.basis.dim();
    truncated = res.truncated;
    if (a.dump_basis) basis_dump = res.basis.dump();
  }
  nlohmann::ordered_json j;
  j["id"] = stem_of(a.file);
  j["n"] = g.n;
  j["m"] = g.m();
  j["generators"] = a.multiangle ? "multiangle" : "qaoa";
  j["dim"] = dim;
  j["truncated"] = truncated;
  out << j.dump() << '\n';
  if (a.dump_basis) out << basis_dump;
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dynamical Lie algebra analysis for QAOA-MaxCut instances", "dla"};
  app.require_subcommand(1);
  int default_cap = env_closure_cap();

  AnalyzeArgs an;
  an.max_closure_qubits = default_cap;
  CLI::App* c_analyze = app.add_subcommand("analyze", "analyze one instance, report as JSON");
  c_analyze->add_option("file", an.file, "instance file")->required();
  c_analyze->add_option("--format", an.format, "input format")
      ->check(CLI::IsMember({"mqlib", "edgelist"}));
  c_analyze->add_option("--id", an.id, "instance id (default: file stem)");
  c_analyze->add_flag("--ignore-weights", an.ignore_weights, "drop weights while parsing");
  c_analyze->add_flag("--bruteforce", an.bruteforce, "allow the brute-force closure stage");
  c_analyze->add_flag("--stable", an.stable, "zero the timing fields");
  c_analyze->add_flag("--exact-dims", an.exact_dims, "always emit ma_dim_exact");
  c_analyze->add_option("--max-closure-qubits", an.max_closure_qubits, "closure qubit cap");
  c_analyze->add_option("--max-closure-dim", an.max_closure_dim, "closure dimension cap");

  BatchArgs ba;
  ba.max_closure_qubits = default_cap;
  CLI::App* c_batch = app.add_subcommand("batch", "analyze many instances, stream JSON lines");
  c_batch->add_option("inputs", ba.inputs, "instance files or directories");
  c_batch->add_option("--out", ba.out_path,
                      "write reports to this .jsonl file, or the summary if it ends in .csv");
  c_batch->add_option("--output", ba.output, "summary format on the console")
      ->check(CLI::IsMember({"json", "csv"}));
  c_batch->add_option("--format", ba.format, "input format")
      ->check(CLI::IsMember({"mqlib", "edgelist"}));
  c_batch->add_option("--threads", ba.threads, "worker count, 0 = auto");
  c_batch->add_flag("!--no-strict", ba.strict, "exit 0 even when instances fail");
  c_batch->add_flag("--ignore-weights", ba.ignore_weights, "drop weights while parsing");
  c_batch->add_flag("--bruteforce", ba.bruteforce, "allow the brute-force closure stage");
  c_batch->add_flag("--stable", ba.stable, "zero the timing fields");
  c_batch->add_flag("--exact-dims", ba.exact_dims, "always emit ma_dim_exact");
  c_batch->add_option("--max-closure-qubits", ba.max_closure_qubits, "closure qubit cap");
  c_batch->add_option("--max-closure-dim", ba.max_closure_dim, "closure dimension cap");

  SampleArgs sa;
  CLI::App* c_sample = app.add_subcommand("sample-er", "sample Erdos-Renyi instances");
  c_sample->add_option("--n", sa.n, "vertex count")->required();
  c_sample->add_option("--p", sa.p, "edge probability")->required();
  c_sample->add_option("--seed", sa.seed, "base seed; sample i uses seed+i");
  c_sample->add_option("--count", sa.count, "number of samples")->check(CLI::PositiveNumber);

  ReduceArgs ra;
  CLI::App* c_reduce = app.add_subcommand("reduce", "reduce to a free subdivision instance");
  c_reduce->add_option("file", ra.file, "instance file")->required();
  c_reduce->add_option("--format", ra.format, "input format")
      ->check(CLI::IsMember({"mqlib", "edgelist"}));
  c_reduce->add_flag("--ignore-weights", ra.ignore_weights, "drop weights while parsing");
  c_reduce->add_flag("--certificate", ra.certificate, "embed the freeness certificate");

  ClosureArgs ca;
  ca.max_qubits = default_cap;
  CLI::App* c_closure = app.add_subcommand("closure", "brute-force Lie closure dimension");
  c_closure->add_option("file", ca.file, "instance file")->required();
  c_closure->add_option("--format", ca.format, "input format")
      ->check(CLI::IsMember({"mqlib", "edgelist"}));
  c_closure->add_flag("--ignore-weights", ca.ignore_weights, "drop weights while parsing");
  c_closure->add_flag("--multiangle", ca.multiangle, "close over per-term generators");
  c_closure->add_flag("--dump-basis", ca.dump_basis, "print the reduced basis rows");
  c_closure->add_option("--maxdim", ca.maxdim, "stop once the dimension exceeds this");
  c_closure->add_option("--max-qubits", ca.max_qubits, "closure qubit cap");

  int en = 0;
  CLI::App* c_enumerate = app.add_subcommand("enumerate", "list connected graphs up to iso");
  c_enumerate->add_option("--n", en, "vertex count")->required()->check(CLI::Range(1, 7));

  std::string family;
  CLI::App* c_families = app.add_subcommand("families", "emit a named family instance");
  c_families->add_option("--spec", family, "family spec, e.g. Spider(1,2,3)")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_analyze) return run_analyze(an, out);
    if (*c_batch) return run_batch_cmd(ba, out, err);
    if (*c_sample) return run_sample_er(sa, out);
    if (*c_reduce) return run_reduce(ra, out, err);
    if (*c_closure) return run_closure(ca, out);
    if (*c_enumerate) {
      for (const Graph& g : enumerate_connected(en)) {
        out << g.n << ' ' << g.m();
        for (const Edge& e : g.edges) out << ' ' << e.u << '-' << e.v;
        out << '\n';
      }
      return 0;
    }
    if (*c_families) {
      emit_mqlib(parse_family_spec(family), out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace dla
