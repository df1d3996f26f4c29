#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "dla/classifier.hpp"
#include "dla/graph.hpp"

namespace dla {

inline constexpr const char* kToolVersion = "0.1.0";

/*
 * Instance file formats.
 *
 * mqlib:    header line "<n> <m>", then exactly m lines "<u> <v> <w>" with
 *           1-based endpoints and a real weight.
 * edgelist: one "<u> <v>" pair per line, 0-based, unweighted; the vertex
 *           count is one past the largest endpoint.
 *
 * Both skip blank lines and lines whose first token starts with '#'.
 */
Graph parse_mqlib(std::istream& in, bool ignore_weights = false);
Graph parse_mqlib(const std::string& text, bool ignore_weights = false);
Graph parse_edgelist(std::istream& in);
Graph parse_edgelist(const std::string& text);

// Writes the mqlib layout back out; weights use %.17g so a parse round-trips
// to an identical graph, and unweighted graphs get weight 1 on every edge.
void emit_mqlib(const Graph& g, std::ostream& out);
std::string emit_mqlib(const Graph& g);

Graph load_graph_file(const std::string& path, const std::string& format, bool ignore_weights);

struct ReportFormat {
  bool stable = false;      // zero the timings so reruns compare byte-equal
  bool exact_dims = false;  // emit ma_dim_exact no matter how many digits
};

nlohmann::ordered_json report_to_json(const DlaReport& rep, const ReportFormat& fmt = {});

struct BatchOptions {
  int threads = 0;  // 0 picks the hardware concurrency
  std::string format = "mqlib";
  bool ignore_weights = false;
  ReportFormat report;
};

struct BatchSummary {
  long long total = 0;
  long long free_count = 0;
  double free_fraction = 0.0;
  long long ge_2_32 = 0;
  long long ge_2_64 = 0;
  long long ge_2_128 = 0;
  long long ge_2_256 = 0;
  long long ge_2_512 = 0;
  long long errors = 0;
};

struct BatchOutcome {
  std::vector<std::string> lines;   // one JSON report per analyzed instance, input order
  std::vector<std::string> errors;  // "<id>: <message>" per failed input, input order
  BatchSummary summary;
};

/*
 * Analyzes every path with a worker pool. Instance ids are the file stems,
 * report lines come back in input order regardless of completion order, and
 * per-file failures are collected without stopping the batch. The summary
 * aggregates only the instances that produced a report.
 */
BatchOutcome run_batch(const std::vector<std::string>& paths, const AnalysisOptions& opts,
                       const BatchOptions& bopts);

nlohmann::ordered_json summary_to_json(const BatchSummary& s);
std::string summary_to_csv(const BatchSummary& s);

}  // namespace dla
