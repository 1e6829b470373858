#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdcensus/multigraph.hpp"
#include "mdcensus/search.hpp"

namespace mdcensus {

// md:       manifold decompositions (one vertex, tracked in-search)
// md-star:  all (n+1)-walk non-reversing ordered decompositions; the
//           one-vertex/3-manifold filter is recorded per record instead
// md-o / md-star-o: orientable-only counterparts
std::optional<SearchConfig> variant_config(const std::string& name);
extern const char* kVariantNames[4];

struct CensusRecord {
  int graph_index = -1;
  std::string graph_text;
  std::string variant;
  std::string decomposition;  // canonical text
  std::string gluing_table;   // tetrahedron lines joined by " | "
  int vertex_count = 0;
  int edge_count = 0;
  bool orientable = false;
  bool survives = false;  // passes the one-vertex 3-manifold filter

  std::string to_tsv() const;
  static std::optional<CensusRecord> parse_tsv(const std::string& line);
};
extern const char* kRecordTsvHeader;

// Inline form of Triangulation::to_text (lines joined by " | ") and back.
std::string inline_gluing_table(const std::string& multi_line);
std::string expand_gluing_table(const std::string& inline_form);

struct GraphStats {
  int graph_index = -1;
  SearchStats stats;
};
extern const char* kStatsCsvHeader;
std::string stats_csv_row(const GraphStats& gs);
std::optional<GraphStats> parse_stats_csv_row(const std::string& line);

struct CensusResult {
  std::vector<CensusRecord> records;  // sorted by (graph_index, decomposition)
  std::vector<GraphStats> stats;      // one row per graph, by index
};

// Runs the variant over every graph with a work-stealing pool; disconnected
// graphs are skipped (zero stats row). Output is deterministic for any
// worker count.
CensusResult run_census(const std::vector<MultiGraph>& graphs,
                        const std::string& variant_name, SearchConfig cfg,
                        int workers);

// Aggregate timing report over one or more stats files, with the slowest-
// graph analysis.
struct StatsSummary {
  int graphs = 0;
  long long solutions = 0;
  double total_cpu = 0, mean_cpu = 0, median_cpu = 0, max_cpu = 0;
  std::vector<std::pair<int, double>> slowest;  // (graph_index, cpu), top k
  double slow_fraction = 0;  // share of total time in the slowest percent
  int slow_count = 0;
};
StatsSummary summarize_stats(const std::vector<GraphStats>& rows, int top_k,
                             double slowest_percent);

}  // namespace mdcensus
