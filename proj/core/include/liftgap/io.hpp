#pragma once

#include <string>
#include <vector>

#include "liftgap/bounds.hpp"
#include "liftgap/comparison.hpp"
#include "liftgap/tower.hpp"

namespace liftgap {

// JSON file formats. Graph file:
//   { "vertices": [...], "edges": [{"id","u","v","a"}...], "b": {vertex: value} }
// Cover spec:
//   { "n": int, "sigma": [[...], ...] } with 1-based permutation images.
// Weights file (for comparisons over one graph):
//   { "a": {edge: value}, "b": {vertex: value} }

JacobiData parse_graph_json(const std::string& text);
JacobiData load_graph_file(const std::string& path);
std::string graph_to_json(const JacobiData& data);

struct CoverSpec {
  int n = 0;
  std::vector<std::vector<int>> sigma;  // 0-based internally
};
CoverSpec parse_cover_json(const std::string& text);
CoverSpec load_cover_file(const std::string& path);
std::string cover_spec_to_json(const Cover& cover);

/// Replaces the weights/potentials of an existing graph from a weights file.
JacobiData parse_weights_json(const MultiGraph& graph, const std::string& text);
JacobiData load_weights_file(const MultiGraph& graph, const std::string& path);

std::string choice_to_json(const SpanningChoice& choice, const MultiGraph& g);
std::string block_form_to_json(const BlockForm& form);
std::string spectrum_to_json(const Spectrum& s);
std::string cover_report_to_json(const Cover& cover);
std::string bound_report_to_json(const BoundReport& rep,
                                 const AbVerification* verification = nullptr);
std::string comparison_report_to_json(const ComparisonReport& rep);
std::string tower_report_to_json(const TowerReport& rep,
                                 const ConjectureStats* probe = nullptr);
std::string tower_histograms_to_csv(const TowerReport& rep);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace liftgap
