#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/matrix.hpp"

namespace liftgap {

struct EdgeSpec {
  std::string id;
  std::string u;
  std::string v;
};

/// Finite undirected multigraph with loops and parallel edges. Vertices and
/// edges keep their input order; all matrices downstream use that fixed
/// ordering. Immutable after construction.
class MultiGraph {
 public:
  /// Validated constructor: connected, no vertex of degree < 2 (a loop
  /// contributes 2), unique edge ids, known endpoints.
  static MultiGraph create(std::vector<std::string> vertices,
                           std::vector<EdgeSpec> edges);

  /// Constructor for covering constructions, where components are a
  /// property to report rather than reject. All other checks still apply.
  static MultiGraph create_allow_disconnected(std::vector<std::string> vertices,
                                              std::vector<EdgeSpec> edges);

  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edge_ids_.size()); }

  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
  const std::string& edge_id(int e) const { return edge_ids_[e]; }

  int edge_u(int e) const { return endpoints_[e].first; }
  int edge_v(int e) const { return endpoints_[e].second; }
  bool is_loop(int e) const { return endpoints_[e].first == endpoints_[e].second; }

  int degree(int v) const { return degrees_[v]; }
  bool connected() const { return connected_; }

  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;

  /// Incidences per vertex as (edge, other endpoint); a loop at v appears
  /// twice in v's list.
  const std::vector<std::vector<std::pair<int, int>>>& adjacency() const {
    return adj_;
  }

  /// Structural identity: same vertex ids in order, same (id, u, v) edges.
  bool same_structure(const MultiGraph& other) const;

  /// Empty placeholder; every factory returns a validated instance.
  MultiGraph() = default;

 private:
  static MultiGraph build(std::vector<std::string> vertices,
                          std::vector<EdgeSpec> edges, bool require_connected);

  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<std::pair<int, int>> endpoints_;
  std::vector<int> degrees_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::map<std::string, int> vertex_lookup_;
  std::map<std::string, int> edge_lookup_;
  bool connected_ = true;
};

MultiGraph build_multigraph(std::vector<std::string> vertices,
                            std::vector<EdgeSpec> edges);

/// Degree of every vertex, keyed by id; loops count twice.
std::map<std::string, int> degree_profile(const MultiGraph& g);

/// Edge weights a_e > 0 and vertex potentials b_v on a multigraph.
struct JacobiData {
  MultiGraph graph;
  std::vector<double> a;  // by edge index
  std::vector<double> b;  // by vertex index

  static JacobiData create(MultiGraph graph, const std::map<std::string, double>& a,
                           const std::map<std::string, double>& b);
  static JacobiData from_vectors(MultiGraph graph, std::vector<double> a,
                                 std::vector<double> b);
};

/// J_vv = b_v + 2 sum over loops at v, J_vw = sum of weights of edges between
/// v and w. Summation per entry runs in edge-index order.
SymmetricMatrix jacobi_matrix(const JacobiData& data);

}  // namespace liftgap
