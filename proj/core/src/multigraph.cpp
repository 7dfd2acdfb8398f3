#include "liftgap/multigraph.hpp"

#include <algorithm>
#include <set>

namespace liftgap {

MultiGraph MultiGraph::build(std::vector<std::string> vertices,
                             std::vector<EdgeSpec> edges,
                             bool require_connected) {
  if (vertices.empty()) throw ValidationError("graph has no vertices");

  MultiGraph g;
  g.vertex_ids_ = std::move(vertices);
  for (int i = 0; i < static_cast<int>(g.vertex_ids_.size()); ++i) {
    if (!g.vertex_lookup_.emplace(g.vertex_ids_[i], i).second)
      throw ValidationError("duplicate vertex id: " + g.vertex_ids_[i]);
  }

  g.degrees_.assign(g.vertex_ids_.size(), 0);
  g.adj_.assign(g.vertex_ids_.size(), {});
  for (const EdgeSpec& e : edges) {
    const auto iu = g.vertex_lookup_.find(e.u);
    const auto iv = g.vertex_lookup_.find(e.v);
    if (iu == g.vertex_lookup_.end())
      throw UnknownVertex("edge " + e.id + " references unknown vertex " + e.u);
    if (iv == g.vertex_lookup_.end())
      throw UnknownVertex("edge " + e.id + " references unknown vertex " + e.v);
    const int idx = static_cast<int>(g.edge_ids_.size());
    if (!g.edge_lookup_.emplace(e.id, idx).second)
      throw DuplicateEdgeId("duplicate edge id: " + e.id);
    g.edge_ids_.push_back(e.id);
    g.endpoints_.emplace_back(iu->second, iv->second);
    g.degrees_[iu->second] += 1;
    g.degrees_[iv->second] += 1;
    g.adj_[iu->second].emplace_back(idx, iv->second);
    g.adj_[iv->second].emplace_back(idx, iu->second);
  }

  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degrees_[v] < 2)
      throw LeafVertex("vertex " + g.vertex_ids_[v] + " has degree " +
                       std::to_string(g.degrees_[v]) + " < 2");
  }

  // connectivity via DFS; loops are irrelevant here
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (const auto& [e, y] : g.adj_[x]) {
      (void)e;
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  g.connected_ = reached == g.vertex_count();
  if (require_connected && !g.connected_)
    throw DisconnectedGraph("graph is not connected");
  return g;
}

MultiGraph MultiGraph::create(std::vector<std::string> vertices,
                              std::vector<EdgeSpec> edges) {
  return build(std::move(vertices), std::move(edges), true);
}

MultiGraph MultiGraph::create_allow_disconnected(
    std::vector<std::string> vertices, std::vector<EdgeSpec> edges) {
  return build(std::move(vertices), std::move(edges), false);
}

int MultiGraph::vertex_index(const std::string& id) const {
  const auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) throw UnknownVertex("unknown vertex: " + id);
  return it->second;
}

int MultiGraph::edge_index(const std::string& id) const {
  const auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) throw ValidationError("unknown edge: " + id);
  return it->second;
}

bool MultiGraph::same_structure(const MultiGraph& other) const {
  return vertex_ids_ == other.vertex_ids_ && edge_ids_ == other.edge_ids_ &&
         endpoints_ == other.endpoints_;
}

MultiGraph build_multigraph(std::vector<std::string> vertices,
                            std::vector<EdgeSpec> edges) {
  return MultiGraph::create(std::move(vertices), std::move(edges));
}

std::map<std::string, int> degree_profile(const MultiGraph& g) {
  std::map<std::string, int> out;
  for (int v = 0; v < g.vertex_count(); ++v) out[g.vertex_id(v)] = g.degree(v);
  return out;
}

JacobiData JacobiData::create(MultiGraph graph,
                              const std::map<std::string, double>& a,
                              const std::map<std::string, double>& b) {
  std::vector<double> av(graph.edge_count());
  std::vector<double> bv(graph.vertex_count());
  if (static_cast<int>(a.size()) != graph.edge_count())
    throw ValidationError("weight map must cover every edge exactly once");
  if (static_cast<int>(b.size()) != graph.vertex_count())
    throw ValidationError("potential map must cover every vertex exactly once");
  for (int e = 0; e < graph.edge_count(); ++e) {
    const auto it = a.find(graph.edge_id(e));
    if (it == a.end())
      throw ValidationError("missing weight for edge " + graph.edge_id(e));
    av[e] = it->second;
  }
  for (int v = 0; v < graph.vertex_count(); ++v) {
    const auto it = b.find(graph.vertex_id(v));
    if (it == b.end())
      throw ValidationError("missing potential for vertex " + graph.vertex_id(v));
    bv[v] = it->second;
  }
  return from_vectors(std::move(graph), std::move(av), std::move(bv));
}

JacobiData JacobiData::from_vectors(MultiGraph graph, std::vector<double> a,
                                    std::vector<double> b) {
  if (static_cast<int>(a.size()) != graph.edge_count() ||
      static_cast<int>(b.size()) != graph.vertex_count())
    throw ValidationError("weight/potential vectors do not match the graph");
  for (std::size_t e = 0; e < a.size(); ++e)
    if (!(a[e] > 0.0))
      throw ValidationError("edge weight must be positive: " +
                            graph.edge_id(static_cast<int>(e)));
  JacobiData d;
  d.graph = std::move(graph);
  d.a = std::move(a);
  d.b = std::move(b);
  return d;
}

SymmetricMatrix jacobi_matrix(const JacobiData& data) {
  const MultiGraph& g = data.graph;
  SymmetricMatrix J(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) J.add_diag(v, data.b[v]);
  for (int e = 0; e < g.edge_count(); ++e) {
    const int u = g.edge_u(e), v = g.edge_v(e);
    if (u == v)
      J.add_diag(u, 2.0 * data.a[e]);
    else
      J.add_sym(u, v, data.a[e]);
  }
  return J;
}

}  // namespace liftgap
