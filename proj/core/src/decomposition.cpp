#include "liftgap/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace liftgap {

namespace {

// Union-find over vertex indices.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

SpanningChoice finish_choice(const MultiGraph& g, std::vector<int> tree) {
  std::sort(tree.begin(), tree.end());
  SpanningChoice c;
  c.tree_edges = std::move(tree);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!std::binary_search(c.tree_edges.begin(), c.tree_edges.end(), e))
      c.cut_edges.push_back(e);
  }
  for (const int e : c.cut_edges) {
    const int u = g.edge_u(e), v = g.edge_v(e);
    c.orientation.emplace_back(std::min(u, v), std::max(u, v));
  }
  return c;
}

bool is_spanning_tree(const MultiGraph& g, const std::vector<int>& edges) {
  if (static_cast<int>(edges.size()) != g.vertex_count() - 1) return false;
  Dsu dsu(g.vertex_count());
  for (const int e : edges) {
    if (g.is_loop(e)) return false;
    if (!dsu.unite(g.edge_u(e), g.edge_v(e))) return false;
  }
  return true;
}

}  // namespace

std::string SpanningChoice::key(const MultiGraph& g) const {
  std::string k = "cut:";
  for (std::size_t i = 0; i < cut_edges.size(); ++i) {
    if (i) k += ",";
    k += g.edge_id(cut_edges[i]);
  }
  return k;
}

int betti_number(const MultiGraph& g) {
  if (!g.connected()) throw DisconnectedGraph("betti number needs a connected graph");
  return g.edge_count() - g.vertex_count() + 1;
}

SpanningChoice choose_spanning_tree(const MultiGraph& g) {
  if (!g.connected()) throw DisconnectedGraph("spanning tree needs a connected graph");
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> tree;
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    // adjacency lists are in edge insertion order already; scan in edge order
    std::vector<std::pair<int, int>> inc = g.adjacency()[x];
    std::sort(inc.begin(), inc.end());
    for (const auto& [e, y] : inc) {
      if (!seen[y]) {
        seen[y] = 1;
        tree.push_back(e);
        q.push(y);
      }
    }
  }
  return finish_choice(g, std::move(tree));
}

SpanningChoice choose_spanning_tree(const MultiGraph& g,
                                    const std::vector<std::string>& tree_edge_ids) {
  std::vector<int> tree;
  tree.reserve(tree_edge_ids.size());
  for (const std::string& id : tree_edge_ids) tree.push_back(g.edge_index(id));
  std::sort(tree.begin(), tree.end());
  if (std::adjacent_find(tree.begin(), tree.end()) != tree.end())
    throw NotASpanningTree("repeated edge in explicit tree");
  if (!is_spanning_tree(g, tree))
    throw NotASpanningTree("explicit edge set is not a spanning tree");
  return finish_choice(g, std::move(tree));
}

namespace {

// Contraction/deletion enumeration. State: vertex -> component label (the
// contracted graph), remaining candidate edges in ascending index order.
void enumerate_rec(const MultiGraph& g, std::vector<int> comp, int comps,
                   std::size_t first, std::vector<int>& chosen,
                   std::vector<std::vector<int>>& out, std::size_t limit,
                   const std::vector<int>& edge_order) {
  if (out.size() >= limit) return;
  if (comps == 1) {
    out.push_back(chosen);
    return;
  }
  // find next edge that joins two distinct components
  std::size_t pos = first;
  int e = -1;
  for (; pos < edge_order.size(); ++pos) {
    const int cand = edge_order[pos];
    if (comp[g.edge_u(cand)] != comp[g.edge_v(cand)]) {
      e = cand;
      break;
    }
  }
  if (e < 0) return;  // cannot connect further

  // Branch 1: include e (contract its components).
  {
    std::vector<int> comp2 = comp;
    const int a = comp2[g.edge_u(e)], b = comp2[g.edge_v(e)];
    for (int& c : comp2)
      if (c == b) c = a;
    chosen.push_back(e);
    enumerate_rec(g, std::move(comp2), comps - 1, pos + 1, chosen, out, limit,
                  edge_order);
    chosen.pop_back();
  }

  // Branch 2: exclude e, but only if the remaining edges still connect.
  {
    Dsu dsu(static_cast<int>(comp.size()));
    std::set<int> roots;
    for (std::size_t q = pos + 1; q < edge_order.size(); ++q) {
      const int cand = edge_order[q];
      dsu.unite(g.edge_u(cand), g.edge_v(cand));
    }
    // also identify vertices already merged in comp
    std::vector<int> rep(comp.size(), -1);
    bool connectable = true;
    for (std::size_t v = 0; v < comp.size(); ++v) {
      if (rep[comp[v]] < 0)
        rep[comp[v]] = static_cast<int>(v);
      else
        dsu.unite(rep[comp[v]], static_cast<int>(v));
    }
    for (const int t : chosen) dsu.unite(g.edge_u(t), g.edge_v(t));
    const int root = dsu.find(0);
    for (std::size_t v = 1; v < comp.size(); ++v)
      if (dsu.find(static_cast<int>(v)) != root) {
        connectable = false;
        break;
      }
    if (connectable)
      enumerate_rec(g, std::move(comp), comps, pos + 1, chosen, out, limit,
                    edge_order);
  }
}

}  // namespace

std::vector<SpanningChoice> enumerate_spanning_choices(const MultiGraph& g,
                                                       std::size_t limit) {
  if (limit < 1) throw ValidationError("enumeration limit must be >= 1");
  if (!g.connected()) throw DisconnectedGraph("enumeration needs a connected graph");

  std::vector<int> edge_order;
  for (int e = 0; e < g.edge_count(); ++e)
    if (!g.is_loop(e)) edge_order.push_back(e);

  std::vector<std::vector<int>> trees;
  std::vector<int> comp(g.vertex_count());
  std::iota(comp.begin(), comp.end(), 0);
  std::vector<int> chosen;
  enumerate_rec(g, std::move(comp), g.vertex_count(), 0, chosen, trees, limit,
                edge_order);

  for (auto& t : trees) std::sort(t.begin(), t.end());
  std::sort(trees.begin(), trees.end());
  std::vector<SpanningChoice> out;
  out.reserve(trees.size());
  for (auto& t : trees) out.push_back(finish_choice(g, std::move(t)));
  return out;
}

BlockForm block_decomposition(const JacobiData& data, const SpanningChoice& choice) {
  const MultiGraph& g = data.graph;
  const int p = g.vertex_count();

  std::vector<char> in_tree(g.edge_count(), 0);
  for (const int e : choice.tree_edges) {
    if (e < 0 || e >= g.edge_count())
      throw InvalidChoice("tree edge index out of range");
    if (g.is_loop(e)) throw InvalidChoice("loops cannot be tree edges");
    in_tree[e] = 1;
  }
  if (static_cast<int>(choice.tree_edges.size() + choice.cut_edges.size()) !=
      g.edge_count())
    throw InvalidChoice("tree and cut edges must partition the edge set");
  for (const int e : choice.cut_edges)
    if (e < 0 || e >= g.edge_count() || in_tree[e])
      throw InvalidChoice("cut edges must be the complement of the tree");
  if (!is_spanning_tree(g, choice.tree_edges))
    throw InvalidChoice("tree edges do not form a spanning tree");
  if (choice.orientation.size() != choice.cut_edges.size())
    throw InvalidChoice("orientation must cover each cut edge");

  BlockForm f;
  f.data = data;
  f.choice = choice;
  f.p = p;
  f.ell = static_cast<int>(choice.cut_edges.size());
  f.d = 2 * f.ell;
  f.B = SymmetricMatrix(p);
  f.A = SymmetricMatrix(p);

  for (int v = 0; v < p; ++v) f.B.add_diag(v, data.b[v]);
  for (const int e : choice.tree_edges)
    f.B.add_sym(g.edge_u(e), g.edge_v(e), data.a[e]);

  for (std::size_t i = 0; i < choice.cut_edges.size(); ++i) {
    const int e = choice.cut_edges[i];
    const auto [init, term] = choice.orientation[i];
    const int u = g.edge_u(e), v = g.edge_v(e);
    if (!((init == u && term == v) || (init == v && term == u)))
      throw InvalidChoice("orientation endpoints do not match cut edge " +
                          g.edge_id(e));
    Eigen::MatrixXd Ai = Eigen::MatrixXd::Zero(p, p);
    Ai(init, term) = data.a[e];
    f.A_list.push_back(std::move(Ai));
    if (init == term)
      f.A.add_diag(init, 2.0 * data.a[e]);  // A_i = A_i^T for a loop
    else
      f.A.add_sym(init, term, data.a[e]);
  }
  return f;
}

BlockForm default_block_form(const JacobiData& data) {
  return block_decomposition(data, choose_spanning_tree(data.graph));
}

}  // namespace liftgap
