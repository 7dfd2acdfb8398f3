#include "liftgap/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include "liftgap/rng.hpp"

namespace liftgap {

std::vector<std::vector<int>> Skeleton::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges) {
    adj[e.from].push_back(e.to);
    if (e.from != e.to) adj[e.to].push_back(e.from);
  }
  return adj;
}

std::vector<int> Skeleton::distances_from(int source) const {
  const auto adj = adjacency();
  std::vector<int> dist(n, -1);
  std::deque<int> q;
  dist[source] = 0;
  q.push_back(source);
  while (!q.empty()) {
    const int x = q.front();
    q.pop_front();
    for (const int y : adj[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
  }
  return dist;
}

int Skeleton::distance(int u, int v) const {
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw ValidationError("sheet index out of range");
  return distances_from(u)[v];
}

int Skeleton::diameter() const {
  int diam = 0;
  for (int s = 0; s < n; ++s) {
    const auto dist = distances_from(s);
    for (const int d : dist) {
      if (d < 0) return -1;
      diam = std::max(diam, d);
    }
  }
  return diam;
}

bool Skeleton::connected() const {
  const auto dist = distances_from(0);
  return std::all_of(dist.begin(), dist.end(), [](int d) { return d >= 0; });
}

namespace {

void validate_permutations(const std::vector<std::vector<int>>& sigma, int ell,
                           int& n_out) {
  if (static_cast<int>(sigma.size()) != ell)
    throw NotAPermutation("expected " + std::to_string(ell) + " permutations, got " +
                          std::to_string(sigma.size()));
  if (ell == 0) throw ValidationError("block form has no cut edges");
  const int n = static_cast<int>(sigma[0].size());
  if (n < 1) throw NotAPermutation("permutations must act on at least one sheet");
  for (const auto& s : sigma) {
    if (static_cast<int>(s.size()) != n)
      throw NotAPermutation("permutations act on different sheet counts");
    std::vector<char> hit(n, 0);
    for (const int img : s) {
      if (img < 0 || img >= n || hit[img])
        throw NotAPermutation("not a permutation of the sheet set");
      hit[img] = 1;
    }
  }
  n_out = n;
}

}  // namespace

Cover lift_by_permutations(const BlockForm& base,
                           const std::vector<std::vector<int>>& sigma) {
  int n = 0;
  validate_permutations(sigma, base.ell, n);
  const MultiGraph& g = base.data.graph;
  const int p = base.p;

  Cover cover;
  cover.base = base;
  cover.n = n;
  cover.sigma = sigma;

  cover.skeleton.n = n;
  for (int i = 0; i < base.ell; ++i)
    for (int k = 0; k < n; ++k)
      cover.skeleton.edges.push_back({k, sigma[i][k], i});
  cover.connected = cover.skeleton.connected();

  // Lifted multigraph: tree edges per sheet, cut edges across sigma. The tree
  // edges come first in base-edge order so entry sums follow base order.
  std::vector<std::string> vids;
  vids.reserve(static_cast<std::size_t>(p) * n);
  for (int k = 0; k < n; ++k)
    for (int v = 0; v < p; ++v)
      vids.push_back(g.vertex_id(v) + "@" + std::to_string(k));

  std::vector<char> is_cut(g.edge_count(), 0);
  std::vector<int> cut_pos(g.edge_count(), -1);
  for (std::size_t i = 0; i < base.choice.cut_edges.size(); ++i) {
    is_cut[base.choice.cut_edges[i]] = 1;
    cut_pos[base.choice.cut_edges[i]] = static_cast<int>(i);
  }

  std::vector<EdgeSpec> lifted_edges;
  std::vector<double> lifted_a;
  lifted_edges.reserve(static_cast<std::size_t>(g.edge_count()) * n);
  for (int e = 0; e < g.edge_count(); ++e) {
    for (int k = 0; k < n; ++k) {
      const std::string id = g.edge_id(e) + "@" + std::to_string(k);
      int ku = k, kv = k;
      int u = g.edge_u(e), v = g.edge_v(e);
      if (is_cut[e]) {
        const int i = cut_pos[e];
        const auto [init, term] = base.choice.orientation[i];
        u = init;
        v = term;
        kv = sigma[i][k];
      }
      lifted_edges.push_back({id, vids[static_cast<std::size_t>(ku) * p + u],
                              vids[static_cast<std::size_t>(kv) * p + v]});
      lifted_a.push_back(base.data.a[e]);
    }
  }
  std::vector<double> lifted_b;
  lifted_b.reserve(vids.size());
  for (int k = 0; k < n; ++k)
    for (int v = 0; v < p; ++v) lifted_b.push_back(base.data.b[v]);

  cover.lifted_graph =
      MultiGraph::create_allow_disconnected(std::move(vids), std::move(lifted_edges));
  cover.lifted = JacobiData::from_vectors(cover.lifted_graph, std::move(lifted_a),
                                          std::move(lifted_b));

  // Block assembly: diagonal B per sheet, A_i into (k, sigma_i(k)).
  const int dim = p * n;
  SymmetricMatrix M(dim);
  for (int k = 0; k < n; ++k) {
    for (int u = 0; u < p; ++u) {
      M.add_diag(k * p + u, base.B(u, u));
      for (int v = u + 1; v < p; ++v)
        if (base.B(u, v) != 0.0) M.add_sym(k * p + u, k * p + v, base.B(u, v));
    }
  }
  for (int i = 0; i < base.ell; ++i) {
    const int e = base.choice.cut_edges[i];
    const auto [init, term] = base.choice.orientation[i];
    const double a = base.data.a[e];
    for (int k = 0; k < n; ++k) {
      const int m = sigma[i][k];
      const int row = k * p + init, col = m * p + term;
      if (row == col)
        M.add_diag(row, 2.0 * a);  // loop fixed point: A_i + A_i^T on the diagonal
      else
        M.add_sym(row, col, a);
    }
  }
  cover.lifted_matrix = std::move(M);

  if (dim <= 4096) {
    cover.spectrum = eigenvalues_desc(cover.lifted_matrix);
    if (cover.connected) {
      const double l1_base = eigenvalues_desc(jacobi_matrix(base.data)).lambda1();
      if (std::abs(cover.spectrum->lambda1() - l1_base) > 1e-9)
        throw InternalCheckError(
            "lifted lambda_1 differs from the base top eigenvalue by more than 1e-9");
    }
  }
  return cover;
}

Cover random_cover(const BlockForm& base, int n, std::uint64_t seed,
                   bool require_connected) {
  if (n < 1) throw ValidationError("sheet count must be >= 1");
  Rng rng(seed);
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<std::vector<int>> sigma;
    sigma.reserve(base.ell);
    for (int i = 0; i < base.ell; ++i) sigma.push_back(rng.permutation(n));
    // test connectivity on the cheap skeleton before building the cover
    Skeleton sk;
    sk.n = n;
    for (int i = 0; i < base.ell; ++i)
      for (int k = 0; k < n; ++k) sk.edges.push_back({k, sigma[i][k], i});
    if (require_connected && !sk.connected()) continue;
    return lift_by_permutations(base, sigma);
  }
  throw ConnectivityUnreachable("no connected lift found in 1000 attempts");
}

int skeleton_distance(const Cover& cover, int sheet_u, int sheet_v) {
  return cover.skeleton.distance(sheet_u, sheet_v);
}

Cover rebase_cover(const Cover& cover, const SpanningChoice& new_choice) {
  const MultiGraph& g = cover.base.data.graph;
  const BlockForm form2 = block_decomposition(cover.base.data, new_choice);
  const int n = cover.n;

  // per-edge lift permutation under the current realization
  std::vector<char> is_cut(g.edge_count(), 0);
  std::vector<int> cut_pos(g.edge_count(), -1);
  for (std::size_t i = 0; i < cover.base.choice.cut_edges.size(); ++i) {
    is_cut[cover.base.choice.cut_edges[i]] = 1;
    cut_pos[cover.base.choice.cut_edges[i]] = static_cast<int>(i);
  }
  // pi[e](k): sheet of the far end when crossing e from its stored
  // orientation's initial side at sheet k
  auto pi = [&](int e, int k) {
    return is_cut[e] ? cover.sigma[cut_pos[e]][k] : k;
  };
  auto pi_inv = [&](int e, int k) {
    if (!is_cut[e]) return k;
    const auto& s = cover.sigma[cut_pos[e]];
    for (int j = 0; j < n; ++j)
      if (s[j] == k) return j;
    throw InternalCheckError("permutation inverse lookup failed");
  };
  // orientation initial vertex of edge e under the current realization
  auto old_init = [&](int e) {
    if (is_cut[e]) return cover.base.choice.orientation[cut_pos[e]].first;
    return g.edge_u(e);
  };

  // Align sheet labels over the new tree: rho[v] maps current sheet labels to
  // new ones so that new tree edges lift identically.
  const int p = cover.base.p;
  std::vector<std::vector<int>> rho(p);
  std::vector<char> done(p, 0);
  std::vector<int> identity(n);
  for (int k = 0; k < n; ++k) identity[k] = k;
  rho[0] = identity;
  done[0] = 1;
  std::queue<int> q;
  q.push(0);
  // adjacency restricted to new tree edges
  std::vector<std::vector<std::pair<int, int>>> tadj(p);
  for (const int e : new_choice.tree_edges) {
    tadj[g.edge_u(e)].emplace_back(e, g.edge_v(e));
    tadj[g.edge_v(e)].emplace_back(e, g.edge_u(e));
  }
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (const auto& [e, y] : tadj[x]) {
      if (done[y]) continue;
      // crossing e from x to y: compose with pi or its inverse depending on
      // the stored orientation of e in the current realization
      std::vector<int> cross(n);
      const bool forward = old_init(e) == x;
      for (int k = 0; k < n; ++k) cross[k] = forward ? pi(e, k) : pi_inv(e, k);
      // rho_y(cross(k)) = rho_x(k)
      rho[y].assign(n, 0);
      for (int k = 0; k < n; ++k) rho[y][cross[k]] = rho[x][k];
      done[y] = 1;
      q.push(y);
    }
  }

  std::vector<std::vector<int>> sigma2;
  sigma2.reserve(form2.ell);
  for (std::size_t i = 0; i < new_choice.cut_edges.size(); ++i) {
    const int e = new_choice.cut_edges[i];
    const auto [init, term] = new_choice.orientation[i];
    const bool forward = old_init(e) == init;
    // crossing e from init-sheet rho_init(k) lands on rho_term(cross(k)),
    // so sigma2[rho_init(k)] = rho_term(cross(k))
    std::vector<int> s(n);
    const std::vector<int>& rin = rho[init];
    const std::vector<int>& rte = rho[term];
    for (int k = 0; k < n; ++k) {
      const int crossed = forward ? pi(e, k) : pi_inv(e, k);
      s[rin[k]] = rte[crossed];
    }
    sigma2.push_back(std::move(s));
  }
  return lift_by_permutations(form2, sigma2);
}

Cover two_lift(const Cover& cover, std::uint64_t seed, bool require_connected) {
  const int n = cover.n;
  const int n2 = 2 * n;
  Rng rng(seed);
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // a sign per (label, sheet) pair, i.e. per skeleton edge
    std::vector<std::vector<int>> sign(cover.base.ell, std::vector<int>(n, 0));
    for (int i = 0; i < cover.base.ell; ++i)
      for (int k = 0; k < n; ++k) sign[i][k] = static_cast<int>(rng.below(2));
    std::vector<std::vector<int>> sigma2(cover.base.ell, std::vector<int>(n2, 0));
    for (int i = 0; i < cover.base.ell; ++i)
      for (int k = 0; k < n; ++k)
        for (int s = 0; s < 2; ++s)
          sigma2[i][k + s * n] = cover.sigma[i][k] + ((s ^ sign[i][k]) * n);
    Skeleton sk;
    sk.n = n2;
    for (int i = 0; i < cover.base.ell; ++i)
      for (int k = 0; k < n2; ++k) sk.edges.push_back({k, sigma2[i][k], i});
    if (require_connected && !sk.connected()) continue;
    return lift_by_permutations(cover.base, sigma2);
  }
  throw ConnectivityUnreachable("no connected 2-lift found in 1000 attempts");
}

TruncatedTree tree_ball(const BlockForm& base, TreeCenter center, int radius,
                        std::size_t max_sheets) {
  if (radius < 1) throw ValidationError("ball radius must be >= 1");
  if (center.edge_centered &&
      (center.star_label < 0 || center.star_label >= base.ell))
    throw ValidationError("edge-center label out of range");

  TruncatedTree t;
  t.d = base.d;
  t.radius = radius;
  t.p = base.p;
  t.center = center;

  // Sheets carry (shell, arrival incidence). Incidences are (label, dir):
  // dir 0 = crossed along orientation (A_i), dir 1 = against (A_i^T). The
  // blocked return direction at a sheet is the reverse of its arrival.
  struct Sheet {
    int shell;
    int arrival_label;  // -1 for vertex-center root
    int arrival_dir;
    int parent;
  };
  std::vector<Sheet> sheets;
  std::vector<std::pair<int, int>> cross_edges;  // (parent, child) sheet pairs
  std::vector<std::pair<int, int>> cross_info;   // (label, dir from parent)

  auto push_children = [&](int s) {
    const Sheet sh = sheets[s];
    if (sh.shell >= radius) return;
    for (int i = 0; i < base.ell; ++i) {
      for (int dir = 0; dir < 2; ++dir) {
        // skip the reversal of the arrival incidence
        if (sh.arrival_label == i && sh.arrival_dir == 1 - dir) continue;
        if (sheets.size() >= max_sheets)
          throw ValidationError("truncated ball exceeds the sheet cap");
        sheets.push_back({sh.shell + 1, i, dir, s});
        cross_edges.emplace_back(s, static_cast<int>(sheets.size()) - 1);
        cross_info.emplace_back(i, dir);
      }
    }
  };

  if (center.edge_centered) {
    const int j = center.star_label;
    // Two roots joined by an edge labeled j that applies A_j from root 0 to
    // root 1. Root 0 consumed its (j, 0) incidence, root 1 its (j, 1); the
    // stored arrival is the reverse so push_children blocks the right one.
    sheets.push_back({0, j, 1, -1});
    sheets.push_back({0, j, 0, -1});
    cross_edges.emplace_back(0, 1);
    cross_info.emplace_back(j, 0);
  } else {
    sheets.push_back({0, -1, -1, -1});
  }
  for (std::size_t s = 0; s < sheets.size(); ++s) push_children(static_cast<int>(s));

  t.sheet_count = static_cast<int>(sheets.size());
  t.sheet_shell.resize(sheets.size());
  t.sheet_arrival.resize(sheets.size());
  t.shell_sizes.assign(radius + 1, 0);
  t.shell_by_label.assign(radius + 1, std::vector<long long>(base.ell, 0));
  for (std::size_t s = 0; s < sheets.size(); ++s) {
    t.sheet_shell[s] = sheets[s].shell;
    t.sheet_arrival[s] = sheets[s].arrival_label;
    t.shell_sizes[sheets[s].shell] += 1;
    if (sheets[s].arrival_label >= 0)
      t.shell_by_label[sheets[s].shell][sheets[s].arrival_label] += 1;
  }

  const int p = base.p;
  t.op.dim = p * t.sheet_count;
  // intra-sheet blocks
  for (int s = 0; s < t.sheet_count; ++s) {
    for (int u = 0; u < p; ++u) {
      if (base.B(u, u) != 0.0) t.op.add(s * p + u, s * p + u, base.B(u, u));
      for (int v = u + 1; v < p; ++v)
        if (base.B(u, v) != 0.0) t.op.add_sym(s * p + u, s * p + v, base.B(u, v));
    }
  }
  // cross-sheet blocks: crossing (label i, dir 0) from s to c applies A_i
  for (std::size_t idx = 0; idx < cross_edges.size(); ++idx) {
    const auto [s, c] = cross_edges[idx];
    const auto [i, dir] = cross_info[idx];
    const int e = base.choice.cut_edges[i];
    const auto [init, term] = base.choice.orientation[i];
    const double a = base.data.a[e];
    if (dir == 0)
      t.op.add_sym(s * p + init, c * p + term, a);
    else
      t.op.add_sym(s * p + term, c * p + init, a);
  }
  return t;
}

}  // namespace liftgap
