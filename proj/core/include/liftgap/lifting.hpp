#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liftgap/decomposition.hpp"
#include "liftgap/spectra.hpp"

namespace liftgap {

/// d-regular multigraph on the sheet set, one edge (k, sigma_i(k)) per cut
/// edge label i and sheet k. Fixed points of sigma_i become loops.
struct Skeleton {
  struct Edge {
    int from, to;
    int label;  // cut-edge position (0-based)
  };
  int n = 0;
  std::vector<Edge> edges;

  std::vector<std::vector<int>> adjacency() const;
  std::vector<int> distances_from(int source) const;  // BFS
  int distance(int u, int v) const;
  int diameter() const;  // max finite distance; -1 when disconnected
  bool connected() const;
};

/// An n-lift described by one permutation per cut edge. Sheet-major block
/// layout: lifted index = sheet * p + vertex. Connected covers carry their
/// spectrum and are checked against lambda_1(J_0) at construction.
struct Cover {
  BlockForm base;
  int n = 0;
  std::vector<std::vector<int>> sigma;  // ell permutations, 0-based images
  Skeleton skeleton;
  MultiGraph lifted_graph;
  JacobiData lifted;
  SymmetricMatrix lifted_matrix{0};
  bool connected = false;
  std::optional<Spectrum> spectrum;  // present when dimension <= 4096

  int lifted_index(int sheet, int vertex) const { return sheet * base.p + vertex; }
};

Cover lift_by_permutations(const BlockForm& base,
                           const std::vector<std::vector<int>>& sigma);

/// Uniform permutations via seeded Fisher-Yates; with require_connected,
/// resamples up to 1000 times before ConnectivityUnreachable.
Cover random_cover(const BlockForm& base, int n, std::uint64_t seed,
                   bool require_connected);

/// Shortest-path distance between sheets of the skeleton.
int skeleton_distance(const Cover& cover, int sheet_u, int sheet_v);

/// Re-expresses the same covering space in the block form of another spanning
/// choice: sheet labels are aligned along the new tree so its edges lift
/// identically, and the new cut edges pick up the conjugated permutations.
/// The lifted operator is permutation-similar to the original.
Cover rebase_cover(const Cover& cover, const SpanningChoice& new_choice);

/// 2-lift of an existing cover, expressed as a cover of the original base
/// with twice the sheets: each skeleton edge of the input receives a sign.
Cover two_lift(const Cover& cover, std::uint64_t seed, bool require_connected);

struct TreeCenter {
  bool edge_centered = true;
  int star_label = 0;  // cut-edge label for the central edge; ignored for vertex centers
  static TreeCenter edge(int label) { return {true, label}; }
  static TreeCenter vertex() { return {false, -1}; }
};

/// Radius-r ball in the universal cover carrying the periodic operator
/// restricted to it (edges leaving the ball dropped). Shells are sheet
/// distances from the center.
struct TruncatedTree {
  int d = 0;
  int radius = 0;
  int p = 0;
  TreeCenter center;
  int sheet_count = 0;
  std::vector<int> sheet_shell;                      // per sheet
  std::vector<int> sheet_arrival;                    // arrival label; star/root at shell 0
  std::vector<long long> shell_sizes;                // |V_k|, k = 0..radius
  std::vector<std::vector<long long>> shell_by_label;  // |V_{k,j}|
  SparseOp op;                                       // dimension p * sheet_count

  int dim() const { return p * sheet_count; }
};

/// Materializes the ball; throws when it would exceed max_sheets.
TruncatedTree tree_ball(const BlockForm& base, TreeCenter center, int radius,
                        std::size_t max_sheets = 2000000);

}  // namespace liftgap
