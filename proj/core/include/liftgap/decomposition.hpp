#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/multigraph.hpp"

namespace liftgap {

/// A spanning tree plus the ordered list of cut edges with fixed
/// orientations. Cut edges are ordered by edge index; each non-loop cut edge
/// is oriented lower vertex index -> higher, loops trivially.
struct SpanningChoice {
  std::vector<int> tree_edges;                     // sorted edge indices
  std::vector<int> cut_edges;                      // ascending edge indices
  std::vector<std::pair<int, int>> orientation;    // (initial, terminal) per cut edge

  std::string key(const MultiGraph& g) const;      // canonical "cut:id,id,..."
};

/// First Betti number |E| - |V| + 1.
int betti_number(const MultiGraph& g);

/// BFS tree from the first vertex, scanning incidences in edge-index order.
SpanningChoice choose_spanning_tree(const MultiGraph& g);

/// Explicit tree edges; throws NotASpanningTree if they do not form one.
SpanningChoice choose_spanning_tree(const MultiGraph& g,
                                    const std::vector<std::string>& tree_edge_ids);

/// All spanning trees via contraction/deletion, truncated at limit. Trees are
/// returned as canonical edge sets in lexicographic order (of the enumerated
/// prefix when the cap bites).
std::vector<SpanningChoice> enumerate_spanning_choices(const MultiGraph& g,
                                                       std::size_t limit = 10000);

/// The lego block (B, A_1..A_ell) of a Jacobi matrix under a spanning choice:
/// B is the Jacobi matrix with the cut edges removed (potentials kept), each
/// A_i has the single entry a_{e_i} at its orientation (diagonal and
/// self-adjoint for a cut loop), and A = sum_i (A_i + A_i^T).
struct BlockForm {
  JacobiData data;
  SpanningChoice choice;
  int p = 0;
  int ell = 0;
  int d = 0;  // 2*ell
  SymmetricMatrix B{0};
  std::vector<Eigen::MatrixXd> A_list;
  SymmetricMatrix A{0};

  /// y^T A_i y; orientation-independent.
  double quad_Ai(int i, const Eigen::VectorXd& y) const {
    return y.dot(A_list[i] * y);
  }
};

BlockForm block_decomposition(const JacobiData& data, const SpanningChoice& choice);

/// Convenience: decomposition under the default BFS tree.
BlockForm default_block_form(const JacobiData& data);

}  // namespace liftgap
