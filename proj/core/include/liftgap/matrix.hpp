#pragma once

#include <Eigen/Dense>
#include <vector>

#include "liftgap/errors.hpp"

namespace liftgap {

/// Dense real matrix that is symmetric by construction: all writes go
/// through mirrored setters, so M == M^T holds entrywise in exact floating
/// point (never symmetrized after the fact).
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int dim) : m_(Eigen::MatrixXd::Zero(dim, dim)) {}

  /// Wraps an existing dense matrix; throws NotSymmetric unless m == m^T
  /// exactly.
  static SymmetricMatrix from_dense(Eigen::MatrixXd m);

  int dim() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXd& mat() const { return m_; }

  /// Adds v at (i, j) and (j, i); adds once on the diagonal.
  void add_sym(int i, int j, double v) {
    m_(i, j) += v;
    if (i != j) m_(j, i) += v;
  }
  void add_diag(int i, double v) { m_(i, i) += v; }

  /// Adds the symmetric block m + m^T scaled into positions; used for
  /// accumulating directed single-entry blocks.
  void add_pair(int i, int j, double v) { add_sym(i, j, v); }

  double quad(const Eigen::VectorXd& y) const { return y.dot(m_ * y); }

  double max_abs_row_sum() const {
    return m_.cwiseAbs().rowwise().sum().maxCoeff();
  }

  SymmetricMatrix plus_scaled(const SymmetricMatrix& other, double c) const;

 private:
  Eigen::MatrixXd m_;
};

/// Sparse square operator stored as triplets; covers truncated-tree
/// operators too large for dense storage.
struct SparseOp {
  int dim = 0;
  struct Entry {
    int r, c;
    double v;
  };
  std::vector<Entry> entries;

  void add(int r, int c, double v) { entries.push_back({r, c, v}); }
  void add_sym(int r, int c, double v) {
    add(r, c, v);
    if (r != c) add(c, r, v);
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  double quad(const Eigen::VectorXd& x) const { return x.dot(apply(x)); }

  /// Dense export; guarded because balls can be huge.
  SymmetricMatrix dense(int max_dim = 4096) const;
};

}  // namespace liftgap
