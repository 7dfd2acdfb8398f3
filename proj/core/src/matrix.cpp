#include "liftgap/matrix.hpp"

namespace liftgap {

SymmetricMatrix SymmetricMatrix::from_dense(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw NotSymmetric("matrix is not square");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i))
        throw NotSymmetric("matrix differs from its transpose");
  SymmetricMatrix s(static_cast<int>(m.rows()));
  s.m_ = std::move(m);
  return s;
}

SymmetricMatrix SymmetricMatrix::plus_scaled(const SymmetricMatrix& other,
                                             double c) const {
  SymmetricMatrix out(dim());
  out.m_ = m_ + c * other.m_;
  return out;
}

Eigen::VectorXd SparseOp::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
  for (const Entry& e : entries) y[e.r] += e.v * x[e.c];
  return y;
}

SymmetricMatrix SparseOp::dense(int max_dim) const {
  if (dim > max_dim)
    throw ValidationError("sparse operator too large for dense export: dim " +
                          std::to_string(dim));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (const Entry& e : entries) m(e.r, e.c) += e.v;
  return SymmetricMatrix::from_dense(std::move(m));
}

}  // namespace liftgap
