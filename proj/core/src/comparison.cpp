#include "liftgap/comparison.hpp"

#include <cmath>
#include <limits>

namespace liftgap {

namespace {

// Ground state straight from the dense eigensolver: same Perron vector the
// power iteration finds, but at machine precision, which the 1e-8 min-max
// cross-check needs.
Eigen::VectorXd ground_state(const SymmetricMatrix& J) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J.mat());
  if (es.info() != Eigen::Success)
    throw ConvergenceFailure("eigensolver failed on the ground-state solve");
  Eigen::VectorXd v = es.eigenvectors().col(J.dim() - 1);
  if (v.sum() < 0.0) v = -v;
  if (v.minCoeff() <= 0.0)
    throw Disconnected("top eigenvector is not strictly positive; graph connected?");
  return v;
}

}  // namespace

double ground_state_quadratic(const JacobiData& data, const Eigen::VectorXd& psi,
                              double lambda1, const Eigen::VectorXd& f) {
  const MultiGraph& g = data.graph;
  const int p = g.vertex_count();
  if (static_cast<int>(psi.size()) != p || static_cast<int>(f.size()) != p)
    throw ValidationError("vector dimension does not match the graph");
  for (int v = 0; v < p; ++v)
    if (!(psi[v] > 0.0)) throw NotPositive("ground state must be strictly positive");
  const SymmetricMatrix J = jacobi_matrix(data);
  const double res = (J.mat() * psi - lambda1 * psi).norm();
  if (res > 1e-9 * std::max(1.0, std::abs(lambda1)))
    throw NotGroundState("psi is not an eigenvector for lambda_1 (residual " +
                         std::to_string(res) + ")");

  double sum = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const int v = g.edge_u(e), w = g.edge_v(e);
    if (v == w) continue;  // f_v - f_w vanishes on loops
    const double diff = f[v] - f[w];
    sum += data.a[e] * psi[v] * psi[w] * diff * diff;
  }
  return sum;
}

double minmax_gap(const JacobiData& data, int k) {
  const SymmetricMatrix J = jacobi_matrix(data);
  const int p = J.dim();
  if (k < 1 || k > p) throw ValidationError("k out of range");
  const Spectrum spec = eigenvalues_desc(J);
  const double direct = spec.lambda1() - spec.value(k);

  // Conjugated route: assemble the edge form sum a_e psi_v psi_w (f_v-f_w)^2
  // as a matrix in g = f psi; its k-th smallest eigenvalue is the gap.
  const Eigen::VectorXd psi = ground_state(J);
  const MultiGraph& g = data.graph;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(p, p);
  for (int e = 0; e < g.edge_count(); ++e) {
    const int v = g.edge_u(e), w = g.edge_v(e);
    if (v == w) continue;
    const double c = data.a[e] * psi[v] * psi[w];
    L(v, v) += c;
    L(w, w) += c;
    L(v, w) -= c;
    L(w, v) -= c;
  }
  Eigen::MatrixXd W = L;
  for (int i = 0; i < p; ++i)
    for (int jj = 0; jj < p; ++jj) W(i, jj) /= psi[i] * psi[jj];
  const Spectrum conj = eigenvalues_desc(SymmetricMatrix::from_dense(std::move(W)));
  const double via_form = conj.value(p - k + 1);  // k-th smallest

  if (std::abs(direct - via_form) > 1e-8)
    throw InternalCheckError("min-max route mismatch: " + std::to_string(direct) +
                             " vs " + std::to_string(via_form));
  return direct;
}

ComparisonRatios comparison_ratios(const JacobiData& J, const JacobiData& Jt) {
  if (!J.graph.same_structure(Jt.graph))
    throw GraphMismatch("comparison requires the same underlying multigraph");
  ComparisonRatios r;
  r.psi = ground_state(jacobi_matrix(J));
  r.psi_tilde = ground_state(jacobi_matrix(Jt));

  const MultiGraph& g = J.graph;
  r.S = -std::numeric_limits<double>::infinity();
  for (int e = 0; e < g.edge_count(); ++e) {
    const int v = g.edge_u(e), w = g.edge_v(e);
    const double num = J.a[e] * r.psi[v] * r.psi[w];
    const double den = Jt.a[e] * r.psi_tilde[v] * r.psi_tilde[w];
    r.S = std::max(r.S, num / den);
  }
  r.I = std::numeric_limits<double>::infinity();
  for (int v = 0; v < g.vertex_count(); ++v)
    r.I = std::min(r.I, (r.psi[v] * r.psi[v]) / (r.psi_tilde[v] * r.psi_tilde[v]));
  return r;
}

ComparisonReport verify_comparison(const JacobiData& J, const JacobiData& Jt,
                                   int k_lo, int k_hi, double slack) {
  const ComparisonRatios ratios = comparison_ratios(J, Jt);
  const Spectrum sJ = eigenvalues_desc(jacobi_matrix(J));
  const Spectrum sJt = eigenvalues_desc(jacobi_matrix(Jt));
  const int p = sJ.dim();
  if (k_lo < 1 || k_hi > p || k_lo > k_hi) throw ValidationError("bad k range");

  ComparisonReport rep;
  rep.S = ratios.S;
  rep.I = ratios.I;
  for (int k = k_lo; k <= k_hi; ++k) {
    rep.ks.push_back(k);
    rep.gap_J.push_back(sJ.lambda1() - sJ.value(k));
    rep.gap_Jt.push_back(sJt.lambda1() - sJt.value(k));
    rep.holds.push_back(rep.gap_J.back() <=
                        (rep.S / rep.I) * rep.gap_Jt.back() + slack);
  }

  if ((ratios.psi - ratios.psi_tilde).cwiseAbs().maxCoeff() <= 1e-8) {
    // both Perron vectors are unit and positive, so proportionality means c=1
    rep.proportionality_c = 1.0;
    rep.ratio_min = std::numeric_limits<double>::infinity();
    rep.ratio_max = -std::numeric_limits<double>::infinity();
    for (int e = 0; e < J.graph.edge_count(); ++e) {
      rep.ratio_min = std::min(rep.ratio_min, J.a[e] / Jt.a[e]);
      rep.ratio_max = std::max(rep.ratio_max, J.a[e] / Jt.a[e]);
    }
    for (std::size_t idx = 0; idx < rep.ks.size(); ++idx) {
      const bool lower = rep.ratio_min * rep.gap_Jt[idx] <= rep.gap_J[idx] + slack;
      const bool upper = rep.gap_J[idx] <= rep.ratio_max * rep.gap_Jt[idx] + slack;
      rep.two_sided_holds.push_back(lower && upper);
    }
  }
  return rep;
}

std::optional<double> constant_perron_condition(const JacobiData& data,
                                                double tol) {
  const MultiGraph& g = data.graph;
  double c0 = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    double row = data.b[v];
    for (const auto& [e, w] : g.adjacency()[v]) {
      (void)w;
      row += data.a[e];  // a loop appears twice in v's incidence list
    }
    if (v == 0)
      c0 = row;
    else if (std::abs(row - c0) > tol)
      return std::nullopt;
  }
  return c0;
}

}  // namespace liftgap
