#include "liftgap/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "liftgap/bounds.hpp"

namespace liftgap {

double Spectrum::lambda2() const {
  if (dim() < 2) throw PreconditionError("lambda_2 needs dimension >= 2");
  return values[1];
}

double Spectrum::value(int k) const {
  if (k < 1 || k > dim()) throw PreconditionError("eigenvalue index out of range");
  return values[k - 1];
}

Spectrum eigenvalues_desc(const SymmetricMatrix& M, double tol) {
  const int n = M.dim();
  if (n > 4096)
    throw ValidationError("dense eigensolve limited to dimension 4096, got " +
                          std::to_string(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M.mat());
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("symmetric eigensolver did not converge");

  Spectrum s;
  s.values = solver.eigenvalues().reverse();

  const double scale = std::max(std::abs(s.values[0]), std::abs(s.values[n - 1]));
  double worst = 0.0;
  const auto& V = solver.eigenvectors();
  auto residual_at = [&](int ascending_idx) {
    const Eigen::VectorXd r =
        M.mat() * V.col(ascending_idx) -
        solver.eigenvalues()[ascending_idx] * V.col(ascending_idx);
    return r.norm();
  };
  if (n <= 1024) {
    const Eigen::MatrixXd R =
        M.mat() * V - V * solver.eigenvalues().asDiagonal();
    worst = R.colwise().norm().maxCoeff();
  } else {
    // extremal pairs plus a spread of sampled columns
    std::vector<int> idx = {0, 1, n - 2, n - 1};
    for (int k = 1; k <= 8; ++k) idx.push_back((n - 1) * k / 9);
    for (const int i : idx) worst = std::max(worst, residual_at(i));
  }
  s.residual_bound = worst;
  if (scale > 0 && worst > tol * scale)
    throw ConvergenceFailure("eigensolver residual " + std::to_string(worst) +
                             " exceeds tolerance");
  return s;
}

namespace {

void check_pattern_connected(const SymmetricMatrix& M) {
  const int n = M.dim();
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y = 0; y < n; ++y) {
      if (!seen[y] && x != y && M(x, y) != 0.0) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != n)
    throw Disconnected("matrix support is not connected; Perron vector undefined");
}

}  // namespace

Eigen::VectorXd perron_vector(const SymmetricMatrix& M) {
  const int n = M.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && M(i, j) < 0.0)
        throw NotNonnegative("off-diagonal entries must be nonnegative");
  if (n > 1) check_pattern_connected(M);

  const double shift = 1.0 + M.max_abs_row_sum();
  Eigen::MatrixXd P = M.mat();
  P.diagonal().array() += shift;

  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  constexpr int kMaxIter = 200000;
  for (int it = 0; it < kMaxIter; ++it) {
    Eigen::VectorXd y = P * x;
    y.normalize();
    const double diff = (y - x).cwiseAbs().maxCoeff();
    x = std::move(y);
    if (diff < 1e-12) {
      const double lambda = x.dot(M.mat() * x);
      const double res = (M.mat() * x - lambda * x).norm();
      if (res > 1e-10 * std::max(1.0, std::abs(lambda)))
        continue;  // keep polishing until the eigenpair certificate holds
      // returned positive: the Perron vector of an irreducible nonnegative
      // matrix has strictly positive entries
      if (x.minCoeff() <= 0.0)
        throw ConvergenceFailure("power iteration produced a nonpositive entry");
      return x;
    }
  }
  throw ConvergenceFailure("power iteration did not converge");
}

CountingMeasure counting_measure(const Spectrum& s) {
  CountingMeasure m;
  m.atoms.assign(s.values.data(), s.values.data() + s.dim());
  std::sort(m.atoms.begin(), m.atoms.end());
  m.weight = 1.0 / static_cast<double>(s.dim());
  return m;
}

double CountingMeasure::cdf(double x) const {
  const auto it = std::upper_bound(atoms.begin(), atoms.end(), x);
  return weight * static_cast<double>(it - atoms.begin());
}

double CountingMeasure::moment(int k) const {
  double out = 0.0;
  for (const double a : atoms) out += std::pow(a, k);
  return weight * out;
}

double moment(const SymmetricMatrix& M, int v, int power) {
  if (power < 0) throw ValidationError("moment power must be >= 0");
  if (v < 0 || v >= M.dim()) throw ValidationError("vertex index out of range");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(M.dim());
  x[v] = 1.0;
  for (int t = 0; t < power; ++t) x = M.mat() * x;
  return x[v];
}

double moment(const SparseOp& M, int v, int power) {
  if (power < 0) throw ValidationError("moment power must be >= 0");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(M.dim);
  x[v] = 1.0;
  for (int t = 0; t < power; ++t) x = M.apply(x);
  return x[v];
}

namespace {

/// Least-squares fit of log m_n = c0 + n log E - g log n + c1/n over the
/// given powers; returns E.
double extrapolate_edge(const std::vector<int>& powers,
                        const std::vector<double>& log_moments) {
  const int npts = static_cast<int>(powers.size());
  Eigen::MatrixXd X(npts, 4);
  Eigen::VectorXd y(npts);
  for (int i = 0; i < npts; ++i) {
    const double n = powers[i];
    X(i, 0) = 1.0;
    X(i, 1) = n;
    X(i, 2) = -std::log(n);
    X(i, 3) = 1.0 / n;
    y[i] = log_moments[i];
  }
  const Eigen::VectorXd coef = X.colPivHouseholderQr().solve(y);
  return std::exp(coef[1]);
}

}  // namespace

SupEstimate support_sup_from_moments(const std::vector<double>& even_moments,
                                     double mass, bool extrapolate) {
  if (even_moments.empty()) throw ValidationError("need at least one even moment");
  if (!(mass > 0.0)) throw ValidationError("mass must be positive");
  SupEstimate est;
  est.roots.reserve(even_moments.size());
  for (std::size_t l = 0; l < even_moments.size(); ++l) {
    if (even_moments[l] < 0.0)
      throw NegativeMoment("even moment is negative; apply a positivity shift");
    const double power = 2.0 * static_cast<double>(l + 1);
    est.roots.push_back(std::pow(even_moments[l], 1.0 / power));
  }
  for (std::size_t l = 1; l < est.roots.size(); ++l)
    if (est.roots[l] < est.roots[l - 1] - 1e-12) est.monotone = false;
  est.limit_estimate = est.roots.back();
  if (extrapolate && est.roots.size() >= 6) {
    std::vector<int> powers;
    std::vector<double> logm;
    const std::size_t lo = est.roots.size() / 2;
    for (std::size_t l = lo; l < even_moments.size(); ++l) {
      powers.push_back(2 * static_cast<int>(l + 1));
      logm.push_back(std::log(even_moments[l]));
    }
    est.limit_estimate = extrapolate_edge(powers, logm);
    est.extrapolated = true;
  }
  return est;
}

std::vector<double> tree_moment_sequence(const JacobiData& data, int base_vertex,
                                         double shift, int max_power) {
  const MultiGraph& g = data.graph;
  const int p = g.vertex_count();
  const int M = g.edge_count();
  if (base_vertex < 0 || base_vertex >= p)
    throw ValidationError("base vertex out of range");
  if (max_power < 0) throw ValidationError("max power must be >= 0");
  const int N = max_power;

  // Directed edge incidences: (e, 0) = u->v, (e, 1) = v->u. The head of
  // (e, 0) is v. A loop contributes both directions, mutual reversals.
  std::vector<std::vector<std::pair<int, int>>> out(p);
  for (int e = 0; e < M; ++e) {
    out[g.edge_u(e)].emplace_back(e, 0);
    out[g.edge_v(e)].emplace_back(e, 1);
  }
  std::vector<double> beta(p);
  for (int v = 0; v < p; ++v) beta[v] = data.b[v] + shift;

  // H[e][dir][n]: series of return walks at head within the subtree hanging
  // from the incidence, excluding its reversal. H = 1 + S * H with
  // S = beta_head t + t^2 sum_{out != reversal} a^2 H.
  std::vector<std::array<std::vector<double>, 2>> H(M);
  for (int e = 0; e < M; ++e)
    for (int dir = 0; dir < 2; ++dir) {
      H[e][dir].assign(N + 1, 0.0);
      H[e][dir][0] = 1.0;
    }
  auto head = [&](int e, int dir) { return dir == 0 ? g.edge_v(e) : g.edge_u(e); };

  for (int n = 1; n <= N; ++n) {
    for (int e = 0; e < M; ++e) {
      for (int dir = 0; dir < 2; ++dir) {
        const int h = head(e, dir);
        double acc = beta[h] * H[e][dir][n - 1];
        for (int k = 2; k <= n; ++k) {
          double s = 0.0;
          for (const auto& [f, c] : out[h]) {
            if (f == e && c == 1 - dir) continue;  // no backtracking
            s += data.a[f] * data.a[f] * H[f][c][k - 2];
          }
          acc += s * H[e][dir][n - k];
        }
        H[e][dir][n] = acc;
      }
    }
  }

  std::vector<double> G(N + 1, 0.0);
  G[0] = 1.0;
  for (int n = 1; n <= N; ++n) {
    double acc = beta[base_vertex] * G[n - 1];
    for (int k = 2; k <= n; ++k) {
      double s = 0.0;
      for (const auto& [f, c] : out[base_vertex])
        s += data.a[f] * data.a[f] * H[f][c][k - 2];
      acc += s * G[n - k];
    }
    G[n] = acc;
  }
  return G;
}

TreeSupEstimate tree_sup_estimate(const BlockForm& base, int max_power,
                                  bool extrapolate) {
  if (max_power < 2 || max_power % 2 != 0)
    throw ValidationError("max power must be even and >= 2");

  const SymmetricMatrix J0 = jacobi_matrix(base.data);
  TreeSupEstimate est;
  est.shift = 1.0 + J0.max_abs_row_sum();
  est.upper_lambda1 = eigenvalues_desc(J0).lambda1();
  est.lower_variational = tree_sup_lower_bound(base).value;

  const int p = base.p;
  std::vector<std::vector<double>> seqs(p);
  for (int u = 0; u < p; ++u)
    seqs[u] = tree_moment_sequence(base.data, u, est.shift, max_power);

  // per-vertex even moments; estimate sequence maximizes over vertices
  const int nl = max_power / 2;
  est.estimates.assign(nl, 0.0);
  int best_u = 0;
  for (int u = 0; u < p; ++u)
    if (seqs[u][max_power] > seqs[best_u][max_power]) best_u = u;
  for (int l = 1; l <= nl; ++l) {
    double best = -1e300;
    for (int u = 0; u < p; ++u)
      best = std::max(best, std::pow(seqs[u][2 * l], 1.0 / (2.0 * l)));
    est.estimates[l - 1] = best - est.shift;
  }

  std::vector<double> even;
  for (int l = 1; l <= nl; ++l) even.push_back(seqs[best_u][2 * l]);
  const SupEstimate sup = support_sup_from_moments(even, 1.0, extrapolate);
  est.limit_estimate = sup.limit_estimate - est.shift;
  est.extrapolated = sup.extrapolated;
  if (!sup.extrapolated) est.limit_estimate = est.estimates.back();
  return est;
}

}  // namespace liftgap
