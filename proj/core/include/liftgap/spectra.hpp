#pragma once

#include <optional>
#include <vector>

#include "liftgap/decomposition.hpp"
#include "liftgap/matrix.hpp"

namespace liftgap {

/// Full spectrum in descending order with a residual certificate.
struct Spectrum {
  Eigen::VectorXd values;  // descending
  double residual_bound = 0.0;

  int dim() const { return static_cast<int>(values.size()); }
  double lambda1() const { return values[0]; }
  double lambda2() const;
  double lambda_min() const { return values[values.size() - 1]; }
  double value(int k) const;  // 1-based: value(1) = lambda1
};

/// Dense symmetric eigendecomposition (tridiagonalization + implicit QL/QR,
/// O(dim^3)); intended for dim <= 4096. Residuals are certified against
/// tol * max|lambda|: all pairs for dim <= 1024, extremal and sampled pairs
/// above.
Spectrum eigenvalues_desc(const SymmetricMatrix& M, double tol = 1e-10);

/// Positive unit eigenvector for lambda_1 of a symmetric matrix with
/// nonnegative off-diagonal entries and connected support. Shifted power
/// iteration with shift 1 + max absolute row sum; stops when successive
/// iterates differ by < 1e-12 in sup norm.
Eigen::VectorXd perron_vector(const SymmetricMatrix& M);

/// Normalized eigenvalue counting measure: an atom of weight 1/p at every
/// eigenvalue.
struct CountingMeasure {
  std::vector<double> atoms;  // ascending
  double weight = 0.0;        // 1/p

  double cdf(double x) const;        // right-continuous
  double moment(int k) const;        // integral of x^k
  double total_mass() const { return weight * static_cast<double>(atoms.size()); }
};

CountingMeasure counting_measure(const Spectrum& s);

/// <delta_v, M^power delta_v> by repeated matrix-vector products.
double moment(const SymmetricMatrix& M, int v, int power);
double moment(const SparseOp& M, int v, int power);

/// Root sequence s_l = m_{2l}^(1/2l) from even moments of a positive measure.
struct SupEstimate {
  std::vector<double> roots;
  bool monotone = true;
  double limit_estimate = 0.0;  // last root, or extrapolated when requested
  bool extrapolated = false;
};

/// even_moments holds m_2, m_4, ... (mass m_0 passed separately). With
/// extrapolate set, fits log m_n = c0 + n log E - g log n + c1/n on the upper
/// half of the sequence and reports E; otherwise the last root is reported.
SupEstimate support_sup_from_moments(const std::vector<double>& even_moments,
                                     double mass, bool extrapolate = false);

/// Moments <delta_(root,u), (J_T + shift I)^n delta> of the periodic lift to
/// the universal cover, n = 0..max_power. Exact up to rounding: closed walks
/// are counted through per-series recursions over directed edge incidences,
/// using that a closed walk on the tree traverses each edge an even number of
/// times. Matches moments on any truncated ball of radius > max_power/2.
std::vector<double> tree_moment_sequence(const JacobiData& data, int base_vertex,
                                         double shift, int max_power);

/// Moment-based lower estimates of sup sigma(J_T) with the sandwich
/// [variational lower bound, lambda_1(J_0)].
struct TreeSupEstimate {
  double shift = 0.0;                  // 1 + max absolute row sum of J_0
  std::vector<double> estimates;       // s_l - shift, nondecreasing
  double limit_estimate = 0.0;
  bool extrapolated = false;
  double upper_lambda1 = 0.0;          // lambda_1(J_0)
  double lower_variational = 0.0;      // from bounds::tree_sup_lower_bound
};

/// max_power must be even and >= 2; estimates maximize over base vertices.
TreeSupEstimate tree_sup_estimate(const BlockForm& base, int max_power,
                                  bool extrapolate = false);

}  // namespace liftgap
