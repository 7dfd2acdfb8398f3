#pragma once

#include <optional>
#include <vector>

#include "liftgap/multigraph.hpp"
#include "liftgap/spectra.hpp"

namespace liftgap {

/// Ground-state edge sum: sum over edges (v, w) of a_e psi_v psi_w
/// (f_v - f_w)^2; loops contribute zero. Equals <f psi, (lambda_1 - J) f psi>
/// when J psi = lambda_1 psi with psi > 0 (validated, tolerance 1e-9).
double ground_state_quadratic(const JacobiData& data, const Eigen::VectorXd& psi,
                              double lambda1, const Eigen::VectorXd& f);

/// lambda_1 - lambda_k (k 1-based), computed by eigensolver difference and
/// cross-checked against the conjugated edge-form route to 1e-8.
double minmax_gap(const JacobiData& data, int k);

struct ComparisonRatios {
  double S = 0.0;  // max over edges of a psi psi / (a~ psi~ psi~)
  double I = 0.0;  // min over vertices of psi^2 / psi~^2
  Eigen::VectorXd psi, psi_tilde;
};

ComparisonRatios comparison_ratios(const JacobiData& J, const JacobiData& Jt);

struct ComparisonReport {
  double S = 0.0, I = 0.0;
  std::vector<int> ks;
  std::vector<double> gap_J, gap_Jt;
  std::vector<bool> holds;  // gap_J <= (S/I) gap_Jt + slack
  std::optional<double> proportionality_c;  // if psi = c psi~ detected
  double ratio_min = 0.0, ratio_max = 0.0;  // min/max a_e / a~_e, set with c
  std::vector<bool> two_sided_holds;        // the two-sided form, set with c
};

ComparisonReport verify_comparison(const JacobiData& J, const JacobiData& Jt,
                                   int k_lo, int k_hi, double slack = 1e-9);

/// The constant C when b_v + 2 sum over loops + sum over incident non-loop
/// weights is the same at every vertex (within 1e-12); the Perron vector is
/// then constant and lambda_1 = C.
std::optional<double> constant_perron_condition(const JacobiData& data,
                                                double tol = 1e-12);

}  // namespace liftgap
