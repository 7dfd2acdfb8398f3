#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "liftgap/lifting.hpp"

namespace liftgap {

using int128 = __int128;

std::string int128_to_string(int128 v);

/// Exact shell bookkeeping for a ball centered on an edge labeled star_j in
/// the d-regular tree: |V_0| = 2, |V_k| = 2(d-1)^k, and the per-label counts
/// evolve by |V_{k,j}| = 2|V_{k-1}| - |V_{k-1,j}|. The closed form is
/// |V_{k,j}| = 2|V_k|/d + (-1)^{k+1} beta_j with beta_j = 4/d - 2 at the star
/// label and 4/d otherwise; beta is kept as the exact integer d*beta_j.
struct ShellTable {
  int d = 0;
  int ell = 0;
  int radius = 0;
  int star_j = 0;
  std::vector<int128> shell_sizes;                 // |V_k|
  std::vector<std::vector<int128>> by_label;       // |V_{k,j}| via the recursion
  std::vector<int> d_beta;                         // d * beta_j per label

  /// Closed form equals the recursion, exactly in integer arithmetic.
  bool closed_form_matches() const;
  /// Labels partition each shell: sum_j |V_{k,j}| = |V_k| for k >= 1.
  bool partition_holds() const;
};

ShellTable shell_table(int d, int radius, int star_j);

/// C_j = (2 sqrt(d-1) - 1) <Ay,y>/d + | <Ay,y>/d - <A_j y,y> |.
double constant_Cj(const BlockForm& base, const Eigen::VectorXd& y, int j);

struct AdmissibleWitness {
  Skeleton::Edge edge1, edge2;
  int distance = 0;  // min over the four endpoint pairs
};

struct Admissible {
  int r = 0;  // largest admissible radius; 0 when no pair qualifies
  std::optional<AdmissibleWitness> witness;
};

/// Largest r such that some pair of skeleton edges labeled j has endpoint
/// distance > 2r + 2 (strict), plus the witnessing pair.
Admissible admissible_r(const Cover& cover, int j);

struct BestAdmissible {
  int j = -1;
  int r = 0;
  std::optional<AdmissibleWitness> witness;
};

/// Scans all labels; subsumes the diameter criterion.
BestAdmissible best_admissible(const Cover& cover);

struct BoundReport {
  double value = 0.0;
  double By_y = 0.0;
  double Ay_y_over_d = 0.0;
  double Cj = 0.0;
  int j = 0;
  int r = 0;
  int d = 0;
  Eigen::VectorXd y;
  std::string choice_key;
  bool vacuous = false;  // <Ay,y> = 0: the bound holds but carries no content
  std::optional<AdmissibleWitness> witness;
};

/// Value of the lower bound <By,y> + 2 sqrt(d-1) <Ay,y>/d - C_j/r.
/// Admissibility of (j, r) is the caller's responsibility here.
BoundReport ab_bound(const BlockForm& base, const Eigen::VectorXd& y, int j, int r);

struct AbVerification {
  bool holds = false;
  double margin = 0.0;  // lambda_2 - bound
  double lambda2 = 0.0;
  BoundReport report;
};

/// Checks lambda_2(cover) >= bound - slack for an admissible (j, r).
AbVerification verify_ab(const Cover& cover, const Eigen::VectorXd& y, int j,
                         int r, double slack = 1e-9);

struct GapBound {
  double value = 0.0;
  BoundReport components;
  std::optional<double> observed_gap;  // lambda_1 - lambda_2 of a supplied cover
  std::optional<bool> holds;
};

/// Spectral-gap upper bound (d - 2 sqrt(d-1)) <Ay,y>/d + C_j/r. Pass y as
/// nullptr to use the Perron vector of J_0. A cover, when supplied, is
/// checked against the bound.
GapBound gap_upper_bound(const BlockForm& base, const Eigen::VectorXd* y, int r,
                         int j, const Cover* check = nullptr);

enum class TreeBoundMode { closed, scan_trees };

struct TreeLowerBound {
  double value = 0.0;
  Eigen::VectorXd y;
  SpanningChoice choice;
};

/// Variational lower bound on sup sigma(J_T): lambda_1 of
/// M = B + (2 sqrt(d-1)/d) A, whose Perron vector is the maximizing
/// nonnegative unit vector. Scan mode maximizes over enumerated spanning
/// choices.
TreeLowerBound tree_sup_lower_bound(const BlockForm& base,
                                    TreeBoundMode mode = TreeBoundMode::closed,
                                    std::size_t scan_limit = 10000);

struct OracleResult {
  double rayleigh = 0.0;  // <J_T x, x> for the shell test vector
  double bound = 0.0;     // ab_bound value
  double slack = 0.0;     // rayleigh - bound, >= 0 up to rounding
};

/// Evaluates the radial test vector x (value (2r)^{-1/2} (d-1)^{-k/2} y on
/// shell k < r of the ball around an edge labeled A_j) against the bound.
/// The quadratic form is aggregated per shell from exact shell counts, so
/// arbitrarily large radii cost O(r * ell).
OracleResult test_vector_oracle(const BlockForm& base, const Eigen::VectorXd& y,
                                int j, int r);

/// Same quantity evaluated on a materialized ball; cross-check for small
/// radii.
OracleResult test_vector_oracle_on_ball(const BlockForm& base,
                                        const Eigen::VectorXd& y, int j, int r,
                                        std::size_t max_sheets = 2000000);

/// Unit-norm and nonnegativity validation shared by bound entry points.
void validate_direction(const Eigen::VectorXd& y, int p);

}  // namespace liftgap
