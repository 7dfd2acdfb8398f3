#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liftgap/bounds.hpp"

namespace liftgap {

enum class TowerMode { random, iterated_two_lift, disjoint_union };

struct TowerLevel {
  int n = 0;
  bool connected = false;
  double lambda1 = 0.0;
  std::optional<double> lambda2;
  double lambda_min = 0.0;
  std::vector<double> eigenvalues;       // descending
  std::vector<double> histogram_mass;    // sums to 1
  std::optional<double> margin_vs_tree;  // lambda_2 - variational tree bound
  std::optional<int> best_j, best_r;     // best admissible pair
  std::optional<double> theorem_bound;   // ab_bound at (best_j, best_r), Perron y
  std::optional<double> margin_vs_theorem;
};

struct TowerReport {
  TowerMode mode = TowerMode::random;
  std::uint64_t seed = 0;
  std::vector<double> bin_edges;
  std::vector<TowerLevel> levels;
  double lambda1_base = 0.0;
  double tree_lower_bound = 0.0;   // variational bound of the base
  TreeSupEstimate tree_estimate;   // moment side, extrapolated
  double support_upper = 0.0;      // estimated sup sigma(J_T)
  double support_lower = 0.0;      // estimated inf sigma(J_T), via -J_T
};

/// Builds covers of increasing size, eigensolves each level, and assembles
/// histograms plus bound margins. Levels derive their seeds as seed + index,
/// so results do not depend on jobs; random and disjoint-union levels may be
/// built in parallel, iterated 2-lifts are inherently sequential. Random and
/// iterated-2-lift levels are resampled until connected; the disjoint-union
/// mode builds sizes[i] trivial copies as a diagnostic. Histogram bins span
/// all observed spectra (the stated default range is widened when covers
/// spill below lambda_min(J_0) - 0.5).
TowerReport run_tower(const BlockForm& base, const std::vector<int>& sizes,
                      std::uint64_t seed, TowerMode mode, int bins = 40,
                      int moment_power = 40, int jobs = 1);

/// lambda_2 margins over the variational tree bound, one per level.
std::vector<double> greenberg_margin(const TowerReport& report);

struct ConjectureStats {
  double bracket_lo = 0.0, bracket_hi = 0.0;
  std::vector<double> bin_lo, bin_hi;
  std::vector<double> mass_final;       // per bin, final level
  std::vector<bool> persistent_zero;    // zero mass on the top half of levels
};

/// Reports empirical eigenvalue mass in bins intersecting the estimated
/// sigma(J_T) bracket. Persistent empty bins are flagged as interesting for
/// the support-containment question, never as refutations. Needs at least
/// two connected levels.
ConjectureStats conjecture_probe(const TowerReport& report, int bracket_bins = 40);

}  // namespace liftgap
