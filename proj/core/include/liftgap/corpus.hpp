#pragma once

#include <cstdint>

#include "liftgap/multigraph.hpp"
#include "liftgap/rng.hpp"

namespace liftgap {

struct RandomBaseOptions {
  int max_vertices = 6;
  int max_betti = 4;
  double a_lo = 0.1, a_hi = 3.0;
  double b_lo = -2.0, b_hi = 2.0;
};

/// Weight drawn on a dyadic grid (multiples of 2^-20) so small sums stay
/// exact in double arithmetic; recomposition identities then test at zero
/// tolerance.
double dyadic_uniform(Rng& rng, double lo, double hi);

/// Random connected leafless multigraph (random tree plus extra edges, loops
/// and parallels allowed) with dyadic weights and potentials. Deterministic
/// in the seed.
JacobiData random_base(std::uint64_t seed, const RandomBaseOptions& opt = {});

/// Random nonnegative unit vector.
Eigen::VectorXd random_nonneg_unit(int p, Rng& rng);

}  // namespace liftgap
