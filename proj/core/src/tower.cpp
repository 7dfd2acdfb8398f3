#include "liftgap/tower.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

namespace liftgap {

namespace {

Cover build_level(const BlockForm& base, int n, std::uint64_t level_seed,
                  TowerMode mode, const Cover* previous) {
  switch (mode) {
    case TowerMode::random:
      return random_cover(base, n, level_seed, /*require_connected=*/true);
    case TowerMode::iterated_two_lift: {
      if (previous == nullptr)
        return random_cover(base, n, level_seed, /*require_connected=*/true);
      if (n != 2 * previous->n)
        throw ValidationError("iterated-2-lift sizes must double per level");
      return two_lift(*previous, level_seed, /*require_connected=*/true);
    }
    case TowerMode::disjoint_union: {
      // n disjoint trivial copies: identity permutations on n sheets
      std::vector<std::vector<int>> sigma(base.ell, std::vector<int>(n));
      for (int i = 0; i < base.ell; ++i)
        for (int k = 0; k < n; ++k) sigma[i][k] = k;
      return lift_by_permutations(base, sigma);
    }
  }
  throw ValidationError("unknown tower mode");
}

}  // namespace

TowerReport run_tower(const BlockForm& base, const std::vector<int>& sizes,
                      std::uint64_t seed, TowerMode mode, int bins,
                      int moment_power, int jobs) {
  if (sizes.empty()) throw ValidationError("tower needs at least one level");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw ValidationError("tower sizes must be strictly increasing");
  if (bins < 2) throw ValidationError("need at least two bins");

  TowerReport rep;
  rep.mode = mode;
  rep.seed = seed;

  const Spectrum base_spec = eigenvalues_desc(jacobi_matrix(base.data));
  rep.lambda1_base = base_spec.lambda1();
  rep.tree_lower_bound = tree_sup_lower_bound(base).value;
  rep.tree_estimate = tree_sup_estimate(base, moment_power, /*extrapolate=*/true);
  rep.support_upper = rep.tree_estimate.limit_estimate;

  // inf sigma(J_T) = -sup sigma(-J_T); closed walks see only squared edge
  // weights, so reflecting the potential suffices
  {
    std::vector<double> neg_b(base.data.b.size());
    for (std::size_t i = 0; i < neg_b.size(); ++i) neg_b[i] = -base.data.b[i];
    const JacobiData reflected =
        JacobiData::from_vectors(base.data.graph, base.data.a, std::move(neg_b));
    const BlockForm rform = block_decomposition(reflected, base.choice);
    const TreeSupEstimate rest =
        tree_sup_estimate(rform, moment_power, /*extrapolate=*/true);
    rep.support_lower = -rest.limit_estimate;
  }

  std::vector<Cover> covers;
  covers.reserve(sizes.size());
  if (mode != TowerMode::iterated_two_lift && jobs > 1 && sizes.size() > 1) {
    std::vector<std::optional<Cover>> built(sizes.size());
    std::vector<std::exception_ptr> errors(sizes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= sizes.size()) return;
        try {
          built[i] = build_level(base, sizes[i],
                                 seed + static_cast<std::uint64_t>(i), mode,
                                 nullptr);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    const std::size_t nthreads =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), sizes.size());
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
      covers.push_back(std::move(*built[i]));
    }
  } else {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const Cover* prev = (i > 0 && mode == TowerMode::iterated_two_lift)
                              ? &covers.back()
                              : nullptr;
      covers.push_back(build_level(base, sizes[i],
                                   seed + static_cast<std::uint64_t>(i), mode,
                                   prev));
    }
  }

  // data-driven bin range: covers can spill below lambda_min(J_0) - 0.5
  double lo = base_spec.lambda_min() - 0.5;
  double hi = rep.lambda1_base + 0.5;
  for (const Cover& c : covers) {
    lo = std::min(lo, c.spectrum->lambda_min() - 0.5);
    hi = std::max(hi, c.spectrum->lambda1() + 0.5);
  }
  rep.bin_edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b)
    rep.bin_edges[b] = lo + (hi - lo) * static_cast<double>(b) / bins;

  for (const Cover& cover : covers) {
    TowerLevel lvl;
    lvl.n = cover.n;
    lvl.connected = cover.connected;
    const Spectrum& s = *cover.spectrum;
    lvl.lambda1 = s.lambda1();
    lvl.lambda_min = s.lambda_min();
    lvl.eigenvalues.assign(s.values.data(), s.values.data() + s.dim());
    if (s.dim() >= 2) lvl.lambda2 = s.lambda2();

    if (cover.connected && std::abs(lvl.lambda1 - rep.lambda1_base) > 1e-9)
      throw InternalCheckError("lambda_1 invariance violated at level n = " +
                               std::to_string(cover.n));

    lvl.histogram_mass.assign(bins, 0.0);
    const double w = 1.0 / static_cast<double>(s.dim());
    for (int i = 0; i < s.dim(); ++i) {
      const double x = s.values[i];
      int b = static_cast<int>((x - lo) / (hi - lo) * bins);
      b = std::clamp(b, 0, bins - 1);
      lvl.histogram_mass[b] += w;
    }

    if (lvl.lambda2) {
      lvl.margin_vs_tree = *lvl.lambda2 - rep.tree_lower_bound;
      const BestAdmissible adm = best_admissible(cover);
      if (adm.r >= 1) {
        lvl.best_j = adm.j;
        lvl.best_r = adm.r;
        const SymmetricMatrix M = cover.base.B.plus_scaled(
            cover.base.A, 2.0 * std::sqrt(cover.base.d - 1.0) / cover.base.d);
        const Eigen::VectorXd y = perron_vector(M);
        lvl.theorem_bound = ab_bound(cover.base, y, adm.j, adm.r).value;
        lvl.margin_vs_theorem = *lvl.lambda2 - *lvl.theorem_bound;
      }
    }
    rep.levels.push_back(std::move(lvl));
  }
  return rep;
}

std::vector<double> greenberg_margin(const TowerReport& report) {
  std::vector<double> out;
  out.reserve(report.levels.size());
  for (const TowerLevel& lvl : report.levels)
    out.push_back(lvl.margin_vs_tree ? *lvl.margin_vs_tree
                                     : -std::numeric_limits<double>::infinity());
  return out;
}

ConjectureStats conjecture_probe(const TowerReport& report, int bracket_bins) {
  if (report.levels.size() < 2)
    throw PreconditionError("conjecture probe needs at least two levels");
  for (const TowerLevel& lvl : report.levels)
    if (!lvl.connected)
      throw PreconditionError("conjecture probe applies to connected towers only");
  if (bracket_bins < 2) throw ValidationError("need at least two bracket bins");

  ConjectureStats st;
  st.bracket_lo = report.support_lower;
  st.bracket_hi = report.support_upper;
  const double width = (st.bracket_hi - st.bracket_lo) / bracket_bins;
  if (!(width > 0)) throw PreconditionError("degenerate support bracket");

  const std::size_t first_counted = report.levels.size() / 2;
  for (int b = 0; b < bracket_bins; ++b) {
    const double lo = st.bracket_lo + b * width;
    const double hi = lo + width;
    st.bin_lo.push_back(lo);
    st.bin_hi.push_back(hi);
    bool empty_everywhere = true;
    double final_mass = 0.0;
    for (std::size_t li = 0; li < report.levels.size(); ++li) {
      const TowerLevel& lvl = report.levels[li];
      int cnt = 0;
      for (const double x : lvl.eigenvalues)
        if (x >= lo && x < hi) ++cnt;
      const double mass = static_cast<double>(cnt) /
                          static_cast<double>(lvl.eigenvalues.size());
      if (li >= first_counted && cnt > 0) empty_everywhere = false;
      if (li + 1 == report.levels.size()) final_mass = mass;
    }
    st.mass_final.push_back(final_mass);
    st.persistent_zero.push_back(empty_everywhere);
  }
  return st;
}

}  // namespace liftgap
