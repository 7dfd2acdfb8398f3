#include "liftgap/corpus.hpp"

#include <cmath>

namespace liftgap {

double dyadic_uniform(Rng& rng, double lo, double hi) {
  const double grid = 1048576.0;  // 2^20
  const auto klo = static_cast<long long>(std::ceil(lo * grid));
  const auto khi = static_cast<long long>(std::floor(hi * grid));
  const long long k =
      klo + static_cast<long long>(rng.below(static_cast<std::uint64_t>(khi - klo + 1)));
  return static_cast<double>(k) / grid;
}

JacobiData random_base(std::uint64_t seed, const RandomBaseOptions& opt) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const int p = rng.uniform_int(1, opt.max_vertices);
    const int ell = rng.uniform_int(1, opt.max_betti);

    std::vector<std::pair<int, int>> ends;
    // random attachment tree
    for (int v = 1; v < p; ++v) ends.emplace_back(rng.uniform_int(0, v - 1), v);
    // ell extra edges; loops and parallels allowed
    for (int i = 0; i < ell; ++i)
      ends.emplace_back(rng.uniform_int(0, p - 1), rng.uniform_int(0, p - 1));

    // leafless check before constructing
    std::vector<int> deg(p, 0);
    for (const auto& [u, v] : ends) {
      deg[u] += 1;
      deg[v] += 1;
    }
    bool ok = true;
    for (const int d : deg)
      if (d < 2) ok = false;
    if (!ok) continue;

    std::vector<std::string> vids;
    for (int v = 0; v < p; ++v) vids.push_back("v" + std::to_string(v));
    std::vector<EdgeSpec> edges;
    for (std::size_t e = 0; e < ends.size(); ++e)
      edges.push_back({"e" + std::to_string(e), vids[ends[e].first],
                       vids[ends[e].second]});

    std::vector<double> a, b;
    for (std::size_t e = 0; e < edges.size(); ++e)
      a.push_back(dyadic_uniform(rng, opt.a_lo, opt.a_hi));
    for (int v = 0; v < p; ++v) b.push_back(dyadic_uniform(rng, opt.b_lo, opt.b_hi));

    MultiGraph g = MultiGraph::create(std::move(vids), std::move(edges));
    return JacobiData::from_vectors(std::move(g), std::move(a), std::move(b));
  }
  throw InternalCheckError("random base sampling failed to produce a leafless graph");
}

Eigen::VectorXd random_nonneg_unit(int p, Rng& rng) {
  Eigen::VectorXd y(p);
  double norm2 = 0.0;
  while (norm2 == 0.0) {
    for (int i = 0; i < p; ++i) y[i] = rng.unit();
    norm2 = y.squaredNorm();
  }
  return y / std::sqrt(norm2);
}

}  // namespace liftgap
