#include <doctest.h>

#include <array>
#include <cmath>
#include <set>

#include "liftgap/corpus.hpp"
#include "liftgap/lifting.hpp"

using namespace liftgap;

namespace {

JacobiData loop_base() {
  MultiGraph g = MultiGraph::create({"v"}, {{"e", "v", "v"}});
  return JacobiData::from_vectors(std::move(g), {1.0}, {0.0});
}

JacobiData two_vertex_two_edge() {
  MultiGraph g = MultiGraph::create({"u", "v"}, {{"e1", "u", "v"}, {"e2", "u", "v"}});
  return JacobiData::from_vectors(std::move(g), {1.0, 2.0}, {0.0, 0.0});
}

JacobiData theta_base() {
  MultiGraph g = MultiGraph::create(
      {"u", "v"}, {{"e1", "u", "v"}, {"e2", "u", "v"}, {"e3", "u", "v"}});
  return JacobiData::from_vectors(std::move(g), {1.0, 1.0, 1.0}, {0.0, 0.0});
}

std::vector<int> cyclic_shift(int n) {
  std::vector<int> s(n);
  for (int k = 0; k < n; ++k) s[k] = (k + 1) % n;
  return s;
}

// Integer characteristic polynomial evaluation for the 4x4 oracle: det(M - xI)
// for integer matrices via cofactor expansion.
long long det4(const std::array<std::array<long long, 4>, 4>& m) {
  auto det3 = [](long long a, long long b, long long c, long long d, long long e,
                 long long f, long long g, long long h, long long i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  };
  long long out = 0;
  for (int col = 0; col < 4; ++col) {
    std::array<long long, 9> sub{};
    int idx = 0;
    for (int rr = 1; rr < 4; ++rr)
      for (int cc = 0; cc < 4; ++cc) {
        if (cc == col) continue;
        sub[idx++] = m[rr][cc];
      }
    const long long minor = det3(sub[0], sub[1], sub[2], sub[3], sub[4], sub[5],
                                 sub[6], sub[7], sub[8]);
    out += ((col % 2 == 0) ? 1 : -1) * m[0][col] * minor;
  }
  return out;
}

// local isomorphism: the multiset of (incident weight, potential) at each
// lifted vertex matches its base vertex
bool covering_is_local_iso(const Cover& cover) {
  const MultiGraph& bg = cover.base.data.graph;
  const MultiGraph& lg = cover.lifted_graph;
  auto incident_multiset = [](const MultiGraph& g, const std::vector<double>& a,
                              int v) {
    std::multiset<double> m;
    for (const auto& [e, w] : g.adjacency()[v]) {
      (void)w;
      m.insert(a[e]);
    }
    return m;
  };
  for (int k = 0; k < cover.n; ++k) {
    for (int v = 0; v < cover.base.p; ++v) {
      const int lv = cover.lifted_index(k, v);
      if (cover.lifted.b[lv] != cover.base.data.b[v]) return false;
      if (incident_multiset(lg, cover.lifted.a, lv) !=
          incident_multiset(bg, cover.base.data.a, v))
        return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("lifting") {

TEST_CASE("loop lifted along a cyclic shift is the cycle adjacency") {
  const BlockForm form = default_block_form(loop_base());
  const Cover cover = lift_by_permutations(form, {cyclic_shift(8)});
  CHECK(cover.connected);
  const Eigen::MatrixXd& M = cover.lifted_matrix.mat();
  for (int i = 0; i < 8; ++i) {
    CHECK(M(i, i) == 0.0);
    CHECK(M(i, (i + 1) % 8) == 1.0);
    CHECK(M((i + 1) % 8, i) == 1.0);
  }
  CHECK(M.cwiseAbs().sum() == 16.0);
}

TEST_CASE("trivial cover reproduces the base matrix exactly") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const JacobiData data = random_base(seed);
    const BlockForm form = default_block_form(data);
    std::vector<std::vector<int>> ident(form.ell, std::vector<int>{0});
    const Cover cover = lift_by_permutations(form, ident);
    CHECK((cover.lifted_matrix.mat() - jacobi_matrix(data).mat())
              .cwiseAbs()
              .maxCoeff() == 0.0);
    // trivial-cover spectrum equals the base spectrum exactly
    const Spectrum a = eigenvalues_desc(cover.lifted_matrix);
    const Spectrum b = eigenvalues_desc(jacobi_matrix(data));
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("two-sheet swap of the 2-vertex block is the weighted 4-cycle") {
  const BlockForm form = default_block_form(two_vertex_two_edge());
  const Cover cover = lift_by_permutations(form, {{1, 0}});
  REQUIRE(cover.lifted_matrix.dim() == 4);

  // oracle: integer characteristic polynomial vanishes at +-3, +-1
  std::array<std::array<long long, 4>, 4> base{};
  const Eigen::MatrixXd& M = cover.lifted_matrix.mat();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) base[i][j] = static_cast<long long>(M(i, j));
  for (const long long x : {3LL, 1LL, -1LL, -3LL}) {
    auto shifted = base;
    for (int i = 0; i < 4; ++i) shifted[i][i] -= x;
    CHECK(det4(shifted) == 0);
  }
  const Spectrum s = eigenvalues_desc(cover.lifted_matrix);
  CHECK(s.values[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.values[2] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.values[3] == doctest::Approx(-3.0).epsilon(1e-12));

  // alternating weights 1, 2, 1, 2 around the 4-cycle
  std::multiset<double> offdiag;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (M(i, j) != 0.0) offdiag.insert(M(i, j));
  CHECK(offdiag == std::multiset<double>{1.0, 1.0, 2.0, 2.0});
}

TEST_CASE("random covers are deterministic in the seed") {
  const BlockForm form = default_block_form(theta_base());
  const Cover c1 = random_cover(form, 12, 99, true);
  const Cover c2 = random_cover(form, 12, 99, true);
  CHECK(c1.sigma == c2.sigma);
  const Cover c3 = random_cover(form, 1, 123, false);
  CHECK(c3.n == 1);
  CHECK(c3.sigma[0] == std::vector<int>{0});
}

TEST_CASE("loop-base connectivity matches the cycle structure of sigma") {
  const BlockForm form = default_block_form(loop_base());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const std::vector<int> sigma = rng.permutation(6);
    const Cover cover = lift_by_permutations(form, {sigma});
    // oracle: connected iff sigma is a single 6-cycle
    int len = 1, at = sigma[0];
    while (at != 0) {
      at = sigma[at];
      ++len;
    }
    CHECK(cover.connected == (len == 6));
  }
}

TEST_CASE("covering map is a local isomorphism") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const JacobiData data = random_base(seed);
    const BlockForm form = default_block_form(data);
    const Cover cover = random_cover(form, 7, seed * 31 + 1, false);
    CHECK(covering_is_local_iso(cover));
    // jacobi matrix of the lifted data equals the block assembly
    CHECK((jacobi_matrix(cover.lifted).mat() - cover.lifted_matrix.mat())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("lambda_1 of connected covers equals the base value") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const JacobiData data = random_base(seed);
    const BlockForm form = default_block_form(data);
    const Cover cover = random_cover(form, 9, seed + 5, true);
    const double l1_base = eigenvalues_desc(jacobi_matrix(data)).lambda1();
    CHECK(std::abs(cover.spectrum->lambda1() - l1_base) <= 1e-9);
  }
}

TEST_CASE("skeleton distances agree with Floyd-Warshall") {
  const BlockForm form = default_block_form(theta_base());
  const Cover cover = random_cover(form, 30, 17, true);
  const int n = cover.n;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, 1 << 20));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : cover.skeleton.edges) {
    d[e.from][e.to] = std::min(d[e.from][e.to], 1);
    d[e.to][e.from] = std::min(d[e.to][e.from], 1);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CHECK(skeleton_distance(cover, i, j) == d[i][j]);
      CHECK(d[i][j] == d[j][i]);
    }
  CHECK(skeleton_distance(cover, 3, 3) == 0);
}

TEST_CASE("antipodal sheets of the 8-cycle skeleton") {
  const BlockForm form = default_block_form(loop_base());
  const Cover cover = lift_by_permutations(form, {cyclic_shift(8)});
  CHECK(skeleton_distance(cover, 0, 4) == 4);
}

TEST_CASE("rebasing to another spanning choice preserves the spectrum") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const JacobiData data = random_base(seed);
    const BlockForm form = default_block_form(data);
    const Cover cover = random_cover(form, 6, seed * 7 + 3, true);
    for (const SpanningChoice& c : enumerate_spanning_choices(data.graph, 6)) {
      const Cover rebased = rebase_cover(cover, c);
      CHECK(rebased.connected == cover.connected);
      CHECK((rebased.spectrum->values - cover.spectrum->values)
                .cwiseAbs()
                .maxCoeff() <= 1e-9);
      CHECK(covering_is_local_iso(rebased));
    }
  }
}

TEST_CASE("tree ball shapes") {
  // d = 2: the ball is a path, |V_k| = 2 for all k
  const BlockForm line = default_block_form(loop_base());
  const TruncatedTree t2 = tree_ball(line, TreeCenter::edge(0), 3);
  CHECK(t2.sheet_count == 8);
  for (int k = 0; k <= 3; ++k) CHECK(t2.shell_sizes[k] == 2);

  // d = 4 around an edge: |V_1| = 6, |V_2| = 18
  const BlockForm theta = default_block_form(theta_base());
  REQUIRE(theta.d == 4);
  const TruncatedTree t4 = tree_ball(theta, TreeCenter::edge(0), 2);
  CHECK(t4.shell_sizes[0] == 2);
  CHECK(t4.shell_sizes[1] == 6);
  CHECK(t4.shell_sizes[2] == 18);

  // vertex-centered: |V_0| = 1, |V_k| = d (d-1)^{k-1}
  const TruncatedTree tv = tree_ball(theta, TreeCenter::vertex(), 3);
  CHECK(tv.shell_sizes[0] == 1);
  CHECK(tv.shell_sizes[1] == 4);
  CHECK(tv.shell_sizes[2] == 12);
  CHECK(tv.shell_sizes[3] == 36);

  // shell label recursion |V_{k,j}| = 2|V_{k-1}| - |V_{k-1,j}|
  for (int k = 1; k <= 2; ++k)
    for (int j = 0; j < theta.ell; ++j)
      CHECK(t4.shell_by_label[k][j] ==
            2 * t4.shell_sizes[k - 1] - t4.shell_by_label[k - 1][j]);
}

TEST_CASE("ball operator is symmetric and block-consistent") {
  const BlockForm theta = default_block_form(theta_base());
  const TruncatedTree t = tree_ball(theta, TreeCenter::edge(1), 2);
  const SymmetricMatrix dense = t.op.dense();  // from_dense validates symmetry
  // each sheet carries exactly B on its diagonal block
  for (int s = 0; s < t.sheet_count; ++s)
    for (int u = 0; u < theta.p; ++u)
      for (int v = 0; v < theta.p; ++v)
        CHECK(dense(s * theta.p + u, s * theta.p + v) == theta.B(u, v));
  // internal sheets have exactly d cross edges
  const Eigen::MatrixXd& m = dense.mat();
  for (int s = 0; s < t.sheet_count; ++s) {
    if (t.sheet_shell[s] == t.radius) continue;
    int cross = 0;
    for (int s2 = 0; s2 < t.sheet_count; ++s2) {
      if (s == s2) continue;
      bool linked = false;
      for (int u = 0; u < theta.p; ++u)
        for (int v = 0; v < theta.p; ++v)
          if (m(s * theta.p + u, s2 * theta.p + v) != 0.0) linked = true;
      if (linked) ++cross;
    }
    CHECK(cross == theta.d);
  }
}

TEST_CASE("permutation validation") {
  const BlockForm form = default_block_form(loop_base());
  CHECK_THROWS_AS(lift_by_permutations(form, {{0, 0}}), NotAPermutation);
  CHECK_THROWS_AS(lift_by_permutations(form, {}), NotAPermutation);
}

}  // TEST_SUITE
