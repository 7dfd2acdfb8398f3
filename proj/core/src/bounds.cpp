#include "liftgap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace liftgap {

std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                            : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

ShellTable shell_table(int d, int radius, int star_j) {
  if (d < 2 || d % 2 != 0) throw ValidationError("d must be even and >= 2");
  if (radius < 1) throw ValidationError("radius must be >= 1");
  const int ell = d / 2;
  if (star_j < 0 || star_j >= ell) throw ValidationError("star label out of range");

  ShellTable t;
  t.d = d;
  t.ell = ell;
  t.radius = radius;
  t.star_j = star_j;
  t.shell_sizes.assign(radius + 1, 0);
  t.by_label.assign(radius + 1, std::vector<int128>(ell, 0));
  t.d_beta.assign(ell, 4);
  t.d_beta[star_j] = 4 - 2 * d;

  t.shell_sizes[0] = 2;
  int128 pw = 1;
  for (int k = 1; k <= radius; ++k) {
    pw *= (d - 1);
    t.shell_sizes[k] = 2 * pw;
  }
  for (int j = 0; j < ell; ++j) t.by_label[0][j] = (j == star_j) ? 2 : 0;
  for (int k = 1; k <= radius; ++k)
    for (int j = 0; j < ell; ++j)
      t.by_label[k][j] = 2 * t.shell_sizes[k - 1] - t.by_label[k - 1][j];
  return t;
}

bool ShellTable::closed_form_matches() const {
  // V_{k,j} = (2/d)|V_k| + (-1)^{k+1} beta_j, scaled by d to stay integral:
  // d V_{k,j} = 2 |V_k| + (-1)^{k+1} (d beta_j).
  for (int k = 0; k <= radius; ++k) {
    for (int j = 0; j < ell; ++j) {
      const int128 lhs = static_cast<int128>(d) * by_label[k][j];
      const int128 sign = (k % 2 == 0) ? -1 : 1;  // (-1)^{k+1}
      const int128 rhs = 2 * shell_sizes[k] + sign * int128(d_beta[j]);
      if (lhs != rhs) return false;
    }
  }
  return true;
}

bool ShellTable::partition_holds() const {
  for (int k = 1; k <= radius; ++k) {
    int128 sum = 0;
    for (int j = 0; j < ell; ++j) sum += by_label[k][j];
    if (sum != shell_sizes[k]) return false;
  }
  return true;
}

void validate_direction(const Eigen::VectorXd& y, int p) {
  if (static_cast<int>(y.size()) != p)
    throw ValidationError("direction vector has wrong dimension");
  for (int i = 0; i < p; ++i)
    if (y[i] < 0.0) throw NegativeEntry("direction vector has a negative entry");
  if (std::abs(y.norm() - 1.0) > 1e-12)
    throw NotUnit("direction vector is not unit length");
}

double constant_Cj(const BlockForm& base, const Eigen::VectorXd& y, int j) {
  validate_direction(y, base.p);
  if (j < 0 || j >= base.ell) throw ValidationError("cut label out of range");
  const double ayd = base.A.quad(y) / base.d;
  const double aj = base.quad_Ai(j, y);
  return (2.0 * std::sqrt(base.d - 1.0) - 1.0) * ayd + std::abs(ayd - aj);
}

BoundReport ab_bound(const BlockForm& base, const Eigen::VectorXd& y, int j, int r) {
  validate_direction(y, base.p);
  if (j < 0 || j >= base.ell) throw ValidationError("cut label out of range");
  if (r < 1) throw ValidationError("radius must be >= 1");
  BoundReport rep;
  rep.By_y = base.B.quad(y);
  rep.Ay_y_over_d = base.A.quad(y) / base.d;
  rep.Cj = constant_Cj(base, y, j);
  rep.j = j;
  rep.r = r;
  rep.d = base.d;
  rep.y = y;
  rep.choice_key = base.choice.key(base.data.graph);
  rep.vacuous = base.A.quad(y) == 0.0;
  rep.value = rep.By_y + 2.0 * std::sqrt(base.d - 1.0) * rep.Ay_y_over_d -
              rep.Cj / static_cast<double>(r);
  return rep;
}

namespace {

// max over pairs of label-j skeleton edges of the min endpoint distance
Admissible scan_label(const Cover& cover, int j) {
  const Skeleton& sk = cover.skeleton;
  std::vector<int> edge_ids;
  for (int idx = 0; idx < static_cast<int>(sk.edges.size()); ++idx)
    if (sk.edges[idx].label == j) edge_ids.push_back(idx);

  // all-sources BFS once; skeletons stay small
  std::vector<std::vector<int>> dist(sk.n);
  for (int s = 0; s < sk.n; ++s) dist[s] = sk.distances_from(s);

  Admissible adm;
  int best = -1;
  for (std::size_t a = 0; a < edge_ids.size(); ++a) {
    for (std::size_t b = a + 1; b < edge_ids.size(); ++b) {
      const auto& e1 = sk.edges[edge_ids[a]];
      const auto& e2 = sk.edges[edge_ids[b]];
      int dmin = INT32_MAX;
      for (const int x : {e1.from, e1.to})
        for (const int y : {e2.from, e2.to}) {
          const int dxy = dist[x][y];
          if (dxy >= 0) dmin = std::min(dmin, dxy);
        }
      if (dmin == INT32_MAX) continue;  // different components
      if (dmin > best) {
        best = dmin;
        adm.witness = AdmissibleWitness{e1, e2, dmin};
      }
    }
  }
  if (best > 4) adm.r = (best - 3) / 2;  // largest r >= 1 with 2r + 2 < best
  if (adm.r == 0) adm.witness.reset();
  return adm;
}

}  // namespace

Admissible admissible_r(const Cover& cover, int j) {
  if (j < 0 || j >= cover.base.ell) throw ValidationError("cut label out of range");
  return scan_label(cover, j);
}

BestAdmissible best_admissible(const Cover& cover) {
  BestAdmissible best;
  for (int j = 0; j < cover.base.ell; ++j) {
    const Admissible adm = scan_label(cover, j);
    if (adm.r > best.r) {
      best.j = j;
      best.r = adm.r;
      best.witness = adm.witness;
    }
  }
  return best;
}

AbVerification verify_ab(const Cover& cover, const Eigen::VectorXd& y, int j,
                         int r, double slack) {
  const Admissible adm = admissible_r(cover, j);
  if (r < 1 || r > adm.r)
    throw NotAdmissible("no pair of label-" + std::to_string(j) +
                        " edges is far enough apart for r = " + std::to_string(r));
  if (!cover.spectrum)
    throw PreconditionError("cover spectrum unavailable (dimension too large)");

  AbVerification v;
  v.report = ab_bound(cover.base, y, j, r);
  v.report.witness = adm.witness;
  v.lambda2 = cover.spectrum->lambda2();
  v.margin = v.lambda2 - v.report.value;
  v.holds = v.margin >= -slack;
  return v;
}

GapBound gap_upper_bound(const BlockForm& base, const Eigen::VectorXd* y, int r,
                         int j, const Cover* check) {
  Eigen::VectorXd dir;
  if (y != nullptr) {
    dir = *y;
  } else {
    dir = perron_vector(jacobi_matrix(base.data));
  }
  GapBound g;
  g.components = ab_bound(base, dir, j, r);
  g.value = (base.d - 2.0 * std::sqrt(base.d - 1.0)) * g.components.Ay_y_over_d +
            g.components.Cj / static_cast<double>(r);
  if (check != nullptr && check->spectrum) {
    g.observed_gap = check->spectrum->lambda1() - check->spectrum->lambda2();
    g.holds = *g.observed_gap <= g.value + 1e-9;
  }
  return g;
}

TreeLowerBound tree_sup_lower_bound(const BlockForm& base, TreeBoundMode mode,
                                    std::size_t scan_limit) {
  auto closed_value = [](const BlockForm& f) {
    const SymmetricMatrix M =
        f.B.plus_scaled(f.A, 2.0 * std::sqrt(f.d - 1.0) / f.d);
    const Eigen::VectorXd psi = perron_vector(M);
    TreeLowerBound out;
    out.value = M.quad(psi);
    out.y = psi;
    out.choice = f.choice;
    return out;
  };
  if (mode == TreeBoundMode::closed) return closed_value(base);

  TreeLowerBound best;
  best.value = -std::numeric_limits<double>::infinity();
  for (const SpanningChoice& c :
       enumerate_spanning_choices(base.data.graph, scan_limit)) {
    const TreeLowerBound cand = closed_value(block_decomposition(base.data, c));
    if (cand.value > best.value) best = cand;
  }
  return best;
}

OracleResult test_vector_oracle(const BlockForm& base, const Eigen::VectorXd& y,
                                int j, int r) {
  validate_direction(y, base.p);
  if (j < 0 || j >= base.ell) throw ValidationError("cut label out of range");
  if (r < 1) throw ValidationError("radius must be >= 1");

  const int d = base.d;
  const double theta2 = 1.0 / (d - 1.0);  // (d-1)^{-1}
  const double theta = std::sqrt(theta2);

  std::vector<double> q(base.ell);
  for (int i = 0; i < base.ell; ++i) q[i] = base.quad_Ai(i, y);
  const double qstar = q[j];

  // <J_T x, x> aggregated over shells: the B part telescopes to <By,y>; the
  // center edge contributes 2 c_0^2 <A_* y, y>; each label-i edge from shell
  // k to k+1 contributes 2 c_k c_{k+1} <A_i y, y>, and there are
  // 2|V_k| - |V_{k,i}| of them. Shell fractions use the closed form
  // |V_{k,i}| (d-1)^{-k} = 4/d + (-1)^{k+1} beta_i (d-1)^{-k}.
  double rayleigh = base.B.quad(y);
  rayleigh += qstar / static_cast<double>(r);  // 2 c_0^2 = 1/r
  double sign = -1.0;                          // (-1)^{k+1} at k = 0
  double theta2k = 1.0;                        // (d-1)^{-k}
  for (int k = 0; k <= r - 2; ++k) {
    for (int i = 0; i < base.ell; ++i) {
      const double beta_i = (i == j) ? (4.0 / d - 2.0) : (4.0 / d);
      // (2|V_k| - |V_{k,i}|) (d-1)^{-k} = 4 - 4/d - (-1)^{k+1} beta_i (d-1)^{-k}
      const double edges_scaled = 4.0 - 4.0 / d - sign * beta_i * theta2k;
      rayleigh += edges_scaled * theta * q[i] / static_cast<double>(r);
    }
    sign = -sign;
    theta2k *= theta2;
  }

  OracleResult out;
  out.rayleigh = rayleigh;
  out.bound = ab_bound(base, y, j, r).value;
  out.slack = out.rayleigh - out.bound;
  return out;
}

OracleResult test_vector_oracle_on_ball(const BlockForm& base,
                                        const Eigen::VectorXd& y, int j, int r,
                                        std::size_t max_sheets) {
  validate_direction(y, base.p);
  const TruncatedTree ball = tree_ball(base, TreeCenter::edge(j), r, max_sheets);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ball.dim());
  const double c0 = 1.0 / std::sqrt(2.0 * r);
  const double theta = 1.0 / std::sqrt(base.d - 1.0);
  for (int s = 0; s < ball.sheet_count; ++s) {
    const int k = ball.sheet_shell[s];
    if (k >= r) continue;
    const double ck = c0 * std::pow(theta, k);
    for (int v = 0; v < base.p; ++v) x[s * base.p + v] = ck * y[v];
  }
  const double nrm = x.norm();
  if (std::abs(nrm - 1.0) > 1e-9)
    throw InternalCheckError("shell test vector is not unit norm");

  OracleResult out;
  out.rayleigh = ball.op.quad(x);
  out.bound = ab_bound(base, y, j, r).value;
  out.slack = out.rayleigh - out.bound;
  return out;
}

}  // namespace liftgap
