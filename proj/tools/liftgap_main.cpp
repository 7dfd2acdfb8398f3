// liftgap: Jacobi matrices on multigraphs, permutation lifts, and
// eigenvalue-gap bounds. Subcommands: decompose, lift, spectrum, bound,
// compare, tower.
//
// Reports go to stdout (or --out) as JSON; a human-readable summary goes to
// stderr. Exit codes: 0 success, 2 input error, 3 precondition unmet,
// 4 internal verification failure.

#include <chrono>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "liftgap/corpus.hpp"
#include "liftgap/io.hpp"

namespace {

using namespace liftgap;

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// All reports carry a timestamp field; comparisons of reports must exclude it.
std::string stamp(const std::string& report_json) {
  nlohmann::json j = nlohmann::json::parse(report_json);
  j["generated_at"] = timestamp_now();
  return j.dump(2);
}

void emit(const std::string& report_json, const std::string& out_path) {
  const std::string stamped = stamp(report_json);
  if (out_path.empty())
    std::cout << stamped << "\n";
  else
    write_text_file(out_path, stamped + "\n");
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<std::string> parse_id_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct CommonOpts {
  std::string out_path;
  double eig_tol = 1e-10;
  double bound_slack = 1e-9;
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--out", opts.out_path, "Write the JSON report to a file");
  cmd->add_option("--eig-tol", opts.eig_tol, "Eigensolver residual tolerance");
  cmd->add_option("--bound-slack", opts.bound_slack,
                  "Slack for inequality checks");
  cmd->add_option("--jobs", opts.jobs, "Worker threads for sweeps");
}

Eigen::VectorXd direction_for(const std::string& spec, const BlockForm& form) {
  if (spec == "perron") {
    const SymmetricMatrix M =
        form.B.plus_scaled(form.A, 2.0 * std::sqrt(form.d - 1.0) / form.d);
    return perron_vector(M);
  }
  if (spec == "uniform") {
    return Eigen::VectorXd::Constant(form.p, 1.0 / std::sqrt(double(form.p)));
  }
  // otherwise: a file holding a JSON array
  const nlohmann::json j = nlohmann::json::parse(read_text_file(spec));
  if (!j.is_array() || static_cast<int>(j.size()) != form.p)
    throw ValidationError("direction file must hold an array of length p");
  Eigen::VectorXd y(form.p);
  for (int i = 0; i < form.p; ++i) y[i] = j[i].get<double>();
  for (int i = 0; i < form.p; ++i)
    if (y[i] < 0) throw NegativeEntry("direction file has a negative entry");
  const double n = y.norm();
  if (!(n > 0)) throw ValidationError("direction file is the zero vector");
  return y / n;
}

int run_decompose(const std::string& graph_path, const std::string& tree_csv,
                  int enumerate_limit, const CommonOpts& opts) {
  const JacobiData data = load_graph_file(graph_path);
  if (enumerate_limit > 0) {
    const auto choices =
        enumerate_spanning_choices(data.graph, static_cast<std::size_t>(enumerate_limit));
    nlohmann::json j;
    j["count"] = choices.size();
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : choices)
      list.push_back(nlohmann::json::parse(choice_to_json(c, data.graph)));
    j["choices"] = std::move(list);
    emit(j.dump(2), opts.out_path);
    std::cerr << "spanning choices: " << choices.size() << "\n";
    return 0;
  }
  const SpanningChoice choice =
      tree_csv.empty() ? choose_spanning_tree(data.graph)
                       : choose_spanning_tree(data.graph, parse_id_list(tree_csv));
  const BlockForm form = block_decomposition(data, choice);
  emit(block_form_to_json(form), opts.out_path);
  std::cerr << "p = " << form.p << ", ell = " << form.ell << ", d = " << form.d
            << ", choice " << choice.key(data.graph) << "\n";
  return 0;
}

Cover cover_from_flags(const BlockForm& form, const std::string& cover_path,
                       int random_n, std::uint64_t seed, bool has_seed,
                       bool require_connected) {
  if (!cover_path.empty()) {
    const CoverSpec spec = load_cover_file(cover_path);
    return lift_by_permutations(form, spec.sigma);
  }
  if (random_n <= 0)
    throw ValidationError("provide either a cover file or --random N");
  if (!has_seed)
    throw ValidationError("randomized commands require --seed");
  return random_cover(form, random_n, seed, require_connected);
}

int run_lift(const std::string& graph_path, const std::string& cover_path,
             int random_n, std::uint64_t seed, bool has_seed,
             bool require_connected, const CommonOpts& opts) {
  const JacobiData data = load_graph_file(graph_path);
  const BlockForm form = default_block_form(data);
  const Cover cover = cover_from_flags(form, cover_path, random_n, seed, has_seed,
                                       require_connected);
  emit(cover_report_to_json(cover), opts.out_path);
  std::cerr << "sheets = " << cover.n << ", connected = " << cover.connected
            << ", skeleton diameter = "
            << (cover.connected ? cover.skeleton.diameter() : -1) << "\n";
  return 0;
}

int run_spectrum(const std::string& graph_path, const std::string& cover_path,
                 int random_n, std::uint64_t seed, bool has_seed,
                 const CommonOpts& opts) {
  const JacobiData data = load_graph_file(graph_path);
  Spectrum s;
  if (cover_path.empty() && random_n <= 0) {
    s = eigenvalues_desc(jacobi_matrix(data), opts.eig_tol);
  } else {
    const BlockForm form = default_block_form(data);
    const Cover cover =
        cover_from_flags(form, cover_path, random_n, seed, has_seed, true);
    s = eigenvalues_desc(cover.lifted_matrix, opts.eig_tol);
  }
  emit(spectrum_to_json(s), opts.out_path);
  std::cerr << "dim = " << s.dim() << ", lambda1 = " << s.lambda1()
            << ", residual <= " << s.residual_bound << "\n";
  return 0;
}

int run_bound(const std::string& graph_path, const std::string& cover_path,
              int random_n, std::uint64_t seed, bool has_seed,
              const std::string& tree_csv, int r_flag, int j_flag,
              const std::string& y_spec, const CommonOpts& opts) {
  const JacobiData data = load_graph_file(graph_path);
  const SpanningChoice choice =
      tree_csv.empty() ? choose_spanning_tree(data.graph)
                       : choose_spanning_tree(data.graph, parse_id_list(tree_csv));
  const BlockForm form = block_decomposition(data, choice);
  const Cover cover =
      cover_from_flags(form, cover_path, random_n, seed, has_seed, true);

  int j = j_flag - 1;  // flags are 1-based like the report
  int r = r_flag;
  if (j < 0) {
    const BestAdmissible best = best_admissible(cover);
    if (best.r < 1) throw NotAdmissible("no admissible (j, r) pair for this cover");
    j = best.j;
    if (r < 1) r = best.r;
  } else if (r < 1) {
    const Admissible adm = admissible_r(cover, j);
    if (adm.r < 1)
      throw NotAdmissible("no admissible r for label j = " + std::to_string(j + 1));
    r = adm.r;
  }

  const Eigen::VectorXd y = direction_for(y_spec, form);
  const AbVerification v = verify_ab(cover, y, j, r, opts.bound_slack);
  emit(bound_report_to_json(v.report, &v), opts.out_path);
  std::cerr << "j    r    bound        lambda2      margin\n"
            << v.report.j + 1 << "    " << v.report.r << "    " << v.report.value
            << "    " << v.lambda2 << "    " << v.margin << "\n";
  if (!v.holds) {
    std::cerr << "bound violated beyond slack; this indicates a bug\n";
    return 4;
  }
  return 0;
}

int run_compare(const std::string& graph_path, const std::string& weights_a,
                const std::string& weights_b, const std::string& k_range,
                const CommonOpts& opts) {
  const JacobiData base = load_graph_file(graph_path);
  const JacobiData J = load_weights_file(base.graph, weights_a);
  const JacobiData Jt = load_weights_file(base.graph, weights_b);
  int k_lo = 1, k_hi = base.graph.vertex_count();
  if (!k_range.empty()) {
    const auto sep = k_range.find(':');
    if (sep == std::string::npos)
      throw ValidationError("--k-range expects LO:HI");
    k_lo = std::stoi(k_range.substr(0, sep));
    k_hi = std::stoi(k_range.substr(sep + 1));
  }
  const ComparisonReport rep = verify_comparison(J, Jt, k_lo, k_hi, opts.bound_slack);
  emit(comparison_report_to_json(rep), opts.out_path);
  std::cerr << "S = " << rep.S << ", I = " << rep.I << "\n";
  bool all = true;
  for (const bool h : rep.holds) all = all && h;
  if (!all) {
    std::cerr << "comparison bound violated; this indicates a bug\n";
    return 4;
  }
  return 0;
}

int run_tower_cmd(const std::string& graph_path, const std::string& sizes_csv,
                  std::uint64_t seed, bool has_seed, const std::string& mode_name,
                  bool probe, int bins, const std::string& csv_path,
                  const CommonOpts& opts) {
  if (!has_seed) throw ValidationError("tower requires --seed");
  const JacobiData data = load_graph_file(graph_path);
  const BlockForm form = default_block_form(data);
  const std::vector<int> sizes = parse_int_list(sizes_csv);

  TowerMode mode = TowerMode::random;
  if (mode_name == "iterated-2-lift") mode = TowerMode::iterated_two_lift;
  else if (mode_name == "disjoint-union") mode = TowerMode::disjoint_union;
  else if (mode_name != "random") throw ValidationError("unknown tower mode");

  const TowerReport rep =
      run_tower(form, sizes, seed, mode, bins, /*moment_power=*/40, opts.jobs);
  std::optional<ConjectureStats> stats;
  if (probe) stats = conjecture_probe(rep, bins);
  emit(tower_report_to_json(rep, stats ? &*stats : nullptr), opts.out_path);
  if (!csv_path.empty()) write_text_file(csv_path, tower_histograms_to_csv(rep));
  std::cerr << "levels: " << rep.levels.size()
            << ", tree bound = " << rep.tree_lower_bound
            << ", moment estimate = " << rep.tree_estimate.limit_estimate << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi matrices on multigraphs: lifts and eigenvalue-gap bounds"};
  app.require_subcommand(1);

  CommonOpts opts;

  // decompose
  auto* cmd_decompose = app.add_subcommand("decompose", "Lego-block form of a graph");
  std::string graph_path, tree_csv;
  bool do_enumerate = false;
  int enumerate_limit = 10000;
  cmd_decompose->add_option("graph", graph_path, "Graph JSON file")->required();
  cmd_decompose->add_option("--tree", tree_csv, "Explicit tree edge ids (csv)");
  cmd_decompose->add_flag("--enumerate", do_enumerate, "List all spanning choices");
  cmd_decompose->add_option("--scan-trees", enumerate_limit,
                            "Cap for spanning-tree enumeration");
  add_common(cmd_decompose, opts);

  // lift
  auto* cmd_lift = app.add_subcommand("lift", "Build a finite cover");
  std::string lift_cover;
  int lift_random_n = 0;
  std::uint64_t seed = 0;
  bool require_connected = false;
  cmd_lift->add_option("graph", graph_path, "Graph JSON file")->required();
  cmd_lift->add_option("--cover", lift_cover, "Cover spec JSON file");
  cmd_lift->add_option("--random", lift_random_n, "Random cover with N sheets");
  auto* lift_seed = cmd_lift->add_option("--seed", seed, "RNG seed");
  cmd_lift->add_flag("--require-connected", require_connected,
                     "Resample until the lift is connected");
  add_common(cmd_lift, opts);

  // spectrum
  auto* cmd_spectrum = app.add_subcommand("spectrum", "Eigenvalues of J or a lift");
  std::string spec_cover;
  int spec_random_n = 0;
  cmd_spectrum->add_option("graph", graph_path, "Graph JSON file")->required();
  cmd_spectrum->add_option("--cover", spec_cover, "Cover spec JSON file");
  cmd_spectrum->add_option("--random", spec_random_n, "Random cover with N sheets");
  auto* spec_seed = cmd_spectrum->add_option("--seed", seed, "RNG seed");
  add_common(cmd_spectrum, opts);

  // bound
  auto* cmd_bound = app.add_subcommand("bound", "Evaluate and verify the lower bound");
  std::string bound_cover, y_spec = "perron";
  int bound_random_n = 0, r_flag = 0, j_flag = 0;
  cmd_bound->add_option("graph", graph_path, "Graph JSON file")->required();
  cmd_bound->add_option("--cover", bound_cover, "Cover spec JSON file");
  cmd_bound->add_option("--random", bound_random_n, "Random cover with N sheets");
  auto* bound_seed = cmd_bound->add_option("--seed", seed, "RNG seed");
  cmd_bound->add_option("--tree", tree_csv, "Explicit tree edge ids (csv)");
  cmd_bound->add_option("--r", r_flag, "Radius (defaults to the best admissible)")
      ->default_val(0);
  cmd_bound->add_option("--j", j_flag, "Cut-edge label, 1-based");
  cmd_bound->add_option("--y", y_spec, "perron | uniform | path to JSON array");
  add_common(cmd_bound, opts);

  // compare
  auto* cmd_compare = app.add_subcommand("compare", "Gap comparison of two Jacobi matrices");
  std::string weights_a, weights_b, k_range;
  cmd_compare->add_option("graph", graph_path, "Graph JSON file")->required();
  cmd_compare->add_option("weightsA", weights_a, "First weights file")->required();
  cmd_compare->add_option("weightsB", weights_b, "Second weights file")->required();
  cmd_compare->add_option("--k-range", k_range, "k range LO:HI");
  add_common(cmd_compare, opts);

  // tower
  auto* cmd_tower = app.add_subcommand("tower", "Towers of covers");
  std::string sizes_csv, mode_name = "random", csv_path;
  bool probe = false;
  int bins = 40;
  cmd_tower->add_option("graph", graph_path, "Graph JSON file")->required();
  cmd_tower->add_option("--sizes", sizes_csv, "Increasing sheet counts (csv)")
      ->required();
  auto* tower_seed = cmd_tower->add_option("--seed", seed, "RNG seed");
  cmd_tower->add_option("--mode", mode_name,
                        "random | iterated-2-lift | disjoint-union");
  cmd_tower->add_flag("--probe-conjecture", probe,
                      "Report support-coverage statistics");
  cmd_tower->add_option("--bins", bins, "Histogram bins");
  cmd_tower->add_option("--csv", csv_path, "Optional per-level histogram CSV");
  add_common(cmd_tower, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_decompose)
      return run_decompose(graph_path, tree_csv,
                           do_enumerate ? enumerate_limit : 0, opts);
    if (*cmd_lift)
      return run_lift(graph_path, lift_cover, lift_random_n, seed,
                      !lift_seed->empty(), require_connected, opts);
    if (*cmd_spectrum)
      return run_spectrum(graph_path, spec_cover, spec_random_n, seed,
                          !spec_seed->empty(), opts);
    if (*cmd_bound)
      return run_bound(graph_path, bound_cover, bound_random_n, seed,
                       !bound_seed->empty(), tree_csv, r_flag, j_flag, y_spec,
                       opts);
    if (*cmd_compare)
      return run_compare(graph_path, weights_a, weights_b, k_range, opts);
    if (*cmd_tower)
      return run_tower_cmd(graph_path, sizes_csv, seed, !tower_seed->empty(),
                           mode_name, probe, bins, csv_path, opts);
  } catch (const ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition unmet: " << e.what() << "\n";
    return 3;
  } catch (const InternalCheckError& e) {
    std::cerr << "internal verification failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
