#include "liftgap/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace liftgap {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ValidationError("malformed JSON input");
  return j;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json witness_to_json(const AdmissibleWitness& w) {
  return json{{"edge1", {{"from", w.edge1.from}, {"to", w.edge1.to}, {"label", w.edge1.label + 1}}},
              {"edge2", {{"from", w.edge2.from}, {"to", w.edge2.to}, {"label", w.edge2.label + 1}}},
              {"distance", w.distance}};
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << text;
}

JacobiData parse_graph_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") ||
      !j.contains("b"))
    throw ValidationError("graph file needs \"vertices\", \"edges\" and \"b\"");

  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_string()) throw ValidationError("vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<EdgeSpec> edges;
  std::map<std::string, double> a;
  for (const auto& e : j.at("edges")) {
    if (!e.contains("id") || !e.contains("u") || !e.contains("v") || !e.contains("a"))
      throw ValidationError("each edge needs \"id\", \"u\", \"v\", \"a\"");
    EdgeSpec spec{e.at("id").get<std::string>(), e.at("u").get<std::string>(),
                  e.at("v").get<std::string>()};
    if (!e.at("a").is_number())
      throw ValidationError("edge weight must be a number");
    a[spec.id] = e.at("a").get<double>();
    edges.push_back(std::move(spec));
  }
  std::map<std::string, double> b;
  for (const auto& [key, val] : j.at("b").items()) {
    if (!val.is_number()) throw ValidationError("potential must be a number");
    b[key] = val.get<double>();
  }
  MultiGraph g = MultiGraph::create(std::move(vertices), std::move(edges));
  return JacobiData::create(std::move(g), a, b);
}

JacobiData load_graph_file(const std::string& path) {
  return parse_graph_json(read_text_file(path));
}

std::string graph_to_json(const JacobiData& data) {
  const MultiGraph& g = data.graph;
  json j;
  j["vertices"] = g.vertex_ids();
  json edges = json::array();
  for (int e = 0; e < g.edge_count(); ++e)
    edges.push_back({{"id", g.edge_id(e)},
                     {"u", g.vertex_id(g.edge_u(e))},
                     {"v", g.vertex_id(g.edge_v(e))},
                     {"a", data.a[e]}});
  j["edges"] = std::move(edges);
  json b = json::object();
  for (int v = 0; v < g.vertex_count(); ++v) b[g.vertex_id(v)] = data.b[v];
  j["b"] = std::move(b);
  return j.dump(2);
}

CoverSpec parse_cover_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("n") || !j.contains("sigma"))
    throw ValidationError("cover file needs \"n\" and \"sigma\"");
  CoverSpec spec;
  spec.n = j.at("n").get<int>();
  for (const auto& perm : j.at("sigma")) {
    std::vector<int> s;
    for (const auto& img : perm) {
      const int x = img.get<int>();
      if (x < 1 || x > spec.n)
        throw NotAPermutation("permutation image out of 1.." + std::to_string(spec.n));
      s.push_back(x - 1);
    }
    spec.sigma.push_back(std::move(s));
  }
  return spec;
}

CoverSpec load_cover_file(const std::string& path) {
  return parse_cover_json(read_text_file(path));
}

std::string cover_spec_to_json(const Cover& cover) {
  json sigma = json::array();
  for (const auto& s : cover.sigma) {
    json perm = json::array();
    for (const int img : s) perm.push_back(img + 1);
    sigma.push_back(std::move(perm));
  }
  return json{{"n", cover.n}, {"sigma", std::move(sigma)}}.dump(2);
}

JacobiData parse_weights_json(const MultiGraph& graph, const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("a") || !j.contains("b"))
    throw ValidationError("weights file needs \"a\" and \"b\" maps");
  std::map<std::string, double> a, b;
  for (const auto& [key, val] : j.at("a").items()) a[key] = val.get<double>();
  for (const auto& [key, val] : j.at("b").items()) b[key] = val.get<double>();
  return JacobiData::create(graph, a, b);
}

JacobiData load_weights_file(const MultiGraph& graph, const std::string& path) {
  return parse_weights_json(graph, read_text_file(path));
}

std::string choice_to_json(const SpanningChoice& choice, const MultiGraph& g) {
  json tree = json::array();
  for (const int e : choice.tree_edges) tree.push_back(g.edge_id(e));
  json cut = json::array();
  for (std::size_t i = 0; i < choice.cut_edges.size(); ++i) {
    const auto [init, term] = choice.orientation[i];
    cut.push_back({{"id", g.edge_id(choice.cut_edges[i])},
                   {"from", g.vertex_id(init)},
                   {"to", g.vertex_id(term)}});
  }
  return json{{"tree", std::move(tree)}, {"cut", std::move(cut)}}.dump(2);
}

std::string block_form_to_json(const BlockForm& form) {
  json j;
  j["p"] = form.p;
  j["ell"] = form.ell;
  j["d"] = form.d;
  j["choice"] = json::parse(choice_to_json(form.choice, form.data.graph));
  j["B"] = matrix_to_json(form.B.mat());
  json alist = json::array();
  for (const auto& Ai : form.A_list) alist.push_back(matrix_to_json(Ai));
  j["A_list"] = std::move(alist);
  j["A"] = matrix_to_json(form.A.mat());
  return j.dump(2);
}

std::string spectrum_to_json(const Spectrum& s) {
  json j;
  j["eigenvalues"] = std::vector<double>(s.values.data(), s.values.data() + s.dim());
  j["residual_bound"] = s.residual_bound;
  return j.dump(2);
}

std::string cover_report_to_json(const Cover& cover) {
  json j;
  j["n"] = cover.n;
  j["sheets"] = cover.n;
  j["vertices"] = cover.base.p * cover.n;
  j["connected"] = cover.connected;
  j["skeleton_diameter"] = cover.connected ? cover.skeleton.diameter() : -1;
  j["sigma"] = json::parse(cover_spec_to_json(cover))["sigma"];
  if (cover.spectrum) {
    j["lambda1"] = cover.spectrum->lambda1();
    if (cover.spectrum->dim() >= 2) j["lambda2"] = cover.spectrum->lambda2();
  }
  return j.dump(2);
}

std::string bound_report_to_json(const BoundReport& rep,
                                 const AbVerification* verification) {
  json j;
  j["value"] = rep.value;
  j["components"] = {{"By_y", rep.By_y},
                     {"Ay_y_over_d", rep.Ay_y_over_d},
                     {"C_j", rep.Cj},
                     {"j", rep.j + 1},
                     {"r", rep.r},
                     {"d", rep.d}};
  j["y"] = vector_to_json(rep.y);
  j["choice"] = rep.choice_key;
  j["vacuous"] = rep.vacuous;
  if (rep.witness) j["admissibility"] = witness_to_json(*rep.witness);
  if (verification) {
    j["lambda2"] = verification->lambda2;
    j["margin"] = verification->margin;
    j["holds"] = verification->holds;
  }
  return j.dump(2);
}

std::string comparison_report_to_json(const ComparisonReport& rep) {
  json j;
  j["S"] = rep.S;
  j["I"] = rep.I;
  json table = json::array();
  for (std::size_t i = 0; i < rep.ks.size(); ++i) {
    json row = {{"k", rep.ks[i]},
                {"gap", rep.gap_J[i]},
                {"gap_tilde", rep.gap_Jt[i]},
                {"holds", static_cast<bool>(rep.holds[i])}};
    if (rep.proportionality_c)
      row["two_sided_holds"] = static_cast<bool>(rep.two_sided_holds[i]);
    table.push_back(std::move(row));
  }
  j["gaps"] = std::move(table);
  if (rep.proportionality_c) {
    j["proportionality_c"] = *rep.proportionality_c;
    j["ratio_min"] = rep.ratio_min;
    j["ratio_max"] = rep.ratio_max;
  }
  return j.dump(2);
}

std::string tower_report_to_json(const TowerReport& rep,
                                 const ConjectureStats* probe) {
  json j;
  switch (rep.mode) {
    case TowerMode::random: j["mode"] = "random"; break;
    case TowerMode::iterated_two_lift: j["mode"] = "iterated-2-lift"; break;
    case TowerMode::disjoint_union: j["mode"] = "disjoint-union"; break;
  }
  j["seed"] = rep.seed;
  j["lambda1_base"] = rep.lambda1_base;
  j["tree_lower_bound"] = rep.tree_lower_bound;
  j["tree_moment_estimate"] = rep.tree_estimate.limit_estimate;
  j["support_bracket"] = {rep.support_lower, rep.support_upper};
  j["bin_edges"] = rep.bin_edges;
  json levels = json::array();
  for (const TowerLevel& lvl : rep.levels) {
    json L;
    L["n"] = lvl.n;
    L["connected"] = lvl.connected;
    L["lambda1"] = lvl.lambda1;
    if (lvl.lambda2) L["lambda2"] = *lvl.lambda2;
    L["lambda_min"] = lvl.lambda_min;
    L["histogram_mass"] = lvl.histogram_mass;
    if (lvl.margin_vs_tree) L["margin_vs_tree"] = *lvl.margin_vs_tree;
    if (lvl.best_j) L["admissible_j"] = *lvl.best_j + 1;
    if (lvl.best_r) L["admissible_r"] = *lvl.best_r;
    if (lvl.theorem_bound) L["theorem_bound"] = *lvl.theorem_bound;
    if (lvl.margin_vs_theorem) L["margin_vs_theorem"] = *lvl.margin_vs_theorem;
    levels.push_back(std::move(L));
  }
  j["levels"] = std::move(levels);
  if (probe) {
    json bins = json::array();
    for (std::size_t i = 0; i < probe->bin_lo.size(); ++i)
      bins.push_back({{"lo", probe->bin_lo[i]},
                      {"hi", probe->bin_hi[i]},
                      {"mass", probe->mass_final[i]},
                      {"persistent_zero", static_cast<bool>(probe->persistent_zero[i])}});
    j["conjecture_probe"] = {{"bracket", {probe->bracket_lo, probe->bracket_hi}},
                             {"bins", std::move(bins)}};
  }
  return j.dump(2);
}

std::string tower_histograms_to_csv(const TowerReport& rep) {
  std::ostringstream out;
  out << "n,bin_lo,bin_hi,mass\n";
  for (const TowerLevel& lvl : rep.levels)
    for (std::size_t b = 0; b + 1 < rep.bin_edges.size(); ++b)
      out << lvl.n << "," << rep.bin_edges[b] << "," << rep.bin_edges[b + 1] << ","
          << lvl.histogram_mass[b] << "\n";
  return out.str();
}

}  // namespace liftgap
