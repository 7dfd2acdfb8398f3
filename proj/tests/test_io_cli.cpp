#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "liftgap/io.hpp"
#include "liftgap/lifting.hpp"

using namespace liftgap;
using nlohmann::json;

namespace {

const std::string kData = LIFTGAP_TEST_DATA;
const std::string kCli = LIFTGAP_CLI_PATH;

struct RunResult {
  int code = -1;
  std::string out;
};

// run the CLI, capture stdout, return the exit code
RunResult run_cli(const std::string& args) {
  const std::string out_file = std::string(std::tmpnam(nullptr)) + ".out";
  const std::string cmd = kCli + " " + args + " > " + out_file + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WEXITSTATUS(raw);
  std::ifstream in(out_file);
  r.out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  std::remove(out_file.c_str());
  return r;
}

json drop_timestamp(const std::string& text) {
  json j = json::parse(text);
  j.erase("generated_at");
  return j;
}

}  // namespace

TEST_SUITE("io_cli") {

TEST_CASE("graph files round-trip") {
  const JacobiData d = load_graph_file(kData + "/pair12.json");
  CHECK(d.graph.vertex_count() == 2);
  CHECK(d.graph.edge_count() == 2);
  CHECK(d.a[1] == 2.0);
  const JacobiData round = parse_graph_json(graph_to_json(d));
  CHECK(round.graph.same_structure(d.graph));
  CHECK(round.a == d.a);
  CHECK(round.b == d.b);
}

TEST_CASE("graph file validation") {
  CHECK_THROWS_AS(parse_graph_json("{"), ValidationError);
  CHECK_THROWS_AS(parse_graph_json("{\"vertices\": [\"v\"]}"), ValidationError);
  CHECK_THROWS_AS(load_graph_file(kData + "/path_leaf.json"), LeafVertex);
  // potentials must cover every vertex
  CHECK_THROWS_AS(
      parse_graph_json(R"({"vertices": ["u","v"],
        "edges": [{"id":"e1","u":"u","v":"v","a":1.0},
                  {"id":"e2","u":"u","v":"v","a":1.0}],
        "b": {"u": 0.0}})"),
      ValidationError);
}

TEST_CASE("cover specs parse 1-based permutations") {
  const CoverSpec spec = load_cover_file(kData + "/cover_swap.json");
  CHECK(spec.n == 2);
  REQUIRE(spec.sigma.size() == 1);
  CHECK(spec.sigma[0] == std::vector<int>{1, 0});
  CHECK_THROWS_AS(parse_cover_json("{\"n\": 2, \"sigma\": [[0, 1]]}"),
                  NotAPermutation);
}

TEST_CASE("weights files replace weights on a fixed graph") {
  const JacobiData base = load_graph_file(kData + "/pair12.json");
  const JacobiData doubled =
      load_weights_file(base.graph, kData + "/weights_pair_double.json");
  CHECK(doubled.a == std::vector<double>{2.0, 4.0});
}

TEST_CASE("cli: decompose") {
  const RunResult r = run_cli("decompose " + kData + "/loop.json");
  CHECK(r.code == 0);
  const json j = drop_timestamp(r.out);
  CHECK(j.at("ell") == 1);
  CHECK(j.at("d") == 2);

  const RunResult en = run_cli("decompose " + kData + "/triangle.json --enumerate");
  CHECK(en.code == 0);
  CHECK(drop_timestamp(en.out).at("count") == 3);

  const RunResult bad =
      run_cli("decompose " + kData + "/triangle.json --tree e1,e1");
  CHECK(bad.code == 2);
}

TEST_CASE("cli: lift and spectrum") {
  const RunResult r =
      run_cli("lift " + kData + "/pair12.json --cover " + kData + "/cover_swap.json");
  CHECK(r.code == 0);
  const json j = drop_timestamp(r.out);
  CHECK(j.at("n") == 2);
  CHECK(j.at("connected") == true);

  const RunResult s = run_cli("spectrum " + kData + "/pair12.json");
  CHECK(s.code == 0);
  const json js = drop_timestamp(s.out);
  CHECK(js.at("eigenvalues")[0].get<double>() == doctest::Approx(3.0));

  // randomized commands require a seed
  const RunResult noseed = run_cli("lift " + kData + "/loop.json --random 8");
  CHECK(noseed.code == 2);
}

TEST_CASE("cli: bound passes on a large cycle and refuses small covers") {
  const RunResult ok =
      run_cli("bound " + kData + "/loop.json --random 32 --seed 12");
  CHECK(ok.code == 0);
  const json j = drop_timestamp(ok.out);
  CHECK(j.at("holds") == true);
  CHECK(j.at("margin").get<double>() > 0.0);

  // n = 2 has no admissible radius: precondition exit
  const RunResult small =
      run_cli("bound " + kData + "/loop.json --random 2 --seed 5");
  CHECK(small.code == 3);

  // a direction file with a negative entry is an input error
  const RunResult bady = run_cli("bound " + kData + "/pair12.json --random 24 --seed 9 --y " +
                                 kData + "/y_negative.json");
  CHECK(bady.code == 2);
}

TEST_CASE("cli: compare") {
  const RunResult same = run_cli("compare " + kData + "/pair12.json " + kData +
                                 "/weights_pair_same.json " + kData +
                                 "/weights_pair_same.json");
  CHECK(same.code == 0);
  const json j = drop_timestamp(same.out);
  CHECK(j.at("S").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("I").get<double>() == doctest::Approx(1.0));

  const RunResult doubled = run_cli("compare " + kData + "/pair12.json " + kData +
                                    "/weights_pair_same.json " + kData +
                                    "/weights_pair_double.json");
  CHECK(doubled.code == 0);
  const json jd = drop_timestamp(doubled.out);
  CHECK(jd.at("S").get<double>() == doctest::Approx(0.5));
  CHECK(jd.contains("proportionality_c"));
}

TEST_CASE("cli: tower requires a seed and produces level reports") {
  const RunResult noseed =
      run_cli("tower " + kData + "/loop.json --sizes 8,16");
  CHECK(noseed.code == 2);

  const RunResult r =
      run_cli("tower " + kData + "/loop.json --sizes 8,16 --seed 4");
  CHECK(r.code == 0);
  const json j = drop_timestamp(r.out);
  CHECK(j.at("levels").size() == 2);

  // single-level tower refuses the conjecture probe
  const RunResult single = run_cli(
      "tower " + kData + "/loop.json --sizes 4 --seed 4 --probe-conjecture");
  CHECK(single.code == 3);
}

TEST_CASE("cli: identical seeds give byte-identical reports modulo timestamp") {
  const RunResult a =
      run_cli("tower " + kData + "/pair12.json --sizes 4,8 --seed 77");
  const RunResult b =
      run_cli("tower " + kData + "/pair12.json --sizes 4,8 --seed 77");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(drop_timestamp(a.out).dump() == drop_timestamp(b.out).dump());
  const RunResult c =
      run_cli("tower " + kData + "/pair12.json --sizes 4,8 --seed 78");
  CHECK(drop_timestamp(a.out).dump() != drop_timestamp(c.out).dump());
}

TEST_CASE("spanning choice serialization names ids and orientation") {
  const JacobiData d = load_graph_file(kData + "/triangle.json");
  const SpanningChoice choice = choose_spanning_tree(d.graph, {"e1", "e2"});
  const json j = json::parse(choice_to_json(choice, d.graph));
  CHECK(j.at("tree").size() == 2);
  CHECK(j.at("cut")[0].at("id") == "e3");
  CHECK(j.at("cut")[0].at("from") == "x");
  CHECK(j.at("cut")[0].at("to") == "z");
}

}  // TEST_SUITE
