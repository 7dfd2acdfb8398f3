#include <benchmark/benchmark.h>

#include "liftgap/corpus.hpp"
#include "liftgap/lifting.hpp"
#include "liftgap/spectra.hpp"

namespace {

using namespace liftgap;

JacobiData loop_base() {
  MultiGraph g = MultiGraph::create({"v"}, {{"e", "v", "v"}});
  return JacobiData::from_vectors(std::move(g), {1.0}, {0.0});
}

JacobiData theta_base() {
  MultiGraph g = MultiGraph::create(
      {"u", "v"}, {{"e1", "u", "v"}, {"e2", "u", "v"}, {"e3", "u", "v"}});
  return JacobiData::from_vectors(std::move(g), {1.0, 1.0, 1.0}, {0.0, 0.0});
}

void BM_Eigensolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BlockForm form = default_block_form(loop_base());
  const Cover cover = random_cover(form, n, 7, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalues_desc(cover.lifted_matrix));
  }
}
BENCHMARK(BM_Eigensolve)->Arg(64)->Arg(256)->Arg(512);

void BM_RandomCover(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BlockForm form = default_block_form(theta_base());
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_cover(form, n, seed++, false));
  }
}
BENCHMARK(BM_RandomCover)->Arg(64)->Arg(256);

void BM_TreeMoments(benchmark::State& state) {
  const int power = static_cast<int>(state.range(0));
  const JacobiData data = theta_base();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree_moment_sequence(data, 0, 4.0, power));
  }
}
BENCHMARK(BM_TreeMoments)->Arg(20)->Arg(40)->Arg(80);

void BM_EnumerateTrees(benchmark::State& state) {
  // complete graph on 5 vertices plus a parallel edge: 375 spanning trees
  std::vector<std::string> vids = {"a", "b", "c", "d", "e"};
  std::vector<EdgeSpec> edges;
  int id = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      edges.push_back({"e" + std::to_string(id++), vids[i], vids[j]});
  edges.push_back({"e" + std::to_string(id++), "a", "b"});
  const MultiGraph g = MultiGraph::create(vids, edges);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_spanning_choices(g, 10000));
  }
}
BENCHMARK(BM_EnumerateTrees);

}  // namespace

BENCHMARK_MAIN();
