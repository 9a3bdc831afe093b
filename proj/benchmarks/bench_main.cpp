#include <benchmark/benchmark.h>

#include <random>

#include "margulis/certnum.hpp"
#include "margulis/coset_tree.hpp"
#include "margulis/growth.hpp"
#include "margulis/gtree.hpp"
#include "margulis/hyp3.hpp"
#include "margulis/margulis.hpp"
#include "margulis/pipelines.hpp"

using namespace margulis;
using hyp3::Isometry;

namespace {

std::vector<Isometry> schottky() {
  const Isometry x = Isometry::diagonal(4.0);
  const Isometry h(1.0, 1.0, 1.0, 2.0);
  return {x, h * x * h.inverse()};
}

void BM_Displacement(benchmark::State& state) {
  const Isometry g = Isometry::translation(0.7, 0.4) * Isometry(1.0, 0.3, 0.0, 1.0);
  const hyp3::PointH3 p(0.2, -0.1, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(hyp3::displacement(g, p));
}
BENCHMARK(BM_Displacement);

void BM_VerifyConstants(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certnum::verify_constants());
}
BENCHMARK(BM_VerifyConstants)->Unit(benchmark::kMillisecond);

void BM_Pipeline286(benchmark::State& state) {
  const auto nu = certnum::Interval::decimal("0.286");
  for (auto _ : state) benchmark::DoNotOptimize(pipeline_286(nu));
}
BENCHMARK(BM_Pipeline286);

void BM_BallSizes(benchmark::State& state) {
  const auto gens = schottky();
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(growth::ball_sizes(gens, depth, true));
}
BENCHMARK(BM_BallSizes)->DenseRange(3, 7, 2)->Unit(benchmark::kMillisecond);

void BM_CosetTree(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gtree::build_coset_tree(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CosetTree)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_XYDecomposition(benchmark::State& state) {
  const auto ct = gtree::build_coset_tree(8);
  const auto words = gtree::reduced_words("xy", 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gtree::xy_decomposition(ct.action, "x", "y", ct.base_edge, 3, words));
  }
}
BENCHMARK(BM_XYDecomposition)->Unit(benchmark::kMillisecond);

void BM_MargulisTest(benchmark::State& state) {
  GroupFile g;
  g.generators = schottky();
  MargulisOptions opt;
  opt.depth = static_cast<int>(state.range(0));
  opt.sampling.count = 20;
  for (auto _ : state) benchmark::DoNotOptimize(margulis_test(g, opt));
}
BENCHMARK(BM_MargulisTest)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
