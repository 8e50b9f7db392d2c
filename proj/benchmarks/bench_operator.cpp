#include <benchmark/benchmark.h>

#include <random>

#include "xfer/fields.hpp"
#include "xfer/parallel.hpp"
#include "xfer/point_set.hpp"
#include "xfer/transfer.hpp"

namespace {

xfer::PointSet random_cloud(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<xfer::Point3> pts(n);
  for (auto& p : pts) p = xfer::Point3{u(rng), u(rng), u(rng)};
  return xfer::PointSet::source(std::move(pts));
}

void BM_operator_build(benchmark::State& state) {
  const auto src = random_cloud(static_cast<std::size_t>(state.range(0)), 7);
  const auto dst = random_cloud(4096, 8);
  for (auto _ : state) {
    xfer::TransferOperator op(src, dst, xfer::RadiusConfig{2, 2.0},
                              xfer::SolverConfig{1e-10, 2000, 50});
    benchmark::DoNotOptimize(op.denominators().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_operator_build)->RangeMultiplier(2)->Range(512, 4096)->Complexity();

void BM_svd_transfer(benchmark::State& state) {
  const auto src = random_cloud(1000, 7);
  const auto dst = random_cloud(static_cast<std::size_t>(state.range(0)), 8);
  const xfer::TransferOperator op(src, dst, xfer::RadiusConfig{2, 2.0},
                                  xfer::SolverConfig{1e-10, 2000, 50});
  const auto field =
      xfer::generate_field(xfer::FieldKind::RandSmooth, {}, src, 3).tensor;
  for (auto _ : state) {
    auto out = op.transfer_tensor_svd(field);
    benchmark::DoNotOptimize(out.samples.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_svd_transfer)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_scalar_transfer_threads(benchmark::State& state) {
  xfer::set_max_threads(static_cast<int>(state.range(0)));
  const auto src = random_cloud(2000, 7);
  const auto dst = random_cloud(100000, 8);
  const xfer::TransferOperator op(src, dst, xfer::RadiusConfig{2, 2.0},
                                  xfer::SolverConfig{1e-10, 2000, 50});
  std::vector<double> values(src.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = std::sin(3.0 * src[i].x) * src[i].y;
  for (auto _ : state) {
    auto out = op.transfer_scalar(values);
    benchmark::DoNotOptimize(out.data());
  }
  xfer::set_max_threads(0);
}
BENCHMARK(BM_scalar_transfer_threads)->Arg(1)->Arg(2)->Arg(4);

} // namespace

BENCHMARK_MAIN();
