#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "xfer/align.hpp"
#include "xfer/quaternion.hpp"
#include "xfer/tensor.hpp"

namespace {

std::vector<xfer::Tensor3> random_tensors(std::size_t n) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  std::vector<xfer::Tensor3> out(n);
  for (auto& f : out) {
    do {
      f = xfer::Tensor3::Identity();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f(i, j) += u(rng);
    } while (xfer::det3(f) <= 0.0);
  }
  return out;
}

void BM_svd3_align(benchmark::State& state) {
  const auto tensors = random_tensors(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto a = xfer::align_svd(xfer::svd3(tensors[i]));
    benchmark::DoNotOptimize(a.sigma.data());
    i = (i + 1) % tensors.size();
  }
}
BENCHMARK(BM_svd3_align);

void BM_quaternion_roundtrip(benchmark::State& state) {
  const auto tensors = random_tensors(1024);
  std::vector<Eigen::Matrix3d> rotations;
  rotations.reserve(tensors.size());
  for (const auto& f : tensors) rotations.push_back(xfer::align_svd(xfer::svd3(f)).U);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto q = xfer::rotation_to_quaternion(rotations[i]);
    benchmark::DoNotOptimize(xfer::quaternion_to_rotation(q));
    i = (i + 1) % rotations.size();
  }
}
BENCHMARK(BM_quaternion_roundtrip);

} // namespace

BENCHMARK_MAIN();
