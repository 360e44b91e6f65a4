// Copyright 2026 The qboost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Kernel timings: OpenMP batch path at 1 and all threads, and the dense serial reference.

#include "qboost/circuit.hpp"
#include "qboost/kernels.hpp"
#include "qboost/noise.hpp"
#include "qboost/rng.hpp"
#include "reference.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cstdlib>
#include <string>
#include <vector>

namespace {

using namespace qboost;

struct Fixture {
  QcnnModel model;
  std::vector<double> theta;
  std::vector<QuantumInput> pure;
  std::vector<QuantumInput> mixed;
};

Fixture make_fixture(int n, int samples) {
  Fixture f{build_qcnn(n, QcnnConfig{}), {}, {}, {}};
  Rng rng(2026);
  for (int k = 0; k < f.model.circuit.num_params(); ++k) f.theta.push_back(rng.normal());
  for (int s = 0; s < samples; ++s) {
    Vector v(Eigen::Index{1} << n);
    for (auto& a : v) a = cplx(rng.normal(), rng.normal());
    v.normalize();
    const StateVector psi(n, v);
    f.pure.emplace_back(psi);
    f.mixed.emplace_back(DensityMatrix::from_pure(psi));
  }
  return f;
}

void set_threads(int t) {
  if (t > 0) {
    setenv("QBOOST_THREADS", std::to_string(t).c_str(), 1);
  } else {
    unsetenv("QBOOST_THREADS");
  }
}

void BM_BatchPure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  set_threads(static_cast<int>(state.range(1)));
  const Fixture f = make_fixture(n, 64);
  const auto prog = kernels::compile(f.model.circuit, f.theta, nullptr);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::batch_probabilities(prog, f.pure, f.model.meas));
  state.SetItemsProcessed(state.iterations() * 64);
  set_threads(0);
}

void BM_BatchGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  set_threads(static_cast<int>(state.range(1)));
  const Fixture f = make_fixture(n, 64);
  const auto prog = kernels::compile(f.model.circuit, f.theta, nullptr);
  std::vector<double> grad(f.theta.size());
  const kernels::SampleCoefficientFn coeff = [](std::size_t, std::span<const double> p) {
    return std::vector<double>(p.size(), 1.0);
  };
  for (auto _ : state) benchmark::DoNotOptimize(kernels::batch_probabilities_and_gradient(prog, f.pure, f.model.meas, coeff, grad));
  state.SetItemsProcessed(state.iterations() * 64);
  set_threads(0);
}

void BM_BatchNoisy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  set_threads(static_cast<int>(state.range(1)));
  const Fixture f = make_fixture(n, 16);
  const auto noise = make_noise_model(NoiseKind::kDepolarizing, 0.03);
  const auto prog = kernels::compile(f.model.circuit, f.theta, &*noise);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::batch_probabilities(prog, f.mixed, f.model.meas));
  state.SetItemsProcessed(state.iterations() * 16);
  set_threads(0);
}

void BM_ReferenceNoisy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Fixture f = make_fixture(n, 1);
  const auto noise = make_noise_model(NoiseKind::kDepolarizing, 0.03);
  const Matrix rho = std::get<DensityMatrix>(f.mixed[0]).matrix();
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::probabilities(f.model.circuit, f.theta, rho, f.model.meas, &*noise));
  state.SetItemsProcessed(state.iterations());
}

// Second argument: thread count, 0 = all available.
BENCHMARK(BM_BatchPure)->ArgsProduct({{4, 6, 8}, {1, 0}})->UseRealTime();
BENCHMARK(BM_BatchGradient)->ArgsProduct({{4, 6, 8}, {1, 0}})->UseRealTime();
BENCHMARK(BM_BatchNoisy)->ArgsProduct({{4, 6}, {1, 0}})->UseRealTime();
BENCHMARK(BM_ReferenceNoisy)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
