// Copyright 2026 The Polarized Authors
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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "polarized/bv.h"
#include "polarized/dsl.h"
#include "polarized/jones.h"
#include "polarized/network.h"
#include "polarized/qref.h"

namespace {

using namespace polarized;

HiddenString alternating(std::size_t n) {
  std::vector<Bit> bits(n);
  for (std::size_t j = 0; j < n; ++j) bits[j] = static_cast<Bit>(j % 2 == 0);
  return HiddenString(std::move(bits));
}

void BM_BuildCircuit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = alternating(n);
  const auto x = InputString::all_ones(n);
  for (auto _ : state) benchmark::DoNotOptimize(build_bv_circuit(a, x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildCircuit)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_Propagate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto circuit = build_bv_circuit(alternating(n), InputString::all_ones(n));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(circuit.net));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Propagate)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_FindHiddenString(benchmark::State& state) {
  const auto a = alternating(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_hidden_string(a));
}
BENCHMARK(BM_FindHiddenString)->Arg(10)->Arg(100);

void BM_QuantumBv(benchmark::State& state) {
  const auto a = alternating(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quantum_bv(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QuantumBv)->DenseRange(4, 16, 4);

void BM_QuantumBvPhaseForm(benchmark::State& state) {
  const auto a = alternating(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quantum_bv_phase_form(a));
}
BENCHMARK(BM_QuantumBvPhaseForm)->DenseRange(4, 16, 4);

void BM_QhqSynthesize(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<JonesMatrix> targets;
  for (int k = 0; k < 256; ++k) {
    double w = g(rng), x = g(rng), y = g(rng), z = g(rng);
    const double norm = std::sqrt(w * w + x * x + y * y + z * z);
    w /= norm, x /= norm, y /= norm, z /= norm;
    targets.push_back(JonesMatrix(Complex(w, z), Complex(y, x), Complex(-y, x), Complex(w, -z)));
  }
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(qhq_synthesize(targets[k++ % targets.size()]));
}
BENCHMARK(BM_QhqSynthesize);

void BM_SerializeParse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto circuit = build_bv_circuit(alternating(n), InputString::all_ones(n));
  const std::string text = serialize_netlist(circuit.net);
  for (auto _ : state) {
    auto parsed = parse_netlist(text);
    benchmark::DoNotOptimize(parsed);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_SerializeParse)->Arg(10)->Arg(100);

}  // namespace
BENCHMARK_MAIN();
