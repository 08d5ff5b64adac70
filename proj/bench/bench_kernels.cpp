// Copyright 2026 The hgbs Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Parallel kernels against their serial references.
//
//   OMP_NUM_THREADS=8 ./build/bench/bench_kernels

#include <benchmark/benchmark.h>

#include "hgbs/circuit.hpp"
#include "hgbs/fockdense.hpp"
#include "hgbs/tnet/batch.hpp"

namespace {

using namespace hgbs;

fockdense::DenseState bench_state(int modes, int cutoff) {
    return fockdense::dense_squeezed_vacuum(gauss::SqueezeSpec::uniform(modes, 0.4), cutoff);
}

void BM_TwoModeKernel_Parallel(benchmark::State &state) {
    const int modes = static_cast<int>(state.range(0));
    const int cutoff = 6;
    auto psi = bench_state(modes, cutoff);
    const CMatrix G = circuit::gate_unitary_fock({0.3, 0.2, 0.1}, cutoff);
    std::span<cplx> amps(psi.amplitudes.data(), static_cast<std::size_t>(psi.amplitudes.size()));
    for (auto _ : state) {
        fockdense::apply_two_mode(amps, modes, cutoff, modes / 2 - 1, G);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

void BM_TwoModeKernel_Serial(benchmark::State &state) {
    const int modes = static_cast<int>(state.range(0));
    const int cutoff = 6;
    auto psi = bench_state(modes, cutoff);
    const CMatrix G = circuit::gate_unitary_fock({0.3, 0.2, 0.1}, cutoff);
    std::span<cplx> amps(psi.amplitudes.data(), static_cast<std::size_t>(psi.amplitudes.size()));
    for (auto _ : state) {
        fockdense::apply_two_mode_serial(amps, modes, cutoff, modes / 2 - 1, G);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

BENCHMARK(BM_TwoModeKernel_Parallel)->Arg(4)->Arg(6)->Arg(7);
BENCHMARK(BM_TwoModeKernel_Serial)->Arg(4)->Arg(6)->Arg(7);

struct BatchFixture {
    circuit::Circuit circuit = circuit::build_brickwork(6, 6, std::uint64_t{11});
    std::vector<FockOutcome> outcomes = outcomes_with_total(6, 2);
    gauss::SqueezeSpec squeeze = gauss::SqueezeSpec::uniform(6, 0.4);
    tnet::BatchConfig config{tnet::Picture::heisenberg, 4, {}};
};

void BM_HeisenbergBatch_Parallel(benchmark::State &state) {
    BatchFixture f;
    for (auto _ : state) {
        auto items = tnet::evaluate_batch(f.circuit, f.outcomes, f.squeeze, f.config);
        benchmark::DoNotOptimize(items);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.outcomes.size()));
}

void BM_HeisenbergBatch_Serial(benchmark::State &state) {
    BatchFixture f;
    for (auto _ : state) {
        auto items = tnet::evaluate_batch_serial(f.circuit, f.outcomes, f.squeeze, f.config);
        benchmark::DoNotOptimize(items);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.outcomes.size()));
}

BENCHMARK(BM_HeisenbergBatch_Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HeisenbergBatch_Serial)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
