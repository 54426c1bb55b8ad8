#include <benchmark/benchmark.h>

#include "dma/beamform.hpp"
#include "dma/metrics.hpp"

using namespace dma;

namespace {

struct Setup {
    DmaDesign design;
    ScenarioConfig cfg;
    ChannelSet channels;
    ResonanceGrid grid;
    std::vector<double> rho;

    Setup(std::size_t N, std::size_t R)
    {
        design = default_design();
        design.N_slot = N;
        cfg = default_scenario();
        channels = effective_channel(cfg, design, subcarrier_grid(cfg));
        grid = resonance_grid(design, R);
        rho = snr_vector(channels.grid, cfg);
    }
};

void args(benchmark::internal::Benchmark *b)
{
    b->Args({32, 501})->Args({64, 1001})->Unit(benchmark::kMicrosecond);
}

void BM_CenterFrequency(benchmark::State &state)
{
    const Setup s(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(center_frequency_beamformer(s.channels, s.grid, s.design));
}

void BM_CenterFrequencyReference(benchmark::State &state)
{
    const Setup s(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::center_frequency_beamformer(s.channels, s.grid, s.design));
}

void BM_Successive(benchmark::State &state)
{
    const Setup s(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(successive_beamformer(s.channels, s.rho, s.grid, s.design));
}

void BM_SuccessiveReference(benchmark::State &state)
{
    const Setup s(state.range(0), state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::successive_beamformer(s.channels, s.rho, s.grid, s.design));
}

void BM_Evaluate(benchmark::State &state)
{
    const Setup s(state.range(0), state.range(1));
    const auto res = center_frequency_beamformer(s.channels, s.grid, s.design);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate(s.channels, res, s.cfg, s.design));
}

}

BENCHMARK(BM_CenterFrequency)->Apply(args);
BENCHMARK(BM_CenterFrequencyReference)->Apply(args);
BENCHMARK(BM_Successive)->Apply(args);
BENCHMARK(BM_SuccessiveReference)->Apply(args);
BENCHMARK(BM_Evaluate)->Apply(args);

BENCHMARK_MAIN();
