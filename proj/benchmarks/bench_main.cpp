#include <benchmark/benchmark.h>

#include "qlink/coinc/histogram.hpp"
#include "qlink/coinc/offset.hpp"
#include "qlink/coinc/pairing.hpp"
#include "qlink/fiber/calibrate.hpp"
#include "qlink/fiber/mode_solver.hpp"
#include "qlink/qkd/key_rate.hpp"
#include "qlink/sim/link.hpp"
#include "qlink/sim/philox.hpp"

#include <cstdint>
#include <utility>

namespace {

using namespace qlink;

void philox_block(benchmark::State& state) {
    std::array<std::uint32_t, 4> ctr = {0, 0, 0, 0};
    const std::array<std::uint32_t, 2> key = {0xdeadbeef, 0xcafef00d};
    for (auto _ : state) {
        ctr[0] += 1;
        benchmark::DoNotOptimize(sim::philox4x32(ctr, key));
    }
    state.SetItemsProcessed(state.iterations() * 4);
}
BENCHMARK(philox_block);

void uniform_lane(benchmark::State& state) {
    const sim::RandomLane lane(42, 0);
    std::uint64_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(lane.uniform(i++));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(uniform_lane);

void mode_solve(benchmark::State& state) {
    const fiber::FiberSpec spec = fiber::calibrated_telecom();
    for (auto _ : state)
        benchmark::DoNotOptimize(fiber::solve_modes(spec, 810.0));
}
BENCHMARK(mode_solve)->Unit(benchmark::kMillisecond);

std::pair<TagStream, TagStream> correlated_streams(std::size_t n, TimePs shift) {
    sim::SequenceRng rng(7, 0);
    TagStream a, b;
    a.reserve(n);
    b.reserve(n);
    TimePs t = 0;
    for (std::size_t i = 0; i < n; ++i) {
        t += static_cast<TimePs>(1'000 + rng.uniform() * 20'000);
        a.push_back({t, 0});
        b.push_back({t + shift, 1});
    }
    return {std::move(a), std::move(b)};
}

void histogram_fill(benchmark::State& state) {
    const auto [a, b] = correlated_streams(static_cast<std::size_t>(state.range(0)), 5'000);
    for (auto _ : state)
        benchmark::DoNotOptimize(coinc::build_histogram(a, b, 5'000, 20'000, 100));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(histogram_fill)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void offset_scan(benchmark::State& state) {
    const auto [a, b] = correlated_streams(static_cast<std::size_t>(state.range(0)), 123'000);
    for (auto _ : state)
        benchmark::DoNotOptimize(coinc::find_offset(a, b, 1'000'000, 1'000));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(offset_scan)->Arg(100'000)->Unit(benchmark::kMillisecond);

void pairing(benchmark::State& state) {
    const auto [a, b] = correlated_streams(static_cast<std::size_t>(state.range(0)), 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(coinc::pair_coincidences(a, b, 0, 2'000));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(pairing)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void key_rate(benchmark::State& state) {
    double v = 0.8;
    for (auto _ : state) {
        v = v < 0.99 ? v + 1e-6 : 0.8;
        benchmark::DoNotOptimize(qkd::secure_key_rate(3000.0, v));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(key_rate);

void link_throughput(benchmark::State& state) {
    sim::LinkParams p;
    p.source.pair_rate_hz = 100'000.0;
    p.source.visibility = 0.95;
    p.arm_alice.length_km = 2.0;
    p.arm_alice.attenuation_db_per_km = 3.0;
    p.arm_alice.delay_fundamental_ns_per_km = 4839.6;
    p.detector_alice.dark_rate_hz = 100.0;
    p.detector_bob = p.detector_alice;
    p.duration_s = 1.0;
    std::uint64_t pairs = 0;
    for (auto _ : state) {
        p.seed += 1;
        const auto r = sim::simulate_link(p);
        pairs += r.pairs_emitted;
        benchmark::DoNotOptimize(r.alice.size());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(pairs));
}
BENCHMARK(link_throughput)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
