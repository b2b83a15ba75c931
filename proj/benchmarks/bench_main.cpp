// Microbenchmarks for the hot paths: cut-off construction, decay fitting,
// parametrix evaluation, and single-point localization.

#include <benchmark/benchmark.h>

#include <cmath>
#include <functional>

#include "xgev/cutoffs.hpp"
#include "xgev/decay.hpp"
#include "xgev/grid.hpp"
#include "xgev/operators.hpp"
#include "xgev/sequences.hpp"
#include "xgev/synth.hpp"
#include "xgev/wavefront.hpp"

using namespace xgev;

namespace {

void bm_sequence_properties(benchmark::State& state) {
    SequenceParams p{1.0, 2.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_sequence_properties(p, state.range(0)));
}
BENCHMARK(bm_sequence_properties)->Arg(100)->Arg(200);

void bm_build_cutoff(benchmark::State& state) {
    CutoffSpec spec;
    spec.params = {1.0, 2.0};
    spec.N = static_cast<int>(state.range(0));
    spec.r = 1.0;
    spec.grid = GridSpec::line(8192, -4.5, 4.5);
    for (auto _ : state) benchmark::DoNotOptimize(build_cutoff(spec));
}
BENCHMARK(bm_build_cutoff)->Arg(8)->Arg(32)->Arg(64);

void bm_fit_condition(benchmark::State& state) {
    DecaySamples s;
    s.xi_min = 2.0;
    s.xi_max = 4096.0;
    for (int N = 1; N <= 200; ++N) {
        DecaySamples::Group g;
        g.N = N;
        for (int i = 0; i < 512; ++i) {
            double xi = s.xi_min + (s.xi_max - s.xi_min) * i / 511.0;
            g.xi_norm.push_back(xi);
            g.log_mag.push_back(-std::sqrt(xi));
        }
        s.groups.push_back(std::move(g));
    }
    DecayCondition cond = DecayCondition::gevrey(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(fit_condition(s, cond));
}
BENCHMARK(bm_fit_condition);

void bm_fundamental_identity(benchmark::State& state) {
    GridSpec grid = GridSpec::line(4096, -4.5, 4.5);
    CutoffSpec cs;
    cs.params = {1.0, 2.0};
    cs.N = static_cast<int>(state.range(0));
    cs.r = 1.0;
    cs.grid = grid;
    SampledField chi = build_cutoff(cs);
    ConstCoeffOperator P = ConstCoeffOperator::from_terms(1, {{{1, 0}, 1.0}});
    ParametrixConfig cfg;
    cfg.params = {1.0, 2.0};
    cfg.N = cs.N;
    std::array<double, 2> xi{40.0, 0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_fundamental_identity(P, chi, xi, cfg));
}
BENCHMARK(bm_fundamental_identity)->Arg(25)->Arg(49);

void bm_localize(benchmark::State& state) {
    SignalProfile p;
    p.kind = SignalProfile::Kind::Step;
    SampledField u = synthesize(p, GridSpec::line(16384, -8.0, 8.0)).field;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            localize(u, {0.0, 0.0}, 0.25, static_cast<int>(state.range(0)),
                     {1.0, 2.0}));
}
BENCHMARK(bm_localize)->Arg(10)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
