// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "sint/elliptic.hpp"
#include "sint/equidist.hpp"
#include "sint/integrality.hpp"
#include "sint/linforms.hpp"
#include "sint/pairing.hpp"
#include "sint/tate.hpp"

using namespace sint;

namespace {

template <class F>
void run(benchmark::State& state, F f) {
    for (auto _ : state) benchmark::DoNotOptimize(f());
}

const AlgebraicNumber& two() {
    static const AlgebraicNumber b = AlgebraicNumber::parse("2");
    return b;
}

const AlgebraicNumber& circle_point() {
    static const AlgebraicNumber b = AlgebraicNumber::parse("poly:5,-6,5;root:0");
    return b;
}

std::vector<DiscQuery> disc_queries() {
    std::vector<DiscQuery> q;
    for (std::uint64_t n = 3; n <= 3000; ++n) q.push_back({n, {0.6, 0.8}, 0.05});
    return q;
}

void BM_enumerate(benchmark::State& s) { run(s, [] { return enumerate_s_integral(two(), PrimeSet::parse("3"), 2000); }); }
void BM_enumerate_serial(benchmark::State& s) {
    run(s, [] { return enumerate_s_integral_serial(two(), PrimeSet::parse("3"), 2000); });
}
void BM_pairing_grid(benchmark::State& s) { run(s, [] { return pairing_grid(two(), 60); }); }
void BM_pairing_grid_serial(benchmark::State& s) { run(s, [] { return pairing_grid_serial(two(), 60); }); }
void BM_disc_grid(benchmark::State& s) {
    const auto q = disc_queries();
    run(s, [&] { return disc_count_grid(q, 1, 10); });
}
void BM_disc_grid_serial(benchmark::State& s) {
    const auto q = disc_queries();
    run(s, [&] { return disc_count_grid_serial(q, 1, 10); });
}
void BM_gap(benchmark::State& s) { run(s, [] { return cyclotomic_gap_experiment(circle_point(), 300); }); }
void BM_gap_serial(benchmark::State& s) { run(s, [] { return cyclotomic_gap_experiment_serial(circle_point(), 300); }); }
void BM_torsion_levels(benchmark::State& s) { run(s, [] { return torsion_levels(curve_catalog()[3], 8); }); }
void BM_torsion_levels_serial(benchmark::State& s) { run(s, [] { return torsion_levels_serial(curve_catalog()[3], 8); }); }
void BM_tate_trials(benchmark::State& s) { run(s, [] { return containment_trials(7, TateProjection::y, 200, 16, 1); }); }
void BM_tate_trials_serial(benchmark::State& s) {
    run(s, [] { return containment_trials_serial(7, TateProjection::y, 200, 16, 1); });
}

}  // namespace

BENCHMARK(BM_enumerate)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pairing_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pairing_grid_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_disc_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_disc_grid_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gap)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gap_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_torsion_levels)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_torsion_levels_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tate_trials)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tate_trials_serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
