#include <benchmark/benchmark.h>

#include "wdist/distill.hpp"

using namespace wdist;

namespace {

void bm_search_single_restart(benchmark::State& state) {
    const int copies = static_cast<int>(state.range(0));
    SearchConfig cfg;
    cfg.restarts = 1;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(witness_search(3, 0.6, copies, cfg));
    }
}
BENCHMARK(bm_search_single_restart)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void bm_frame_objective(benchmark::State& state) {
    const int copies = static_cast<int>(state.range(0));
    const Matrix r = witness_operator(3, 0.6, copies);
    const BipartiteDims dims(3, 3, copies);
    SeededRng rng(7);
    const Matrix u = haar_unitary(dims.alice_dim(), rng);
    const Vector e1 = u.col(0), e2 = u.col(1);
    for (auto _ : state) benchmark::DoNotOptimize(frame_objective(r, dims, e1, e2));
}
BENCHMARK(bm_frame_objective)->Arg(1)->Arg(2);

void bm_brute_force(benchmark::State& state) {
    const int copies = static_cast<int>(state.range(0));
    const Matrix r = witness_operator(3, 0.6, copies);
    const BipartiteDims dims(3, 3, copies);
    SeededRng rng(8);
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_witness(r, dims, 100, rng));
}
BENCHMARK(bm_brute_force)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void bm_certify(benchmark::State& state) {
    SearchConfig cfg;
    cfg.restarts = 10;
    cfg.seed = 3;
    for (auto _ : state) benchmark::DoNotOptimize(certify(3, 0.6, 1, cfg));
}
BENCHMARK(bm_certify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
