#include <benchmark/benchmark.h>

#include "wdist/twirl.hpp"

using namespace wdist;

namespace {

void bm_kron(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    SeededRng rng(1);
    const Matrix a = random_hermitian(d, rng);
    const Matrix b = random_hermitian(d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(bm_kron)->Arg(9)->Arg(27);

void bm_partial_transpose(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    SeededRng rng(2);
    const Matrix x = random_hermitian(d * d, rng);
    const BipartiteDims dims(d, d);
    for (auto _ : state) benchmark::DoNotOptimize(partial_transpose(x, dims));
}
BENCHMARK(bm_partial_transpose)->Arg(3)->Arg(9);

void bm_depolarize(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    SeededRng rng(3);
    const Matrix x = random_density(d * d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(depolarize(x, d));
}
BENCHMARK(bm_depolarize)->Arg(3)->Arg(9);

void bm_haar_unitary(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    SeededRng rng(4);
    for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(d, rng));
}
BENCHMARK(bm_haar_unitary)->Arg(3)->Arg(9);

void bm_protocol_build(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_depolarizing_protocol(d));
}
BENCHMARK(bm_protocol_build)->Arg(2)->Arg(3)->Arg(4);

void bm_protocol_apply(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const MixingProtocol proto = build_depolarizing_protocol(d);
    SeededRng rng(5);
    const Matrix x = random_density(d * d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(apply_protocol(proto, x));
}
BENCHMARK(bm_protocol_apply)->Arg(2)->Arg(3);

void bm_hermitian_spectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SeededRng rng(6);
    const Matrix x = random_hermitian(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_spectrum(x));
}
BENCHMARK(bm_hermitian_spectrum)->Arg(9)->Arg(81);

}  // namespace

BENCHMARK_MAIN();
