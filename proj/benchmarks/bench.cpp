#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "selsym/primes.hpp"
#include "selsym/stickelberger.hpp"
#include "selsym/theta.hpp"

using namespace selsym;

namespace {

const SymbolSource& twist(i64 d) {
    static std::map<i64, std::unique_ptr<SymbolSource>> cache;
    auto& s = cache[d];
    if (!s) s = make_symbol_source(curves::x0_11_twist(d));
    return *s;
}

void BM_DeltaSingle(benchmark::State& st) {
    const auto& s = twist(40);
    for (auto _ : st) benchmark::DoNotOptimize(delta_direct(s, {5347}, 3, 1).value);
}
BENCHMARK(BM_DeltaSingle)->Unit(benchmark::kMillisecond);

void BM_DeltaPair(benchmark::State& st) {
    const auto& s = twist(157);
    for (auto _ : st) benchmark::DoNotOptimize(delta_direct(s, {7, 127}, 3, 1).value);
}
BENCHMARK(BM_DeltaPair)->Unit(benchmark::kMillisecond);

void BM_DeltaPairThreads(benchmark::State& st) {
    const auto& s = twist(265);
    auto threads = static_cast<unsigned>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(delta_direct(s, {31, 463}, 3, 1, threads).value);
}
BENCHMARK(BM_DeltaPairThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Eigensymbol(benchmark::State& st) {
    Curve e = st.range(0) == 563 ? curves::c563a1() : curves::x0_11_twist(13);
    for (auto _ : st) benchmark::DoNotOptimize(compute_eigensymbol(e, Sign::Plus).level);
}
BENCHMARK(BM_Eigensymbol)->Arg(563)->Arg(1859)->Unit(benchmark::kMillisecond);

void BM_EnumerateP1(benchmark::State& st) {
    Curve e = curves::c18097();
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_p1(e, 3, 1, st.range(0)).size());
}
BENCHMARK(BM_EnumerateP1)->Arg(1000)->Arg(10000);

void BM_ClassGroup(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(class_group(-st.range(0)).class_number());
}
BENCHMARK(BM_ClassGroup)->Arg(3299)->Arg(999983);

void BM_StickelbergerFolded(benchmark::State& st) {
    auto k = imaginary_quadratic(23);
    for (auto _ : st) benchmark::DoNotOptimize(stickelberger_delta_folded(k, {151, 211}));
}
BENCHMARK(BM_StickelbergerFolded);

}  // namespace

BENCHMARK_MAIN();
