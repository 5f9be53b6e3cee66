#include <benchmark/benchmark.h>

#include "kr/krmodules.hpp"

using namespace kr;

static void BM_irreducible_character(benchmark::State &state) {
    const CartanData cd = cartan_data("B3");
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        ClassicalCharacter c = irreducible_character(cd, Weight{0, m, 0});
        benchmark::DoNotOptimize(c.terms.size());
    }
}
BENCHMARK(BM_irreducible_character)->Arg(1)->Arg(2)->Arg(3);

static void BM_weyl_dimension(benchmark::State &state) {
    const CartanData cd = cartan_data("B3");
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(weyl_dimension(cd, Weight{0, m, 0}));
}
BENCHMARK(BM_weyl_dimension)->Arg(3)->Arg(6);

static void BM_fm_qcharacter(benchmark::State &state) {
    const CartanData cd = cartan_data("B2");
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        QCharacter qc = fm_qcharacter(cd, kr_highest_monomial(cd, 1, m, 0));
        benchmark::DoNotOptimize(qc.terms.size());
    }
}
BENCHMARK(BM_fm_qcharacter)->Arg(1)->Arg(2)->Arg(4);

static void BM_qchar_product(benchmark::State &state) {
    const CartanData cd = cartan_data("C2");
    const int m = static_cast<int>(state.range(0));
    const QCharacter a = kr_qcharacter(cd, 2, m, 0);
    const QCharacter b = kr_qcharacter(cd, 2, m, 2 * cd.root_length[1]);
    for (auto _ : state) {
        QCharacter p = qchar_product(a, b);
        benchmark::DoNotOptimize(p.terms.size());
    }
}
BENCHMARK(BM_qchar_product)->Arg(2)->Arg(3);

static void BM_tensor_decompose(benchmark::State &state) {
    const CartanData cd = cartan_data("A3");
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto mult = kr_tensor_multiplicities(KRTensor{cd, 2, extremal(m).second});
        benchmark::DoNotOptimize(mult.size());
    }
}
BENCHMARK(BM_tensor_decompose)->Arg(3)->Arg(5);

static void BM_poset_covers(benchmark::State &state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cover_edges(m).size());
}
BENCHMARK(BM_poset_covers)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
