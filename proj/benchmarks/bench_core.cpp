#include <benchmark/benchmark.h>

#include "parahoric/cyclotomic.hpp"
#include "parahoric/dixon.hpp"
#include "parahoric/group_model.hpp"
#include "parahoric/parahoric.hpp"
#include "parahoric/table_store.hpp"

using namespace parahoric;

namespace {

void bm_enumerate_iwahori(benchmark::State& state) {
    const Modulus m(3, (int)state.range(0));
    for (auto _ : state) {
        auto g = GroupModel::build(m, SubgroupTag::IwahoriUpper, 0, 10000000);
        benchmark::DoNotOptimize(g->order());
    }
}
BENCHMARK(bm_enumerate_iwahori)->Arg(1)->Arg(2)->Arg(3);

void bm_enumerate_full(benchmark::State& state) {
    const Modulus m(3, (int)state.range(0));
    for (auto _ : state) {
        auto g = GroupModel::build(m, SubgroupTag::FullSL2, 0, 10000000);
        benchmark::DoNotOptimize(g->class_count());
    }
}
BENCHMARK(bm_enumerate_full)->Arg(1)->Arg(2)->Arg(3);

void bm_factorize(benchmark::State& state) {
    auto J = GroupModel::build(Modulus(3, 2), SubgroupTag::IwahoriUpper, 0, 10000000);
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(iwahori_factorize(J->elements[i]));
        i = (i + 1) % J->elements.size();
    }
}
BENCHMARK(bm_factorize);

void bm_cyclotomic_product(benchmark::State& state) {
    const long cond = state.range(0);
    const Cyclotomic a = Cyclotomic::root_of_unity(cond, 1) + Cyclotomic(Rational(1, 2));
    const Cyclotomic b = Cyclotomic::root_of_unity(cond, cond / 2 + 1) - a;
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_cyclotomic_product)->Arg(12)->Arg(36)->Arg(108);

void bm_character_table(benchmark::State& state) {
    const Modulus m(3, (int)state.range(0));
    for (auto _ : state) {
        auto g = GroupModel::build(m, SubgroupTag::IwahoriUpper, 0, 10000000);
        benchmark::DoNotOptimize(build_character_table(g).irr.size());
    }
}
BENCHMARK(bm_character_table)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void bm_inner_product(benchmark::State& state) {
    TableStore store;
    auto tab = store.table(Modulus(3, 2), SubgroupTag::FullSL2);
    const auto& last = tab->irr.back();
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(inner_product(tab->irr[i], last));
        i = (i + 1) % tab->irr.size();
    }
}
BENCHMARK(bm_inner_product);

void bm_parahoric_induce(benchmark::State& state) {
    TableStore store;
    const auto rhos = all_l_characters(3, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(parahoric_induce(store, rhos[1]).class_count());
}
BENCHMARK(bm_parahoric_induce)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
