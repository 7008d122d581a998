#include <benchmark/benchmark.h>

#include <cmath>

#include "lorcomp/comparison.hpp"
#include "lorcomp/gen.hpp"
#include "lorcomp/model.hpp"
#include "lorcomp/rng.hpp"
#include "lorcomp/space.hpp"
#include "lorcomp/verifier.hpp"

using namespace lorcomp;
namespace cmp = lorcomp::comparison;

namespace {

gen::SprinkleSpec flat_spec(std::size_t count) {
    gen::SprinkleSpec s;
    s.ambient = gen::Ambient::minkowski;
    s.region = gen::Region::diamond({0.0, 0.0}, {2.0, 0.0});
    s.count = count;
    s.seed = 17;
    return s;
}

const space::DiscreteSpace& shared_space() {
    static const auto sp = gen::sprinkle(flat_spec(1000));
    return sp;
}

void BM_sprinkle(benchmark::State& state) {
    const auto spec = flat_spec(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(gen::sprinkle(spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_sprinkle)->Arg(200)->Arg(1000)->Arg(4000);

void BM_validate_axioms(benchmark::State& state) {
    const auto sp = gen::sprinkle(flat_spec(
        static_cast<std::size_t>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(space::validate_axioms(sp));
}
BENCHMARK(BM_validate_axioms)->Arg(200)->Arg(1000);

void BM_geodesic_chain(benchmark::State& state) {
    const auto& sp = shared_space();
    // A far pair: the sprinkle is time-sorted, so 0 precedes most points.
    std::uint32_t far = 0;
    for (std::uint32_t i = static_cast<std::uint32_t>(sp.size()); i-- > 1;)
        if (sp.tau(0, i) > 0) {
            far = i;
            break;
        }
    for (auto _ : state)
        benchmark::DoNotOptimize(space::geodesic_chain(sp, 0, far));
}
BENCHMARK(BM_geodesic_chain);

void BM_enumerate_triangles(benchmark::State& state) {
    const auto& sp = shared_space();
    for (auto _ : state)
        benchmark::DoNotOptimize(cmp::enumerate_triangles(
            sp, {}, static_cast<std::size_t>(state.range(0)), 23));
}
BENCHMARK(BM_enumerate_triangles)->Arg(40)->Arg(200);

void BM_realize_sides(benchmark::State& state) {
    rng::Stream st(5);
    const double K = static_cast<double>(state.range(0));
    for (auto _ : state) {
        const double a = 0.1 + st.uniform(), b = 0.1 + st.uniform();
        const double c = a + b + st.uniform() * 0.5;
        benchmark::DoNotOptimize(cmp::realize_sides(K, a, b, c));
    }
}
BENCHMARK(BM_realize_sides)->Arg(-1)->Arg(0)->Arg(1);

void BM_compare_triangle(benchmark::State& state) {
    const auto& sp = shared_space();
    const auto tris = cmp::enumerate_triangles(sp, {}, 8, 23);
    const auto& t = tris.back();
    const auto cfg = cmp::realize_triangle(0.0, t);
    const auto pairs = cmp::default_pairs(
        sp, t, static_cast<std::size_t>(state.range(0)), 29);
    for (auto _ : state)
        benchmark::DoNotOptimize(cmp::compare_triangle(
            sp, 0.0, cmp::Direction::below, t, cfg, pairs));
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_compare_triangle)->Arg(100)->Arg(400);

void BM_measure_angle(benchmark::State& state) {
    const auto& sp = shared_space();
    const auto tris = cmp::enumerate_triangles(sp, {.min_side = 0.2}, 8, 23);
    const auto& t = tris.back();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            cmp::measure_angle(sp, t, model::Vertex::middle, 0.0));
}
BENCHMARK(BM_measure_angle);

void BM_run_campaign(benchmark::State& state) {
    const auto sp = gen::sprinkle(flat_spec(300));
    verifier::Campaign c;
    c.k_grid = {0.0};
    c.triangle_budget = 20;
    c.pair_budget = 100;
    c.seed = 31;
    c.check_nondegeneracy = false;
    c.jobs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(verifier::run_campaign(sp, c));
}
BENCHMARK(BM_run_campaign)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
