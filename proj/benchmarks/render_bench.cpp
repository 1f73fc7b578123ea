#include <benchmark/benchmark.h>

#include "mandel/raster.hpp"
#include "mandel/rays.hpp"
#include "mandel/renorm.hpp"
#include "mandel/windows.hpp"

namespace {

void BM_EscapeRender(benchmark::State& state) {
    const int resolution = static_cast<int>(state.range(0));
    const int threads = static_cast<int>(state.range(1));
    const mandel::BoundingBox box{-2.5, 1.5, -2.0, 2.0};
    for (auto _ : state) {
        mandel::Raster r = mandel::render_escape_mandelbrot(box, resolution, 1000, threads);
        benchmark::DoNotOptimize(r.data.data());
    }
    state.SetItemsProcessed(state.iterations() * resolution * resolution);
}
BENCHMARK(BM_EscapeRender)
    ->Args({256, 1})
    ->Args({1024, 1})
    ->Args({1024, 4})
    ->Unit(benchmark::kMillisecond);

void BM_DynamicalRay(benchmark::State& state) {
    const mandel::RationalAngle theta(1, 3);
    for (auto _ : state) {
        mandel::RayPolyline ray = mandel::trace_dynamical_ray({-2.0, 0.0}, theta, 1e-6);
        benchmark::DoNotOptimize(ray.points.data());
    }
}
BENCHMARK(BM_DynamicalRay)->Unit(benchmark::kMillisecond);

void BM_DomainChain(benchmark::State& state) {
    const mandel::Cplx c{-2.0, 0.0};
    const mandel::ClosedCurve D0 = mandel::make_d0_spec_minus2().curve_at(c);
    for (auto _ : state) {
        mandel::DomainChain chain = mandel::build_domain_chain(c, D0, 8);
        benchmark::DoNotOptimize(chain.B_diameters.data());
    }
    state.SetLabel("n=8");
}
BENCHMARK(BM_DomainChain)->Unit(benchmark::kMillisecond);

void BM_Window(benchmark::State& state) {
    const mandel::RenormContext ctx = mandel::make_level1_context();
    for (auto _ : state) {
        mandel::ParamWindow w = mandel::build_window(ctx, 2);
        benchmark::DoNotOptimize(w.diameter);
    }
}
BENCHMARK(BM_Window)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
