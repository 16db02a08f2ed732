#include <random>

#include <benchmark/benchmark.h>

#include "wedgeqft/car.hpp"
#include "wedgeqft/geometry.hpp"
#include "wedgeqft/nonequiv.hpp"
#include "wedgeqft/oscillatory.hpp"
#include "wedgeqft/sampling.hpp"
#include "wedgeqft/starprod.hpp"
#include "wedgeqft/wedges.hpp"

using namespace wedgeqft;

namespace {

CVector random_field(std::mt19937_64& rng, int d)
{
    std::normal_distribution<double> g;
    CVector f(d);
    for (int j = 0; j < d; ++j) {
        const double re = g(rng);
        f(j) = Complex(re, g(rng));
    }
    return f;
}

// One level of the 1D FFT quadrature at eps = 2^-k.
void BM_Oscillatory1DLevel(benchmark::State& state)
{
    const double eps = std::ldexp(1.0, -static_cast<int>(state.range(0)));
    const CutoffFunction chi;
    const QuadratureConfig cfg;
    const Factor1D a = plane_wave_1d(1.5), b = plane_wave_1d(-0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(oscillatory_1d(a, b, eps, chi, cfg));
    state.counters["grid"] = static_cast<double>(grid_size_1d(a.bandwidth, b.bandwidth, eps, chi, cfg));
}
BENCHMARK(BM_Oscillatory1DLevel)->DenseRange(3, 8)->Unit(benchmark::kMillisecond);

// Full extrapolated star product of two plane waves, no memoisation.
void BM_StarNumericPlaneWaves(benchmark::State& state)
{
    const PlaneWaveSum f = PlaneWaveSum::wave(Vec2(1.0, -2.0)), g = PlaneWaveSum::wave(Vec2(0.5, 1.0));
    for (auto _ : state) {
        PlaneWaveIntegrals integrals(CutoffFunction{}, QuadratureConfig{});
        benchmark::DoNotOptimize(star_numeric(f, g, 0.7, integrals));
    }
}
BENCHMARK(BM_StarNumericPlaneWaves)->Unit(benchmark::kMillisecond);

// Same star product on the general two-dimensional path (planar-radial cutoff).
void BM_StarNumeric2D(benchmark::State& state)
{
    const OrbitFunction f = OrbitFunction::plane_waves(PlaneWaveSum::wave(Vec2(1.0, 0.0)));
    const OrbitFunction g = OrbitFunction::plane_waves(PlaneWaveSum::wave(Vec2(0.0, 1.0)));
    QuadratureConfig cfg;
    cfg.eps = QuadratureConfig::geometric_eps(0.5, 1.0 / 16.0);
    cfg.tolerance = 1e-4;
    const CutoffFunction chi(CutoffFamily::planar_radial);
    for (auto _ : state)
        benchmark::DoNotOptimize(star_numeric(f, g, 0.5, chi, cfg));
}
BENCHMARK(BM_StarNumeric2D)->Unit(benchmark::kMillisecond);

void BM_FrwChartConstruction(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(Chart::frw(ScaleFactor::exponential(0.3), {0.0, 50.0}));
}
BENCHMARK(BM_FrwChartConstruction)->Unit(benchmark::kMicrosecond);

// Numerically integrated conformal time (no closed form for a tabulated a).
void BM_ConformalTimeTabulated(benchmark::State& state)
{
    std::vector<double> a;
    for (int i = 0; i < 64; ++i)
        a.push_back(1.0 + 0.05 * i + 0.01 * i * i);
    const ChartPtr chart = Chart::frw(ScaleFactor::tabulated(0.0, 0.5, a), {0.0, 31.5});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> t(0.1, 31.4);
    for (auto _ : state)
        benchmark::DoNotOptimize(conformal_time(*chart, t(rng)));
}
BENCHMARK(BM_ConformalTimeTabulated);

void BM_WedgeContains(benchmark::State& state)
{
    const ChartPtr chart = Chart::frw(ScaleFactor::power(1.0), {0.01, 100.0});
    const Wedge w(standard_pair(chart), {1.0, 0.0, 0.0, 0.0});
    std::mt19937_64 rng = stream(5, 0);
    std::vector<Point> pts;
    for (int i = 0; i < 1024; ++i)
        pts.push_back(sample_wedge_point(w, rng));
    std::size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(contains(w, pts[i++ & 1023]));
}
BENCHMARK(BM_WedgeContains);

void BM_WarpedB(benchmark::State& state)
{
    const FockRep rep(ModeSpace::default_grid());
    std::mt19937_64 rng(7);
    const CVector f = random_field(rng, rep.modes().dim());
    for (auto _ : state)
        benchmark::DoNotOptimize(rep.warped_b(f, zeta_components(), 0.4));
}
BENCHMARK(BM_WarpedB)->Unit(benchmark::kMillisecond);

// Deformed n-point function of the default 8-mode model.
void BM_DeformedNpoint(benchmark::State& state)
{
    const FockRep rep(ModeSpace::default_grid());
    std::mt19937_64 rng(11);
    std::vector<CVector> fs;
    for (int i = 0; i < state.range(0); ++i)
        fs.push_back(random_field(rng, rep.modes().dim()));
    for (auto _ : state)
        benchmark::DoNotOptimize(deformed_npoint(rep, fs, zeta_components(), 0.4));
}
BENCHMARK(BM_DeformedNpoint)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_LambdaSweep(benchmark::State& state)
{
    const FockRep rep(ModeSpace::default_grid());
    std::mt19937_64 rng(13);
    const CVector f = random_field(rng, rep.modes().dim());
    const std::vector<double> grid = {-1.0, -0.1, 0.0, 0.01, 0.1, 1.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(lambda_sweep(rep, f, pi / 4, grid));
}
BENCHMARK(BM_LambdaSweep)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
