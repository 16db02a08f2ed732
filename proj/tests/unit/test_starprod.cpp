#include <random>

#include <gtest/gtest.h>

#include "wedgeqft/errors.hpp"
#include "wedgeqft/starprod.hpp"

using namespace wedgeqft;

namespace {

Factor1D gaussian(double width, double centre, double freq = 0.0)
{
    // exp(-(x-c)^2/w^2) e^{i freq x}: spectrum below 1e-16 past |freq| + 12/w
    return {[=](double x) {
                const double u = (x - centre) / width;
                return std::exp(-u * u) * std::polar(1.0, freq * x);
            },
            std::abs(freq) + 12.0 / width};
}

PlaneWaveSum random_sum(std::mt19937_64& rng, int terms)
{
    std::uniform_int_distribution<int> k(-3, 3);
    std::normal_distribution<double> c;
    std::vector<PlaneWaveSum::Term> t;
    for (int i = 0; i < terms; ++i)
        t.emplace_back(Vec2(k(rng), k(rng)), Complex(c(rng), c(rng)));
    return PlaneWaveSum(t);
}

} // namespace

TEST(StarExact, Examples)
{
    const Vec2 k(1.0, 2.0), l(-0.5, 1.5);
    EXPECT_TRUE(star_exact(PlaneWaveSum::wave(k), PlaneWaveSum::wave(l), 0.0)
                    .approx_equal(PlaneWaveSum::wave(k + l), 0.0));
    EXPECT_TRUE(star_exact(PlaneWaveSum::wave(k), PlaneWaveSum::wave(k), 0.7)
                    .approx_equal(PlaneWaveSum::wave(2 * k), 1e-15));
    const double lambda = 0.4;
    const Complex phase = std::polar(1.0, sigma() * lambda * k.dot(q_matrix() * l));
    EXPECT_TRUE(star_exact(PlaneWaveSum::wave(k), PlaneWaveSum::wave(l), lambda)
                    .approx_equal(PlaneWaveSum::wave(k + l, phase), 1e-15));
}

TEST(StarExact, AlgebraicProperties)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        const PlaneWaveSum a = random_sum(rng, 4), b = random_sum(rng, 3), c = random_sum(rng, 3);
        const double lambda = 0.37;
        EXPECT_TRUE(star_exact(star_exact(a, b, lambda), c, lambda)
                        .approx_equal(star_exact(a, star_exact(b, c, lambda), lambda), 1e-12));
        EXPECT_TRUE(star_exact(a, b, lambda).conj().approx_equal(star_exact(b.conj(), a.conj(), lambda), 1e-12));
        EXPECT_TRUE(star_exact(a, b, 0.0).approx_equal(a * b, 0.0));
    }
}

TEST(QMatrix, DeterminantIdentity)
{
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    const Mat2 q = q_matrix();
    EXPECT_EQ(q.transpose(), -q);
    for (int i = 0; i < 1000; ++i) {
        Mat2 n;
        n << g(rng), g(rng), g(rng), g(rng);
        EXPECT_LT((n.transpose() * q * n - n.determinant() * q).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(StarNumeric, ConstantsAreFixed)
{
    const OrbitFunction one = OrbitFunction::plane_waves(PlaneWaveSum::constant(1.0));
    for (double lambda : {0.0, 0.5, 2.0}) {
        const StarResult r = star_numeric(one, one, lambda, CutoffFunction{}, QuadratureConfig{});
        EXPECT_NEAR(std::abs(r.value - 1.0), 0.0, 1e-10);
    }
}

TEST(StarNumeric, PlaneWavesMatchExactPhase)
{
    PlaneWaveIntegrals pw(CutoffFunction{}, QuadratureConfig{});
    const Vec2 cases[][2] = {{{1, 0}, {0, 1}}, {{2, -1}, {1, 3}}, {{-3, 2}, {2, 2}}};
    for (double lambda : {0.1, 0.5, 1.0})
        for (const auto& c : cases) {
            const PlaneWaveSum f = PlaneWaveSum::wave(c[0]), g = PlaneWaveSum::wave(c[1]);
            const Complex exact = star_exact(f, g, lambda)(Vec2::Zero());
            EXPECT_NEAR(std::abs(star_numeric(f, g, lambda, pw).value - exact), 0.0, 1e-6);
            const StarResult direct = star_numeric(OrbitFunction::plane_waves(f), OrbitFunction::plane_waves(g),
                                                   lambda, CutoffFunction{}, QuadratureConfig{}, Vec2(0.3, -0.2));
            EXPECT_NEAR(std::abs(direct.value - star_exact(f, g, lambda)(Vec2(0.3, -0.2))), 0.0, 1e-6);
        }
}

TEST(StarNumeric, UndeformedGaussians)
{
    const OrbitFunction f = OrbitFunction::separable(gaussian(1.0, 0.0), gaussian(1.0, 0.0));
    const StarResult r = star_numeric(f, f, 0.0, CutoffFunction{}, QuadratureConfig{});
    EXPECT_NEAR(std::abs(r.value - 1.0), 0.0, 1e-6);
}

TEST(StarNumeric, AssociativityOnSmallSums)
{
    std::mt19937_64 rng(9);
    PlaneWaveIntegrals pw(CutoffFunction{}, QuadratureConfig{});
    const double lambda = 0.3;
    const PlaneWaveSum a = random_sum(rng, 2), b = random_sum(rng, 2), c = random_sum(rng, 2);
    // (a*b)*c evaluated at 0 using exact inner products and numeric outer ones
    const Complex left = star_numeric(star_exact(a, b, lambda), c, lambda, pw).value;
    const Complex right = star_numeric(a, star_exact(b, c, lambda), lambda, pw).value;
    EXPECT_NEAR(std::abs(left - right), 0.0, 1e-5);
}

TEST(StarNumeric, ExtrapolationConsistency)
{
    const QuadratureConfig base;
    QuadratureConfig finer = base;
    finer.eps = QuadratureConfig::geometric_eps(0.5, 1.0 / 512.0);
    PlaneWaveIntegrals pw(CutoffFunction{}, base), pw_fine(CutoffFunction{}, finer);
    const Vec2 cases[][2] = {{{1, 0}, {0, 1}}, {{2, -1}, {1, 3}}, {{-3, 2}, {2, 2}}, {{3, 3}, {-3, 1}}};
    for (double lambda : {0.1, 0.5, 1.0})
        for (const auto& c : cases) {
            const PlaneWaveSum f = PlaneWaveSum::wave(c[0]), g = PlaneWaveSum::wave(c[1]);
            const StarResult r = star_numeric(f, g, lambda, pw);
            const StarResult r2 = star_numeric(f, g, lambda, pw_fine);
            EXPECT_LE(std::abs(r2.value - r.value), r.error) << lambda;
        }
}

TEST(StarNumeric, CutoffIndependence)
{
    QuadratureConfig cfg;
    cfg.eps = QuadratureConfig::geometric_eps(0.5, 1.0 / 32.0);
    const double lambda = 0.6;
    const OrbitFunction f = OrbitFunction::general(
        [](const Vec2& s) { return std::exp(-0.5 * s.squaredNorm()) * std::polar(1.0, 0.5 * s(0)); }, 12.0);
    const OrbitFunction g = OrbitFunction::general(
        [](const Vec2& s) { return std::exp(-0.5 * (s - Vec2(0.3, 0.1)).squaredNorm()) * std::cos(s(0) * s(1)); },
        14.0);
    const Complex a = star_numeric(f, g, lambda, CutoffFunction(CutoffFamily::coordinate_product), cfg).value;
    const Complex b = star_numeric(f, g, lambda, CutoffFunction(CutoffFamily::planar_radial), cfg).value;
    EXPECT_NEAR(std::abs(a - b), 0.0, 1e-6);
}

TEST(PoissonBracket, Examples)
{
    const OrbitFunction s1 = OrbitFunction::general([](const Vec2& s) { return Complex(s(0)); }, 1.0);
    const OrbitFunction s2 = OrbitFunction::general([](const Vec2& s) { return Complex(s(1)); }, 1.0);
    EXPECT_NEAR(std::abs(poisson_bracket(s1, s2)(Vec2(0.3, 2.0)) - 1.0), 0.0, 1e-8);
    const OrbitFunction f = OrbitFunction::separable(gaussian(1.0, 0.2, 1.0), gaussian(0.7, -0.1));
    EXPECT_NEAR(std::abs(poisson_bracket(f, f)(Vec2(0.1, 0.4))), 0.0, 1e-12);
    const PlaneWaveSum w = PlaneWaveSum::wave(Vec2(1, 2)) + PlaneWaveSum::wave(Vec2(-1, 0.5), 2.0);
    const OrbitFunction pw = OrbitFunction::plane_waves(w);
    const Eigen::Vector2cd grad = pw.gradient(Vec2(0.2, 0.3));
    EXPECT_NEAR(std::abs(grad(0) - Complex(0, 1) * (std::polar(1.0, 0.8) - 2.0 * std::polar(1.0, -0.05))), 0.0,
                1e-13);
}

TEST(PoissonBracket, FirstOrderConstantIsUniversal)
{
    // (f*g - fg)(0)/lambda -> c i {f,g}(0), checked by a symmetric difference
    // in lambda on random separable Gaussian wave packets.
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> w(0.7, 1.5), c(-0.5, 0.5), k(-1.5, 1.5);
    const double lambda = 0.01;
    int checked = 0;
    while (checked < 20) {
        const OrbitFunction f = OrbitFunction::separable(gaussian(w(rng), c(rng), k(rng)),
                                                         gaussian(w(rng), c(rng), k(rng)));
        const OrbitFunction g = OrbitFunction::separable(gaussian(w(rng), c(rng), k(rng)),
                                                         gaussian(w(rng), c(rng), k(rng)));
        const Complex bracket = poisson_bracket(f, g)(Vec2::Zero());
        if (std::abs(bracket) < 0.05)
            continue;
        const Complex plus = star_numeric(f, g, lambda, CutoffFunction{}, QuadratureConfig{}).value;
        const Complex minus = star_numeric(f, g, -lambda, CutoffFunction{}, QuadratureConfig{}).value;
        const Complex ratio = (plus - minus) / (2.0 * lambda) / (Complex(0, 1) * bracket);
        EXPECT_NEAR(ratio.real(), poisson_constant(), 0.02 * std::abs(poisson_constant()));
        EXPECT_NEAR(ratio.imag(), 0.0, 0.02);
        ++checked;
    }
}

TEST(WarpedEigenoperator, Examples)
{
    EXPECT_EQ(warped_eigenoperator(Vec2::Zero(), 0.7), Vec2::Zero());
    EXPECT_EQ(warped_eigenoperator(Vec2(1, 2), 0.0).norm(), 0.0);
    EXPECT_NEAR((warped_eigenoperator(Vec2(1, 2), 0.5) - sigma_prime() * 0.5 * Vec2(2, -1)).norm(), 0.0, 1e-15);
}
