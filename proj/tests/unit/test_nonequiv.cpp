#include <random>

#include <gtest/gtest.h>

#include "wedgeqft/errors.hpp"
#include "wedgeqft/nonequiv.hpp"
#include "wedgeqft/wedges.hpp"

using namespace wedgeqft;

namespace {

const Complex I(0.0, 1.0);

CVector random_field(std::mt19937_64& rng, int d)
{
    std::normal_distribution<double> g;
    CVector f(d);
    for (int j = 0; j < d; ++j)
        f(j) = Complex(g(rng), g(rng));
    return f;
}

// Coefficients a with omega_2(f, P_a g) = sum_j a_j g_j.
CVector generator_functional(const ModeSpace& m, const CVector& f, const Mat23& c, int axis)
{
    CVector a(m.dim());
    for (int j = 0; j < m.dim(); ++j)
        a(j) = 0.5 * f(m.bar(j)) * I * m.xi_momentum(c, j)(axis);
    return a;
}

Complex pairing(const ModeSpace& m, const CVector& f, const CVector& g, const Mat23& c, int axis)
{
    return generator_functional(m, f, c, axis).transpose() * g;
}

} // namespace

TEST(PoissonDiscrepancy, VanishesForIdenticalPairs)
{
    std::mt19937_64 rng(1);
    const ModeSpace m = ModeSpace::default_grid();
    const CVector f1 = random_field(rng, 8), f = random_field(rng, 8), f4 = random_field(rng, 8);
    EXPECT_EQ(std::abs(poisson_discrepancy(m, f1, f, f4, 0.0)), 0.0);
    EXPECT_LT(std::abs(poisson_discrepancy(m, f1, f, f4, 2 * pi)), 1e-12);
    EXPECT_EQ(zeta_components(), rotated_zeta_components(0.0));
}

TEST(PoissonDiscrepancy, OrthogonalReduction)
{
    std::mt19937_64 rng(2);
    const ModeSpace m = ModeSpace::default_grid();
    const double phi = pi / 4;
    const Mat23 cz = zeta_components(), cr = rotated_zeta_components(phi);
    const CVector f1 = random_field(rng, 8), f = random_field(rng, 8);
    CVector f4 = random_field(rng, 8);
    // project f4 onto the kernel of both first-generator pairings with f
    Eigen::MatrixXcd a(2, 8);
    a.row(0) = generator_functional(m, f, cz, 0).transpose();
    a.row(1) = generator_functional(m, f, cr, 0).transpose();
    f4 -= a.adjoint() * (a * a.adjoint()).inverse() * (a * f4);
    ASSERT_LT(std::abs(pairing(m, f, f4, cz, 0)), 1e-12);
    ASSERT_LT(std::abs(pairing(m, f, f4, cr, 0)), 1e-12);
    const Complex reduced = pairing(m, f1, f, cz, 0) * pairing(m, f, f4, cz, 1) -
                            pairing(m, f1, f, cr, 0) * pairing(m, f, f4, cr, 1);
    const Complex d = poisson_discrepancy(m, f1, f, f4, phi);
    EXPECT_NEAR(std::abs(d - reduced), 0.0, 1e-12);
    EXPECT_GT(std::abs(d), 1e-3);
}

TEST(PoissonDiscrepancy, MatchesFirstOrderStarExpansion)
{
    std::mt19937_64 rng(3);
    const ModeSpace m = ModeSpace::default_grid();
    const double phi = pi / 4;
    const CVector f1 = random_field(rng, 8), f = random_field(rng, 8), f4 = random_field(rng, 8);
    PlaneWaveIntegrals pw(CutoffFunction{}, QuadratureConfig{});
    // symmetric difference quotient of (w13 * w24)(0) in lambda, extrapolated
    auto first_order = [&](const Mat23& c) {
        const PlaneWaveSum w13 = two_point_orbit(m, f1, f, c), w24 = two_point_orbit(m, f, f4, c);
        std::vector<double> h;
        std::vector<Complex> q;
        for (double lambda : {0.04, 0.02, 0.01}) {
            const Complex plus = star_numeric(w13, w24, lambda, pw).value;
            const Complex minus = star_numeric(w13, w24, -lambda, pw).value;
            h.push_back(lambda);
            q.push_back((plus - minus) / (2.0 * lambda));
        }
        return extrapolate_to_zero(h, q).value / (static_cast<double>(poisson_constant()) * I);
    };
    const Complex fd = first_order(zeta_components()) - first_order(rotated_zeta_components(phi));
    const Complex d = poisson_discrepancy(m, f1, f, f4, phi);
    EXPECT_GT(std::abs(d), 1e-2);
    EXPECT_NEAR(std::abs(fd - d), 0.0, 1e-5 * std::abs(d));
}

TEST(FourPointDiscrepancy, FirstOrderSlope)
{
    std::mt19937_64 rng(4);
    const FockRep rep(ModeSpace::default_grid());
    const double phi = pi / 4;
    const CVector f1 = random_field(rng, 8), f = random_field(rng, 8), f4 = random_field(rng, 8);
    EXPECT_LT(std::abs(four_point_discrepancy(rep, f1, f, f4, phi, 0.0)), 1e-13);
    const Complex d = poisson_discrepancy(rep.modes(), f1, f, f4, phi);
    const double lambda = 1e-4;
    const Complex slope = four_point_discrepancy(rep, f1, f, f4, phi, lambda) / lambda;
    EXPECT_NEAR(std::abs(slope - (-2.0 * poisson_constant() * I * d)), 0.0, 1e-3 * std::abs(d));
}

TEST(LambdaSweep, ZeroAndPositive)
{
    std::mt19937_64 rng(5);
    const FockRep rep(ModeSpace::default_grid());
    const CVector f = random_field(rng, 8);
    const DiscrepancyReport r = lambda_sweep(rep, f, pi / 4, {-0.5, -0.01, 0.0, 1e-3, 0.1, 1.0});
    EXPECT_TRUE(r.zero_at_zero);
    EXPECT_TRUE(r.positive_off_zero);
    EXPECT_EQ(r.norms[2], 0.0);
    for (std::size_t i = 0; i < r.norms.size(); ++i)
        if (i != 2) {
            EXPECT_GT(r.norms[i], 1e-6);
        }
    EXPECT_NEAR(r.fitted_slope, r.predicted_slope, 0.05 * r.predicted_slope);
    EXPECT_THROW(lambda_sweep(rep, CVector::Zero(8), pi / 4, {0.1}), DomainError);
}

TEST(LambdaSweep, SingleModeClosedForm)
{
    const FockRep rep(ModeSpace::default_grid());
    const ModeSpace& m = rep.modes();
    const double phi = pi / 2, lambda = 0.5;
    const int j = 0;
    const Mat23 cz = zeta_components(), cr = rotated_zeta_components(phi);
    const CMatrix b = rep.b_op(m.unit(j));
    const CMatrix expected = b * (rep.u_op(cz, warped_eigenoperator(m.xi_momentum(cz, j), lambda)) -
                                  rep.u_op(cr, warped_eigenoperator(m.xi_momentum(cr, j), lambda)));
    const DiscrepancyReport r = lambda_sweep(rep, m.unit(j), phi, {lambda});
    EXPECT_NEAR(r.norms[0], spectral_norm(expected), 1e-12);
    EXPECT_GT(r.norms[0], 0.1);
}

TEST(LambdaSweep, VanishesAsAngleShrinks)
{
    std::mt19937_64 rng(6);
    const FockRep rep(ModeSpace::default_grid());
    const CVector f = random_field(rng, 8);
    const double first = lambda_sweep(rep, f, 0.8, {0.3}).norms[0];
    double prev = first;
    for (double phi : {0.4, 0.2, 0.1, 0.05}) {
        const double n = lambda_sweep(rep, f, phi, {0.3}).norms[0];
        EXPECT_LT(n, prev);
        prev = n;
    }
    EXPECT_LT(prev, 0.1 * first);
}

TEST(LambdaSweep, DerivativeMatchesDifferenceQuotient)
{
    std::mt19937_64 rng(7);
    const FockRep rep(ModeSpace::default_grid());
    const CVector f = random_field(rng, 8);
    const Mat23 c = rotated_zeta_components(0.3);
    const double h = 1e-5;
    const CMatrix fd = (rep.warped_b(f, c, h) - rep.warped_b(f, c, -h)) / (2.0 * h);
    EXPECT_LT((fd - warped_b_derivative(rep, f, c)).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(ConeLocalisation, RotatedWedgesCarryRotatedPairs)
{
    const ChartPtr chart = Chart::minkowski();
    const Wedge w0(standard_pair(chart), {0, 0, 0, 0});
    const double phi = 0.6;
    const Cone c = cone(phi, w0);
    EXPECT_LT((c.plus().pair().C() - rotated_zeta_components(phi)).norm(), 1e-15);
    EXPECT_LT((c.minus().pair().C() - rotated_zeta_components(-phi)).norm(), 1e-15);
    EXPECT_EQ(coherent_class(c.plus()), coherent_class(w0));
    EXPECT_FALSE(includes(c.plus(), w0));
}
