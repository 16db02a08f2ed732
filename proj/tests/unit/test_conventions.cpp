#include <gtest/gtest.h>

#include "wedgeqft/convention_oracle.hpp"
#include "wedgeqft/starprod.hpp"

using namespace wedgeqft;

TEST(Conventions, PinnedValuesMatchFreshOracleRun)
{
    const ConventionReport rep = pin_conventions(CutoffFunction{}, QuadratureConfig{});
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.sigma, sigma());
    EXPECT_EQ(rep.sigma_prime, sigma_prime());
    EXPECT_EQ(rep.poisson_c, poisson_constant());
    EXPECT_LT(rep.route_disagreement, 1e-8);
}

TEST(Conventions, WarpingSignIsOppositeToStarSign)
{
    // The product law of warped eigenoperators forces sigma' = -sigma.
    EXPECT_EQ(sigma_prime(), -sigma());
    EXPECT_EQ(poisson_constant(), -sigma());
}

TEST(Conventions, MatrixRouteWarpingMatchesClosedForm)
{
    PlaneWaveIntegrals pw(CutoffFunction{}, QuadratureConfig{});
    const auto k = matrix_model_momenta();
    CMatrix f(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            f(i, j) = Complex(0.3 * i - 0.2 * j + 1.0, 0.1 * (i + j));
    const double lambda = 0.3;
    const CMatrix w = warped_matrix_numeric(f, k, lambda, pw);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Vec2 mu = warped_eigenoperator(k[i] - k[j], lambda);
            EXPECT_NEAR(std::abs(w(i, j) - f(i, j) * std::polar(1.0, k[j].dot(mu))), 0.0, 1e-8);
        }
}
