#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "wedgeqft/errors.hpp"
#include "wedgeqft/geometry.hpp"

using namespace wedgeqft;

namespace {

const double inf = std::numeric_limits<double>::infinity();

ChartPtr frw_linear() { return Chart::frw(ScaleFactor::power(1.0), {0.0, inf}, 1.0); }

Coefficient zero() { return [](const Point&) { return 0.0; }; }

ChartPtr malformed(int which)
{
    std::array<Coefficient, 4> f{zero(), zero(), zero(), zero()};
    Coefficient q = zero();
    if (which == 0)
        f[2] = [](const Point& p) { return 0.1 * p.y; };
    else if (which == 1)
        q = [](const Point& p) { return 0.2 * std::sin(p.z); };
    else
        f[0] = [](const Point& p) { return 0.05 * p.z * p.z; };
    return Chart::generic(f, q, {0.5, 2.0}, Interval::line(), "malformed");
}

} // namespace

TEST(Metric, MinkowskiIsDiagonal)
{
    const Mat4 g = metric_tensor(*Chart::minkowski(), {0.3, -1.0, 2.0, 5.0});
    EXPECT_TRUE(g.isApprox(Vec4(1, -1, -1, -1).asDiagonal().toDenseMatrix()));
}

TEST(Metric, KasnerDiagonalEntries)
{
    const double t = 1.7;
    const Mat4 g = metric_tensor(*Chart::kasner(2.0 / 3, 2.0 / 3, -1.0 / 3), {t, 0.4, 1.0, -1.0});
    EXPECT_NEAR(g(0, 0), 1.0, 1e-15);
    EXPECT_NEAR(g(1, 1), -std::pow(t, 4.0 / 3), 1e-13);
    EXPECT_NEAR(g(2, 2), -std::pow(t, 4.0 / 3), 1e-13);
    EXPECT_NEAR(g(3, 3), -std::pow(t, -2.0 / 3), 1e-13);
    EXPECT_EQ((g - Mat4(g.diagonal().asDiagonal())).norm(), 0.0);
}

TEST(Metric, FrwScaleFactor)
{
    const Mat4 g = metric_tensor(*frw_linear(), {3.0, 1.0, 2.0, 3.0});
    EXPECT_NEAR((g - Mat4(Vec4(1, -9, -9, -9).asDiagonal())).norm(), 0.0, 1e-13);
}

TEST(Metric, OutsideChartIsDomainError)
{
    EXPECT_THROW(metric_tensor(*frw_linear(), {-1.0, 0, 0, 0}), DomainError);
    EXPECT_THROW(metric_tensor(*Chart::kasner(1, 0, 0, {0.0, inf}, {-1.0, 1.0}), {1.0, 2.0, 0, 0}), DomainError);
}

TEST(Metric, SignatureAtSampledPoints)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0), ut(0.1, 5.0);
    const ChartPtr charts[] = {Chart::minkowski(), Chart::kasner(0.5, 0.3, 0.2), frw_linear(),
                               Chart::frw(ScaleFactor::exponential(0.7), Interval::line(), 0.0)};
    for (const auto& c : charts)
        for (int i = 0; i < 200; ++i) {
            Eigen::SelfAdjointEigenSolver<Mat4> es(metric_tensor(*c, {ut(rng), u(rng), u(rng), u(rng)}));
            int pos = 0, neg = 0;
            for (int k = 0; k < 4; ++k)
                (es.eigenvalues()(k) > 0 ? pos : neg)++;
            EXPECT_EQ(pos, 1);
            EXPECT_EQ(neg, 3);
        }
}

TEST(Admissible, BuiltInFamiliesPass)
{
    EXPECT_TRUE(check_admissible(*Chart::minkowski()).ok());
    EXPECT_TRUE(check_admissible(*Chart::kasner(2.0 / 3, 2.0 / 3, -1.0 / 3)).ok());
    const AdmissibilityReport frw = check_admissible(*frw_linear());
    EXPECT_TRUE(frw.ok());
    EXPECT_TRUE(frw.e3_symmetric);
    EXPECT_FALSE(check_admissible(*Chart::kasner(0.1, 0.2, 0.7)).e3_symmetric);
    EXPECT_GT(frw.points_checked, 0u);
}

TEST(Admissible, GenericTimeAndXDependentChartPasses)
{
    std::array<Coefficient, 4> f{[](const Point& p) { return 0.3 * std::sin(p.t + p.x); },
                                 [](const Point& p) { return 0.2 * p.t * std::cos(p.x); },
                                 [](const Point& p) { return 0.1 * p.x - 0.4 * p.t; },
                                 [](const Point& p) { return std::log(1.0 + p.t * p.t + 0.1 * p.x * p.x); }};
    Coefficient q = [](const Point& p) { return 0.5 * std::tanh(p.t - p.x); };
    const ChartPtr c = Chart::generic(f, q, {-2.0, 2.0}, Interval::line(), "generic");
    const AdmissibilityReport r = check_admissible(*c);
    EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations.front().condition);
    EXPECT_FALSE(c->x_killing());
}

TEST(Admissible, MalformedChartsFailWithWitness)
{
    for (int which = 0; which < 3; ++which) {
        const AdmissibilityReport r = check_admissible(*malformed(which));
        ASSERT_FALSE(r.ok()) << which;
        EXPECT_FALSE(r.yz_independent);
        const auto& v = r.violations.front();
        EXPECT_EQ(v.condition, "yz_independence");
        EXPECT_TRUE(malformed(which)->contains(v.witness));
        EXPECT_GT(std::abs(v.value), 1e-8);
    }
}

TEST(Admissible, TabulatedChartPasses)
{
    std::array<std::vector<double>, 4> f;
    std::vector<double> q;
    for (int i = 0; i < 20; ++i) {
        const double t = 0.5 + 0.1 * i;
        f[0].push_back(0.0);
        f[1].push_back(std::log(t));
        f[2].push_back(0.5 * std::log(t));
        f[3].push_back(-0.2 * t);
        q.push_back(0.1 * t);
    }
    const ChartPtr c = Chart::tabulated(0.5, 0.1, f, q, "tab");
    EXPECT_TRUE(check_admissible(*c).ok());
    EXPECT_NEAR(c->f(1, {1.0, 0, 0, 0}), 0.0, 1e-3);
}

TEST(ConformalTime, IdentityScaleFactor)
{
    const ChartPtr m = Chart::minkowski();
    for (double t : {-3.0, 0.0, 0.25, 10.0})
        EXPECT_NEAR(conformal_time(*m, t), t, 1e-14);
}

TEST(ConformalTime, LinearScaleFactorIsLog)
{
    const ChartPtr c = frw_linear();
    for (double t : {1e-3, 0.1, 0.5, 1.0, 2.0, std::exp(1.0), 50.0, 1e4})
        EXPECT_NEAR(conformal_time(*c, t), std::log(t), 1e-10) << t;
}

TEST(ConformalTime, QuadraticScaleFactor)
{
    const ChartPtr c = Chart::frw(ScaleFactor::power(2.0), {0.0, inf}, 1.0);
    for (double t : {0.05, 0.3, 1.0, 4.0, 100.0})
        EXPECT_NEAR(conformal_time(*c, t), 1.0 - 1.0 / t, 1e-10) << t;
}

TEST(ConformalTime, ExponentialAndClosedForms)
{
    const ScaleFactor a = ScaleFactor::exponential(0.5, 2.0);
    const ChartPtr c = Chart::frw(a, Interval::line(), 0.0);
    for (double t : {-4.0, -1.0, 0.0, 3.0, 20.0})
        EXPECT_NEAR(conformal_time(*c, t), (1.0 - std::exp(-0.5 * t)) / (0.5 * 2.0), 1e-10 * std::exp(-0.5 * t))
            << t;
    ASSERT_TRUE(a.conformal_time_exact(0.0, 1.0).has_value());
}

TEST(ConformalTime, TabulatedScaleFactorFollowsSamples)
{
    std::vector<double> v;
    for (int i = 0; i <= 100; ++i)
        v.push_back(0.5 + 0.02 * i);
    const ChartPtr c = Chart::frw(ScaleFactor::tabulated(0.5, 0.02, v), {0.5, 2.5}, 1.0);
    EXPECT_NEAR(conformal_time(*c, 2.0), std::log(2.0), 1e-8);
}

TEST(ConformalTime, InverseRoundTrip)
{
    const ChartPtr c = Chart::frw(ScaleFactor::power(0.5), {0.0, inf}, 1.0);
    const FrwData& d = *c->frw_data();
    for (double t : {1e-4, 0.2, 1.0, 7.5, 300.0})
        EXPECT_NEAR(d.time_of_tau(d.conformal_time(t)), t, 1e-10 * std::max(1.0, t));
}

TEST(ConformalTime, Errors)
{
    EXPECT_THROW(conformal_time(*frw_linear(), -1.0), DomainError);
    EXPECT_THROW(conformal_time(*Chart::kasner(1, 0, 0), 1.0), UnsupportedError);
}

TEST(Causal, Examples)
{
    const ChartPtr m = Chart::minkowski();
    const CausalQuery same = causal_query(*m, {1, 2, 3, 4}, {1, 2, 3, 4});
    EXPECT_EQ(same.relation, CausalRelation::NullRelated);
    EXPECT_TRUE(same.zero_separation);
    EXPECT_EQ(causal_relation(*m, {0, 0, 0, 0}, {1, 0.5, 0, 0}), CausalRelation::TimelikeRelated);
    EXPECT_EQ(causal_relation(*m, {0, 0, 0, 0}, {1, 0, 1, 0}), CausalRelation::NullRelated);
    EXPECT_EQ(causal_relation(*m, {0, 0, 0, 0}, {1, 0, 0, 2}), CausalRelation::Spacelike);
    EXPECT_EQ(causal_relation(*frw_linear(), {1, 0, 0, 0}, {std::exp(1.0), 0.5, 0, 0}),
              CausalRelation::TimelikeRelated);
    EXPECT_THROW(causal_relation(*Chart::kasner(1, 0, 0), {1, 0, 0, 0}, {2, 0, 0, 0}), UnsupportedError);
}

TEST(Causal, SymmetricInSpacelikeDistinction)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(0.01, 10.0), ux(-3.0, 3.0);
    const ChartPtr c = frw_linear();
    for (int i = 0; i < 5000; ++i) {
        const Point p{ut(rng), ux(rng), ux(rng), ux(rng)}, q{ut(rng), ux(rng), ux(rng), ux(rng)};
        EXPECT_EQ(causal_relation(*c, p, q) == CausalRelation::Spacelike,
                  causal_relation(*c, q, p) == CausalRelation::Spacelike);
    }
}

TEST(Causal, ConstantScaleFactorMatchesMinkowskiIntervalSign)
{
    const double a = 2.0;
    const ChartPtr c = Chart::frw(ScaleFactor::constant(a), Interval::line(), 0.0);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    int mismatches = 0;
    for (int i = 0; i < 100000; ++i) {
        const Point p{u(rng), u(rng), u(rng), u(rng)}, q{u(rng), u(rng), u(rng), u(rng)};
        const double dt = q.t - p.t;
        const double interval = dt * dt - a * a * (q.spatial() - p.spatial()).squaredNorm();
        const CausalRelation expect = interval > 0 ? CausalRelation::TimelikeRelated : CausalRelation::Spacelike;
        mismatches += causal_relation(*c, p, q) != expect;
    }
    EXPECT_EQ(mismatches, 0);
}

TEST(Geometry, RotationXy)
{
    const Mat3 r = rotation_xy(pi / 2);
    EXPECT_NEAR((r * Vec3(1, 0, 0) - Vec3(0, 1, 0)).norm(), 0.0, 1e-15);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-15);
}
