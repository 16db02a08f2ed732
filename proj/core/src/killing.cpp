#include "wedgeqft/killing.hpp"

#include <algorithm>
#include <cmath>

#include "wedgeqft/errors.hpp"

namespace wedgeqft {

namespace {

bool is_rotation(const Mat3& r)
{
    return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-10 &&
           std::abs(r.determinant() - 1.0) < 1e-10;
}

std::vector<Mat3> signed_permutations()
{
    std::vector<Mat3> out;
    int perm[3] = {0, 1, 2};
    do {
        for (int signs = 0; signs < 8; ++signs) {
            Mat3 m = Mat3::Zero();
            for (int i = 0; i < 3; ++i)
                m(i, perm[i]) = (signs >> i) & 1 ? -1.0 : 1.0;
            if (m.determinant() > 0.0)
                out.push_back(m);
        }
    } while (std::next_permutation(perm, perm + 3));
    return out;
}

Mat3 axis_rotation(int axis, double theta)
{
    const double c = std::cos(theta), s = std::sin(theta);
    const int a = (axis + 1) % 3, b = (axis + 2) % 3;
    Mat3 r = Mat3::Identity();
    r(a, a) = c;
    r(a, b) = -s;
    r(b, a) = s;
    r(b, b) = c;
    return r;
}

// N with target = N * source if the row spaces agree.
std::optional<GL2> solve_gl(const Mat23& source, const Mat23& target)
{
    const Mat2 gram = source * source.transpose();
    const Mat2 n = target * source.transpose() * gram.inverse();
    const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
    if ((n * source - target).cwiseAbs().maxCoeff() > 1e-10 * scale)
        return std::nullopt;
    if (std::abs(n.determinant()) < 1e-14)
        return std::nullopt;
    return GL2(n);
}

std::vector<Point> chart_samples(const Chart& chart)
{
    const Point ref = chart.reference_point();
    std::vector<Point> pts;
    const double dts[] = {-0.3, 0.0, 0.4};
    for (double dt : dts) {
        Point p = ref;
        const double scale = std::max(1.0, std::abs(ref.t));
        p.t = ref.t + dt * scale * 0.5;
        if (!chart.t_range().contains(p.t))
            p.t = ref.t;
        pts.push_back(Point{p.t, ref.x, 0.7, -1.3});
        pts.push_back(Point{p.t, ref.x + 0.25, -2.0, 0.5});
    }
    return pts;
}

} // namespace

GL2::GL2(const Mat2& n) : N(n)
{
    if (!std::isfinite(n.determinant()) || std::abs(n.determinant()) < 1e-14)
        throw InvariantError("GL2 matrix is singular");
}

Isometry::Isometry(const Mat3& r, const Vec3& shift) : R(r), b(shift)
{
    if (!is_rotation(r))
        throw InvariantError("isometry rotation part is not in SO(3)");
}

KillingPair::KillingPair(ChartPtr chart, const Mat23& c) : chart_(std::move(chart)), C_(c)
{
    if (!chart_)
        throw DomainError("Killing pair needs a chart");
    Eigen::FullPivLU<Mat23> lu(C_);
    lu.setThreshold(1e-12);
    if (lu.rank() != 2)
        throw InvariantError("Killing pair rows must be linearly independent");
    if (!chart_->x_killing() && (C_(0, 0) != 0.0 || C_(1, 0) != 0.0))
        throw InvariantError("d_x is not a Killing field of chart '" + chart_->name() + "'");
    const Mat4 g = metric_tensor(*chart_, chart_->reference_point());
    for (int i = 0; i < 2; ++i) {
        const Vec3 v = row(i);
        const double norm = v.dot(g.block<3, 3>(1, 1) * v);
        if (!(norm < 0.0))
            throw InvariantError("Killing pair member is not spacelike");
    }
}

KillingPair KillingPair::inverted() const { return act_gl(GL2::flip(), *this); }

KillingPair standard_pair(ChartPtr chart)
{
    Mat23 c;
    c << 0.0, 1.0, 0.0, 0.0, 0.0, 1.0;
    return KillingPair(std::move(chart), c);
}

Point flow(const KillingPair& xi, const Vec2& s, const Point& p)
{
    const Chart& chart = *xi.chart();
    if (!chart.contains(p))
        throw DomainError("flow: point outside chart");
    const Vec3 v = xi.C().transpose() * s;
    Point out{p.t, p.x + v(0), p.y + v(1), p.z + v(2)};
    if (!chart.x_range().contains(out.x)) {
        const Interval& r = chart.x_range();
        const double edge = v(0) > 0.0 ? r.hi : r.lo;
        throw RangeError("flow leaves the chart's x range", (edge - p.x) / v(0));
    }
    return out;
}

KillingPair act_gl(const GL2& n, const KillingPair& xi) { return KillingPair(xi.chart(), n.N * xi.C()); }

bool is_isometry(const Chart& chart, const Isometry& h)
{
    for (const Point& p : chart_samples(chart)) {
        const Point hp = h.apply(p);
        if (!chart.contains(hp))
            return false;
        const Mat3 g = metric_tensor(chart, p).block<3, 3>(1, 1);
        const Mat3 gh = metric_tensor(chart, hp).block<3, 3>(1, 1);
        const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
        if ((h.R.transpose() * gh * h.R - g).cwiseAbs().maxCoeff() > 1e-10 * scale)
            return false;
    }
    return true;
}

KillingPair pushforward(const Isometry& h, const KillingPair& xi)
{
    if (!is_isometry(*xi.chart(), h))
        throw UnsupportedError("isometry is not a symmetry of chart '" + xi.chart()->name() + "'");
    return KillingPair(xi.chart(), xi.C() * h.R.transpose());
}

SymmetryGroup declared_symmetries(const Chart& chart)
{
    SymmetryGroup g;
    if (chart.e3_symmetric()) {
        g.full_rotations = true;
        g.discrete.push_back(Mat3::Identity());
        return g;
    }
    if (chart.family() == ChartFamily::kasner) {
        const Vec3& p = chart.kasner_exponents();
        if (p(0) == p(1) && p(1) == p(2)) {
            g.full_rotations = true;
            g.discrete.push_back(Mat3::Identity());
            return g;
        }
        for (const Mat3& m : signed_permutations()) {
            bool ok = true;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (m(i, j) != 0.0 && p(i) != p(j))
                        ok = false;
            if (ok)
                g.discrete.push_back(m);
        }
        for (int axis = 0; axis < 3; ++axis)
            if (p((axis + 1) % 3) == p((axis + 2) % 3))
                g.continuous_axis = axis;
        return g;
    }
    g.discrete.push_back(Mat3::Identity());
    Mat3 flip = Mat3::Identity();
    flip(1, 1) = flip(2, 2) = -1.0;
    if (is_isometry(chart, Isometry::rotation(flip)))
        g.discrete.push_back(flip);
    return g;
}

std::optional<GL2> relating_gl(const KillingPair& source, const KillingPair& target)
{
    return solve_gl(source.C(), target.C());
}

Mat3 rotation_between(const Vec3& a, const Vec3& b)
{
    const Vec3 u = a.normalized(), w = b.normalized();
    const Vec3 axis = u.cross(w);
    const double s = axis.norm(), c = u.dot(w);
    if (s < 1e-14) {
        if (c > 0.0)
            return Mat3::Identity();
        // half turn about any axis orthogonal to u
        Vec3 perp = std::abs(u(0)) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
        perp = (perp - perp.dot(u) * u).normalized();
        return 2.0 * perp * perp.transpose() - Mat3::Identity();
    }
    Mat3 k;
    k << 0.0, -axis(2), axis(1), axis(2), 0.0, -axis(0), -axis(1), axis(0), 0.0;
    k /= s;
    return Mat3::Identity() + s * k + (1.0 - c) * k * k;
}

std::optional<EquivalenceWitness> equivalent(const KillingPair& xi, const KillingPair& xi_tilde)
{
    if (xi.chart() != xi_tilde.chart())
        throw DomainError("equivalent: Killing pairs live on different charts");
    const Chart& chart = *xi.chart();
    const SymmetryGroup group = declared_symmetries(chart);
    const Vec3 n = xi.row(0).cross(xi.row(1)).normalized();
    const Vec3 nt = xi_tilde.row(0).cross(xi_tilde.row(1)).normalized();

    auto attempt = [&](const Mat3& r) -> std::optional<EquivalenceWitness> {
        const Mat23 pushed = xi.C() * r.transpose();
        if (auto gl = solve_gl(pushed, xi_tilde.C()))
            return EquivalenceWitness{Isometry::rotation(r), *gl};
        return std::nullopt;
    };

    if (group.full_rotations) {
        for (double sign : {1.0, -1.0})
            if (auto w = attempt(rotation_between(n, sign * nt)))
                return w;
        return std::nullopt;
    }
    for (const Mat3& d : group.discrete) {
        if (auto w = attempt(d))
            return w;
        if (group.continuous_axis >= 0) {
            const int c = group.continuous_axis, a = (c + 1) % 3, b = (c + 2) % 3;
            const Vec3 m = d * n;
            for (double sign : {1.0, -1.0}) {
                const Vec3 target = sign * nt;
                const double rm = std::hypot(m(a), m(b)), rt = std::hypot(target(a), target(b));
                if (std::abs(m(c) - target(c)) > 1e-10 || std::abs(rm - rt) > 1e-10)
                    continue;
                const double theta = std::atan2(target(b), target(a)) - std::atan2(m(b), m(a));
                if (auto w = attempt(axis_rotation(c, theta) * d))
                    return w;
            }
        }
    }
    return std::nullopt;
}

} // namespace wedgeqft
