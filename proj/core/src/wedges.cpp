#include "wedgeqft/wedges.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wedgeqft/errors.hpp"

namespace wedgeqft {

namespace {

Vec3 line_representative(Vec3 v)
{
    for (int i = 0; i < 3; ++i) {
        if (std::abs(v(i)) > 1e-12) {
            if (v(i) < 0.0)
                v = -v;
            break;
        }
    }
    return v;
}

const FrwData& require_frw(const Chart& chart)
{
    const FrwData* frw = chart.frw_data();
    if (!frw)
        throw UnsupportedError("wedge predicates are only available on FRW charts");
    return *frw;
}

} // namespace

Vec3 oriented_normal(const KillingPair& xi, const Point& p)
{
    const Mat3 g = -metric_tensor(*xi.chart(), p).block<3, 3>(1, 1);
    const Vec3 c = xi.row(0).cross(xi.row(1));
    Vec3 n = g.ldlt().solve(c);
    n /= std::sqrt(n.dot(g * n));
    // orientation of (grad T, xi_1, xi_2, n): grad T is future pointing and
    // purely temporal, so the sign is that of det(xi_1, xi_2, n) = c.n.
    if (c.dot(n) < 0.0)
        n = -n;
    return n;
}

Edge::Edge(KillingPair xi, Point p) : xi_(std::move(xi)), p_(p) {}

EdgeCanonical Edge::canonical() const
{
    const Chart& chart = *xi_.chart();
    EdgeCanonical e;
    e.tau = chart.frw_data() ? chart.frw_data()->conformal_time(p_.t) : p_.t;
    e.line = line_representative(xi_.row(0).cross(xi_.row(1)).normalized());
    e.offset = e.line.dot(p_.spatial());
    return e;
}

bool Edge::same_as(const Edge& other, double tol) const
{
    const EdgeCanonical a = canonical(), b = other.canonical();
    return std::abs(a.tau - b.tau) <= tol && (a.line - b.line).cwiseAbs().maxCoeff() <= tol &&
           std::abs(a.offset - b.offset) <= tol * std::max(1.0, std::abs(a.offset));
}

Wedge::Wedge(KillingPair xi, Point p) : xi_(std::move(xi)), p_(p)
{
    const Chart& chart = *xi_.chart();
    if (!chart.contains(p_))
        throw DomainError("wedge base point outside chart");
    if (const FrwData* frw = chart.frw_data()) {
        // conformal coordinates: the spatial metric is a multiple of the identity
        n_ = xi_.row(0).cross(xi_.row(1)).normalized();
        tau_p_ = frw->conformal_time(p_.t);
    } else {
        n_ = oriented_normal(xi_, p_);
        tau_p_ = std::numeric_limits<double>::quiet_NaN();
    }
}

WedgeCanonical Wedge::canonical() const { return {tau_p_, n_, n_.dot(p_.spatial())}; }

bool Wedge::same_as(const Wedge& other, double tol) const
{
    const WedgeCanonical a = canonical(), b = other.canonical();
    return std::abs(a.tau - b.tau) <= tol && (a.normal - b.normal).cwiseAbs().maxCoeff() <= tol &&
           std::abs(a.offset - b.offset) <= tol * std::max(1.0, std::abs(a.offset));
}

double Wedge::margin(const Point& q) const
{
    const FrwData& frw = require_frw(chart());
    const double tau_q = frw.conformal_time(q.t);
    return n_.dot(q.spatial() - p_.spatial()) - std::abs(tau_q - tau_p_);
}

bool contains(const Wedge& w, const Point& q) { return w.margin(q) > wedge_tie_tolerance; }

bool closure_contains(const Wedge& w, const Point& q) { return w.margin(q) >= -wedge_tie_tolerance; }

Wedge causal_complement(const Wedge& w) { return Wedge(w.pair().inverted(), w.base()); }

bool includes(const Wedge& w1, const Wedge& w2)
{
    if (w1.pair().chart() != w2.pair().chart())
        throw DomainError("includes: wedges live on different charts");
    if (!closure_contains(w2, w1.base()))
        return false;
    const auto n = relating_gl(w2.pair(), w1.pair());
    return n && n->det() > 0.0;
}

Wedge transform(const Isometry& h, const Wedge& w) { return Wedge(pushforward(h, w.pair()), h.apply(w.base())); }

std::string coherent_class(const Wedge& w)
{
    const Chart& chart = w.chart();
    const SymmetryGroup group = declared_symmetries(chart);
    const std::string family = to_string(chart.family());
    if (group.full_rotations)
        return family + ":single";

    const Vec3 n = w.pair().row(0).cross(w.pair().row(1)).normalized();
    Vec3 best = Vec3::Constant(-2.0);
    for (const Mat3& d : group.discrete) {
        Vec3 m = d * n;
        if (group.continuous_axis >= 0) {
            const int c = group.continuous_axis, a = (c + 1) % 3, b = (c + 2) % 3;
            const double r = std::hypot(m(a), m(b));
            m(a) = r;
            m(b) = 0.0;
        }
        for (double sign : {1.0, -1.0}) {
            Vec3 cand = line_representative(sign * m);
            for (int i = 0; i < 3; ++i)
                cand(i) = std::round(cand(i) * 1e9) / 1e9 + 0.0;
            if (std::lexicographical_compare(best.data(), best.data() + 3, cand.data(), cand.data() + 3))
                best = cand;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s:(%.6f,%.6f,%.6f)", family.c_str(), best(0) + 0.0, best(1) + 0.0,
                  best(2) + 0.0);
    return buf;
}

Cone::Cone(double phi, const Wedge& w0)
    : phi_(phi), w0_(w0), plus_(w0), minus_(w0)
{
    if (!(std::abs(phi) < pi / 2.0))
        throw DomainError("cone angle must satisfy |phi| < pi/2");
    require_frw(w0.chart());
    plus_ = transform(Isometry::rotation(rotation_xy(phi)), w0);
    minus_ = transform(Isometry::rotation(rotation_xy(-phi)), w0);
}

bool Cone::contains(const Point& q) const { return wedgeqft::contains(plus_, q) && wedgeqft::contains(minus_, q); }

bool Cone::reflected_contains(const Point& q) const { return contains(reflect_x(q)); }

Cone cone(double phi, const Wedge& w0) { return Cone(phi, w0); }

Point reflect_x(const Point& q) { return {q.t, -q.x, q.y, q.z}; }

} // namespace wedgeqft
