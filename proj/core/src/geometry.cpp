#include "wedgeqft/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wedgeqft/errors.hpp"

namespace wedgeqft {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

Coefficient constant_coefficient(double v)
{
    return [v](const Point&) { return v; };
}

std::pair<double, double> sample_span(const Interval& iv, double lo, double hi)
{
    if (lo < hi && iv.contains(lo) && iv.contains(hi))
        return {lo, hi};
    if (iv.finite()) {
        const double w = iv.hi - iv.lo;
        return {iv.lo + 0.05 * w, iv.hi - 0.05 * w};
    }
    if (std::isfinite(iv.lo))
        return {iv.lo + 0.1, iv.lo + 5.0};
    if (std::isfinite(iv.hi))
        return {iv.hi - 5.0, iv.hi - 0.1};
    return {-5.0, 5.0};
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v;
    if (n <= 1) {
        v.push_back(0.5 * (lo + hi));
        return v;
    }
    for (int i = 0; i < n; ++i)
        v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

} // namespace

std::string to_string(ChartFamily family)
{
    switch (family) {
    case ChartFamily::generic: return "generic";
    case ChartFamily::minkowski: return "minkowski";
    case ChartFamily::kasner: return "kasner";
    case ChartFamily::frw: return "frw";
    case ChartFamily::tabulated: return "tabulated";
    }
    return "unknown";
}

std::string to_string(CausalRelation rel)
{
    switch (rel) {
    case CausalRelation::TimelikeRelated: return "TimelikeRelated";
    case CausalRelation::NullRelated: return "NullRelated";
    case CausalRelation::Spacelike: return "Spacelike";
    }
    return "unknown";
}

ScaleFactor ScaleFactor::power(double exponent, double amplitude)
{
    if (!(amplitude > 0.0))
        throw DomainError("scale factor amplitude must be positive");
    ScaleFactor s;
    s.kind_ = Kind::power;
    s.p_ = exponent;
    s.amp_ = amplitude;
    s.fn_ = [exponent, amplitude](double t) { return amplitude * std::pow(t, exponent); };
    s.domain_ = {0.0, inf};
    return s;
}

ScaleFactor ScaleFactor::constant(double value)
{
    if (!(value > 0.0))
        throw DomainError("constant scale factor must be positive");
    ScaleFactor s;
    s.kind_ = Kind::constant;
    s.amp_ = value;
    s.fn_ = [value](double) { return value; };
    s.domain_ = Interval::line();
    return s;
}

ScaleFactor ScaleFactor::exponential(double rate, double amplitude)
{
    if (!(amplitude > 0.0))
        throw DomainError("scale factor amplitude must be positive");
    ScaleFactor s;
    s.kind_ = Kind::exponential;
    s.p_ = rate;
    s.amp_ = amplitude;
    s.fn_ = [rate, amplitude](double t) { return amplitude * std::exp(rate * t); };
    s.domain_ = Interval::line();
    return s;
}

ScaleFactor ScaleFactor::tabulated(double t_first, double step, std::vector<double> values)
{
    if (values.size() < 4 || !(step > 0.0))
        throw DomainError("tabulated scale factor needs >= 4 uniformly spaced samples");
    for (double v : values)
        if (!(v > 0.0))
            throw DomainError("tabulated scale factor samples must be positive");
    auto spline = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
        values.begin(), values.end(), t_first, step);
    ScaleFactor s;
    s.kind_ = Kind::tabulated;
    s.fn_ = [spline](double t) { return (*spline)(t); };
    s.domain_ = {t_first, t_first + step * static_cast<double>(values.size() - 1)};
    return s;
}

std::optional<double> ScaleFactor::conformal_time_exact(double t0, double t) const
{
    switch (kind_) {
    case Kind::constant:
        return (t - t0) / amp_;
    case Kind::power:
        if (p_ == 1.0)
            return std::log(t / t0) / amp_;
        return (std::pow(t, 1.0 - p_) - std::pow(t0, 1.0 - p_)) / (amp_ * (1.0 - p_));
    case Kind::exponential:
        if (p_ == 0.0)
            return (t - t0) / amp_;
        return (std::exp(-p_ * t0) - std::exp(-p_ * t)) / (amp_ * p_);
    case Kind::tabulated:
        return std::nullopt;
    }
    return std::nullopt;
}

FrwData::FrwData(ScaleFactor a, Interval J, double t0)
    : a_(std::move(a)), J_(J), t0_(t0)
{
    const Interval nat = a_.natural_domain();
    if (J_.lo < nat.lo || J_.hi > nat.hi || !(J_.lo < J_.hi))
        throw DomainError("FRW interval J is not inside the scale factor's domain");
    if (!J_.contains(t0_))
        throw DomainError("conformal time anchor must lie in J");

    // Doubling steps towards an infinite end, halving gaps towards a finite
    // one, so every t has a node within a factor two of its distance.
    nodes_.push_back(t0_);
    auto usable = [&](double t) {
        const double inv = 1.0 / a_(t);
        return J_.contains(t) && std::isfinite(inv) && inv > 0.0;
    };
    for (double dir : {-1.0, 1.0}) {
        const double end = dir < 0 ? J_.lo : J_.hi;
        if (std::isfinite(end)) {
            const double span = std::abs(end - t0_);
            double prev = t0_;
            for (int k = 1; k < 80; ++k) {
                const double t = t0_ + dir * span * (1.0 - std::ldexp(1.0, -k));
                if (t == prev || !usable(t))
                    break;
                nodes_.push_back(t);
                prev = t;
            }
        } else {
            for (double reach = 1.0 / 16.0; reach < 0x1p40; reach *= 2.0) {
                const double t = t0_ + dir * reach;
                if (!usable(t))
                    break;
                nodes_.push_back(t);
            }
        }
    }
    std::sort(nodes_.begin(), nodes_.end());
    const auto centre = std::find(nodes_.begin(), nodes_.end(), t0_) - nodes_.begin();
    node_tau_.assign(nodes_.size(), 0.0);
    for (auto i = centre + 1; i < static_cast<std::ptrdiff_t>(nodes_.size()); ++i)
        node_tau_[i] = node_tau_[i - 1] + integrate(nodes_[i - 1], nodes_[i]);
    for (auto i = centre - 1; i >= 0; --i)
        node_tau_[i] = node_tau_[i + 1] - integrate(nodes_[i], nodes_[i + 1]);

    auto end_tau = [&](double t_end, double node, double node_tau) {
        if (!std::isfinite(t_end)) {
            auto exact = a_.conformal_time_exact(t0_, t_end);
            return exact && !std::isnan(*exact) ? *exact : (t_end > 0 ? inf : -inf);
        }
        if (auto exact = a_.conformal_time_exact(t0_, t_end); exact && std::isfinite(*exact))
            return *exact;
        return node_tau + integrate(node, t_end);
    };
    tau_range_ = {end_tau(J_.lo, nodes_.front(), node_tau_.front()),
                  end_tau(J_.hi, nodes_.back(), node_tau_.back())};
}

double FrwData::integrate(double from, double to) const
{
    if (from == to)
        return 0.0;
    // Mapped to [0,1]: the library's error estimate is not scale invariant.
    const double w = to - from;
    auto inv = [&](double u) { return w / a_(from + w * u); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inv, 0.0, 1.0, 12, 1e-13);
}

double FrwData::conformal_time(double t) const
{
    if (!J_.contains(t))
        throw DomainError("conformal_time: t outside J");
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
    std::size_t i;
    if (it == nodes_.end())
        i = nodes_.size() - 1;
    else if (it == nodes_.begin())
        i = 0;
    else {
        i = static_cast<std::size_t>(it - nodes_.begin());
        if (t - nodes_[i - 1] < nodes_[i] - t)
            --i;
    }
    // Past the outermost node: continue in doubling segments.
    double from = nodes_[i];
    double acc = node_tau_[i];
    while (std::abs(t - from) > std::max(1.0, std::abs(from))) {
        const double next = from + std::copysign(std::max(1.0, std::abs(from)), t - from);
        acc += integrate(from, next);
        from = next;
    }
    return acc + integrate(from, t);
}

double FrwData::time_of_tau(double tau) const
{
    if (!tau_range_.contains(tau))
        throw DomainError("time_of_tau: tau outside the conformal range of J");
    double lo = J_.lo, hi = J_.hi;
    double t = t0_;
    for (int iter = 0; iter < 300; ++iter) {
        const double g = conformal_time(t) - tau;
        if (std::abs(g) <= 4e-16 * std::max(1.0, std::abs(tau)))
            return t;
        if (g < 0.0)
            lo = t;
        else
            hi = t;
        double next = t - g * a_(t);
        if (!(next > lo && next < hi)) {
            if (std::isfinite(lo) && std::isfinite(hi))
                next = 0.5 * (lo + hi);
            else if (std::isfinite(lo))
                next = t + 2.0 * std::max(std::abs(t - lo), 1.0);
            else
                next = t - 2.0 * std::max(std::abs(hi - t), 1.0);
        }
        if (next == t)
            return t;
        t = next;
    }
    return t;
}

std::shared_ptr<const Chart> Chart::minkowski()
{
    auto c = std::shared_ptr<Chart>(new Chart());
    c->family_ = ChartFamily::minkowski;
    c->name_ = "minkowski";
    for (auto& f : c->f_)
        f = constant_coefficient(0.0);
    c->q_ = constant_coefficient(0.0);
    c->x_killing_ = true;
    c->frw_ = std::make_shared<FrwData>(ScaleFactor::constant(1.0), Interval::line(), 0.0);
    return c;
}

std::shared_ptr<const Chart> Chart::kasner(double p1, double p2, double p3, Interval J, Interval x_range)
{
    if (!(J.lo >= 0.0))
        throw DomainError("kasner time interval must lie in t > 0");
    auto c = std::shared_ptr<Chart>(new Chart());
    c->family_ = ChartFamily::kasner;
    c->name_ = "kasner";
    c->t_range_ = J;
    c->x_range_ = x_range;
    c->f_[0] = constant_coefficient(0.0);
    const double p[3] = {p1, p2, p3};
    for (int i = 0; i < 3; ++i) {
        const double e = p[i];
        c->f_[i + 1] = [e](const Point& pt) { return e * std::log(pt.t); };
    }
    c->q_ = constant_coefficient(0.0);
    c->x_killing_ = true;
    c->kasner_p_ = Vec3(p1, p2, p3);
    return c;
}

std::shared_ptr<const Chart> Chart::frw(ScaleFactor a, Interval J, std::optional<double> t0)
{
    double anchor;
    if (t0)
        anchor = *t0;
    else if (J.finite())
        anchor = 0.5 * (J.lo + J.hi);
    else if (std::isfinite(J.lo))
        anchor = J.lo + 1.0;
    else if (std::isfinite(J.hi))
        anchor = J.hi - 1.0;
    else
        anchor = 0.0;
    auto c = std::shared_ptr<Chart>(new Chart());
    c->family_ = ChartFamily::frw;
    c->name_ = "frw";
    c->t_range_ = J;
    c->frw_ = std::make_shared<FrwData>(a, J, anchor);
    auto af = c->frw_;
    c->f_[0] = constant_coefficient(0.0);
    for (int i = 1; i < 4; ++i)
        c->f_[i] = [af](const Point& pt) { return std::log(af->scale_factor()(pt.t)); };
    c->q_ = constant_coefficient(0.0);
    c->x_killing_ = true;
    return c;
}

std::shared_ptr<const Chart> Chart::generic(std::array<Coefficient, 4> f, Coefficient q,
                                            Interval t_range, Interval x_range, std::string name)
{
    auto c = std::shared_ptr<Chart>(new Chart());
    c->family_ = ChartFamily::generic;
    c->name_ = std::move(name);
    c->f_ = std::move(f);
    c->q_ = std::move(q);
    c->t_range_ = t_range;
    c->x_range_ = x_range;
    return c;
}

std::shared_ptr<const Chart> Chart::tabulated(double t_first, double step,
                                              std::array<std::vector<double>, 4> f,
                                              std::vector<double> q, std::string name)
{
    using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
    auto make = [&](const std::vector<double>& v) -> Coefficient {
        if (v.size() < 4)
            throw DomainError("tabulated chart needs >= 4 samples per coefficient");
        auto s = std::make_shared<Spline>(v.begin(), v.end(), t_first, step);
        return [s](const Point& p) { return (*s)(p.t); };
    };
    auto c = std::shared_ptr<Chart>(new Chart());
    c->family_ = ChartFamily::tabulated;
    c->name_ = std::move(name);
    std::size_t n = f[0].size();
    for (int i = 0; i < 4; ++i) {
        if (f[i].size() != n)
            throw DomainError("tabulated chart coefficients must share one grid");
        c->f_[i] = make(f[i]);
    }
    c->q_ = q.empty() ? constant_coefficient(0.0) : make(q);
    if (!q.empty() && q.size() != n)
        throw DomainError("tabulated chart coefficients must share one grid");
    c->t_range_ = {t_first, t_first + step * static_cast<double>(n - 1)};
    c->x_killing_ = true;
    return c;
}

Point Chart::reference_point() const
{
    auto [t0, t1] = sample_span(t_range_, 0.0, 0.0);
    auto [x0, x1] = sample_span(x_range_, 0.0, 0.0);
    return {0.5 * (t0 + t1), 0.5 * (x0 + x1), 0.0, 0.0};
}

Mat4 metric_tensor(const Chart& chart, const Point& p)
{
    if (!chart.contains(p))
        throw DomainError("metric_tensor: point outside chart '" + chart.name() + "'");
    const double e0 = std::exp(2.0 * chart.f(0, p));
    const double e1 = std::exp(2.0 * chart.f(1, p));
    const double e2 = std::exp(2.0 * chart.f(2, p));
    const double e3 = std::exp(2.0 * chart.f(3, p));
    const double q = chart.q(p);
    Mat4 g = Mat4::Zero();
    g(0, 0) = e0;
    g(1, 1) = -e1;
    g(2, 2) = -(e2 + q * q * e3);
    g(3, 3) = -e3;
    g(2, 3) = g(3, 2) = q * e3;
    return g;
}

double conformal_time(const Chart& chart, double t)
{
    const FrwData* frw = chart.frw_data();
    if (!frw)
        throw UnsupportedError("conformal_time requires an FRW chart");
    return frw->conformal_time(t);
}

CausalQuery causal_query(const Chart& chart, const Point& p, const Point& q)
{
    const FrwData* frw = chart.frw_data();
    if (!frw)
        throw UnsupportedError("causal predicates are only available on FRW charts");
    if (!chart.contains(p) || !chart.contains(q))
        throw DomainError("causal_relation: point outside chart");
    CausalQuery r;
    r.dtau = std::abs(frw->conformal_time(p.t) - frw->conformal_time(q.t));
    r.dx = (p.spatial() - q.spatial()).norm();
    if (r.dtau == 0.0 && r.dx == 0.0) {
        r.relation = CausalRelation::NullRelated;
        r.zero_separation = true;
        return r;
    }
    const double tol = 1e-12 * std::max({1.0, r.dtau, r.dx});
    if (std::abs(r.dtau - r.dx) <= tol)
        r.relation = CausalRelation::NullRelated;
    else if (r.dtau > r.dx)
        r.relation = CausalRelation::TimelikeRelated;
    else
        r.relation = CausalRelation::Spacelike;
    return r;
}

CausalRelation causal_relation(const Chart& chart, const Point& p, const Point& q)
{
    return causal_query(chart, p, q).relation;
}

AdmissibilityReport check_admissible(const Chart& chart, const SampleGrid& grid)
{
    AdmissibilityReport rep;
    auto [t0, t1] = sample_span(chart.t_range(), grid.t_lo, grid.t_hi);
    auto [x0, x1] = sample_span(chart.x_range(), grid.x_lo, grid.x_hi);
    const auto ts = linspace(t0, t1, grid.nt);
    const auto xs = linspace(x0, x1, grid.nx);
    const auto yz = linspace(-grid.yz_extent, grid.yz_extent, grid.nyz);
    const double h = 1e-4;
    const double lie_tol = 1e-8;

    auto flag = [&](bool& field, const std::string& cond, const Point& p, double v) {
        if (field)
            rep.violations.push_back({cond, p, v});
        field = false;
    };

    bool e3 = chart.e3_symmetric();
    for (double t : ts)
        for (double x : xs) {
            const Point base{t, x, 0.0, 0.0};
            const Mat4 g0 = metric_tensor(chart, base);
            for (double y : yz)
                for (double z : yz) {
                    const Point p{t, x, y, z};
                    ++rep.points_checked;
                    const Mat4 g = metric_tensor(chart, p);
                    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());

                    const double dep = (g - g0).cwiseAbs().maxCoeff();
                    if (dep > 1e-12 * scale)
                        flag(rep.yz_independent, "yz_independence", p, dep);

                    for (int axis : {2, 3}) {
                        Point pp = p, pm = p;
                        (axis == 2 ? pp.y : pp.z) += h;
                        (axis == 2 ? pm.y : pm.z) -= h;
                        const double lie =
                            ((metric_tensor(chart, pp) - metric_tensor(chart, pm)) / (2.0 * h))
                                .cwiseAbs()
                                .maxCoeff();
                        if (lie > lie_tol)
                            flag(rep.killing, axis == 2 ? "killing_dy" : "killing_dz", p, lie);
                    }

                    if (!(g(2, 2) < 0.0))
                        flag(rep.spacelike, "spacelike_dy", p, g(2, 2));
                    if (!(g(3, 3) < 0.0))
                        flag(rep.spacelike, "spacelike_dz", p, g(3, 3));

                    const double gram = g(2, 2) * g(3, 3) - g(2, 3) * g(3, 2);
                    if (!(gram > 1e-12 * std::abs(g(2, 2) * g(3, 3))))
                        flag(rep.independent, "linear_independence", p, gram);

                    Eigen::SelfAdjointEigenSolver<Mat4> es(g, Eigen::EigenvaluesOnly);
                    const auto& ev = es.eigenvalues();
                    const int pos = static_cast<int>((ev.array() > 0.0).count());
                    const int neg = static_cast<int>((ev.array() < 0.0).count());
                    if (pos != 1 || neg != 3)
                        flag(rep.signature, "signature", p, static_cast<double>(pos));

                    if (e3) {
                        const Mat3 s = -g.block<3, 3>(1, 1);
                        const double iso = (s - s(0, 0) * Mat3::Identity()).cwiseAbs().maxCoeff();
                        const Mat4 gx = metric_tensor(chart, Point{t, 0.0, y, z});
                        if (iso > 1e-12 * scale || (g - gx).cwiseAbs().maxCoeff() > 1e-12 * scale)
                            e3 = false;
                    }
                }
        }
    rep.e3_symmetric = e3;
    return rep;
}

Mat3 rotation_xy(double phi)
{
    Mat3 r;
    const double c = std::cos(phi), s = std::sin(phi);
    r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
    return r;
}

} // namespace wedgeqft
