#include "wedgeqft/starprod.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wedgeqft/errors.hpp"
#include "wedgeqft/pinned_conventions.hpp"

namespace wedgeqft {

int sigma() { return pinned::sigma; }
int sigma_prime() { return pinned::sigma_prime; }
int poisson_constant() { return pinned::poisson_c; }

namespace {

Complex central_difference(const std::function<Complex(double)>& f, double x)
{
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace

PlaneWaveSum::PlaneWaveSum(std::vector<Term> terms) : terms_(std::move(terms)) { canonicalize(); }

void PlaneWaveSum::canonicalize()
{
    auto less = [](const Vec2& a, const Vec2& b) { return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1)); };
    std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) { return less(a.first, b.first); });
    std::vector<Term> merged;
    for (const Term& t : terms_) {
        if (!merged.empty() && merged.back().first == t.first)
            merged.back().second += t.second;
        else
            merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Term& t) { return t.second == Complex{}; }),
                 merged.end());
    terms_ = std::move(merged);
}

Complex PlaneWaveSum::operator()(const Vec2& s) const
{
    Complex v{};
    for (const auto& [k, c] : terms_)
        v += c * std::polar(1.0, k.dot(s));
    return v;
}

Eigen::Vector2cd PlaneWaveSum::gradient(const Vec2& s) const
{
    Eigen::Vector2cd g = Eigen::Vector2cd::Zero();
    for (const auto& [k, c] : terms_) {
        const Complex e = Complex(0.0, 1.0) * c * std::polar(1.0, k.dot(s));
        g(0) += e * k(0);
        g(1) += e * k(1);
    }
    return g;
}

PlaneWaveSum PlaneWaveSum::conj() const
{
    std::vector<Term> t;
    for (const auto& [k, c] : terms_)
        t.emplace_back(-k, std::conj(c));
    return PlaneWaveSum(std::move(t));
}

PlaneWaveSum PlaneWaveSum::operator+(const PlaneWaveSum& o) const
{
    std::vector<Term> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return PlaneWaveSum(std::move(t));
}

PlaneWaveSum PlaneWaveSum::operator*(const PlaneWaveSum& o) const
{
    std::vector<Term> t;
    for (const auto& [k, c] : terms_)
        for (const auto& [l, d] : o.terms_)
            t.emplace_back(k + l, c * d);
    return PlaneWaveSum(std::move(t));
}

PlaneWaveSum PlaneWaveSum::scaled(Complex c) const
{
    std::vector<Term> t;
    for (const auto& [k, v] : terms_)
        t.emplace_back(k, c * v);
    return PlaneWaveSum(std::move(t));
}

double PlaneWaveSum::bandwidth() const
{
    double b = 0.0;
    for (const auto& term : terms_)
        b = std::max(b, term.first.cwiseAbs().maxCoeff());
    return b;
}

bool PlaneWaveSum::approx_equal(const PlaneWaveSum& o, double tol) const
{
    const PlaneWaveSum d = *this + o.scaled(-1.0);
    for (const auto& term : d.terms())
        if (std::abs(term.second) > tol)
            return false;
    return true;
}

OrbitFunction OrbitFunction::plane_waves(PlaneWaveSum f)
{
    OrbitFunction o;
    o.kind_ = Kind::plane_waves;
    o.waves_ = std::move(f);
    o.bandwidth_ = o.waves_.bandwidth();
    return o;
}

OrbitFunction OrbitFunction::separable(Factor1D f1, Factor1D f2)
{
    OrbitFunction o;
    o.kind_ = Kind::separable;
    o.bandwidth_ = std::max(f1.bandwidth, f2.bandwidth);
    o.factors_[0] = std::move(f1);
    o.factors_[1] = std::move(f2);
    return o;
}

OrbitFunction OrbitFunction::general(std::function<Complex(const Vec2&)> f, double bandwidth)
{
    OrbitFunction o;
    o.kind_ = Kind::general;
    o.fn_ = std::move(f);
    o.bandwidth_ = bandwidth;
    return o;
}

double OrbitFunction::bandwidth() const { return bandwidth_; }

Complex OrbitFunction::operator()(const Vec2& s) const
{
    switch (kind_) {
    case Kind::plane_waves: return waves_(s);
    case Kind::separable: return factors_[0].fn(s(0)) * factors_[1].fn(s(1));
    case Kind::general: return fn_(s);
    }
    return {};
}

Eigen::Vector2cd OrbitFunction::gradient(const Vec2& s) const
{
    if (kind_ == Kind::plane_waves)
        return waves_.gradient(s);
    Eigen::Vector2cd g;
    for (int i = 0; i < 2; ++i) {
        auto along = [&](double v) {
            Vec2 p = s;
            p(i) = v;
            return (*this)(p);
        };
        g(i) = central_difference(along, s(i));
    }
    return g;
}

PlaneWaveSum star_exact(const PlaneWaveSum& f, const PlaneWaveSum& g, double lambda)
{
    const Mat2 q = q_matrix();
    std::vector<PlaneWaveSum::Term> t;
    for (const auto& [k, c] : f.terms())
        for (const auto& [l, d] : g.terms())
            t.emplace_back(k + l, c * d * std::polar(1.0, sigma() * lambda * k.dot(q * l)));
    return PlaneWaveSum(std::move(t));
}

namespace {

// Splits an orbit function into separable terms f1(s1) f2(s2).
std::vector<std::pair<Factor1D, Factor1D>> separable_terms(const OrbitFunction& f)
{
    std::vector<std::pair<Factor1D, Factor1D>> out;
    if (f.is_plane_waves()) {
        for (const auto& [k, c] : f.waves().terms()) {
            Factor1D a = plane_wave_1d(k(0));
            const Complex coeff = c;
            const double k1 = k(1);
            Factor1D b{[coeff, k1](double y) { return coeff * std::polar(1.0, k1 * y); }, std::abs(k1)};
            out.emplace_back(std::move(a), std::move(b));
        }
    } else {
        out.emplace_back(f.factor(0), f.factor(1));
    }
    return out;
}

Factor1D shifted(const Factor1D& f, double origin, double scale)
{
    auto fn = f.fn;
    return {[fn, origin, scale](double v) { return fn(origin + scale * v); }, std::abs(scale) * f.bandwidth};
}

} // namespace

StarResult star_numeric(const OrbitFunction& f, const OrbitFunction& g, double lambda, const CutoffFunction& chi,
                        const QuadratureConfig& cfg, const Vec2& at)
{
    StarResult r;
    if (chi.separable() && f.is_separable() && g.is_separable()) {
        // f(x + lambda Q s) = f1(x1 + lambda s2) f2(x2 - lambda s1)
        for (const auto& [f1, f2] : separable_terms(f))
            for (const auto& [g1, g2] : separable_terms(g)) {
                const OscillatoryResult o = oscillatory_separable(
                    shifted(f2, at(1), -lambda), shifted(f1, at(0), lambda), shifted(g1, at(0), 1.0),
                    shifted(g2, at(1), 1.0), chi, cfg);
                r.value += o.value;
                r.error += o.error;
                r.eps_final = std::max(r.eps_final, o.eps_final);
            }
        return r;
    }
    const Mat2 lq = lambda * q_matrix();
    Factor2D a{[&f, lq, at](const Vec2& s) { return f(at + lq * s); }, std::abs(lambda) * f.bandwidth()};
    Factor2D b{[&g, at](const Vec2& s) { return g(at + s); }, g.bandwidth()};
    const OscillatoryResult o = oscillatory_limit(a, b, chi, cfg);
    return {o.value, o.error, o.eps_final};
}

StarResult star_numeric(const PlaneWaveSum& f, const PlaneWaveSum& g, double lambda, PlaneWaveIntegrals& integrals,
                        const Vec2& at)
{
    const Mat2 q = q_matrix();
    StarResult r;
    for (const auto& [k, c] : f.terms())
        for (const auto& [l, d] : g.terms()) {
            // e_k(x + lambda Q s) e_l(x + s') = e_{k+l}(x) exp(i (lambda Q^T k).s) exp(i l.s')
            const OscillatoryResult o = integrals.limit(Vec2(lambda * q.transpose() * k), l);
            const Complex w = c * d * std::polar(1.0, (k + l).dot(at));
            r.value += w * o.value;
            r.error += std::abs(w) * o.error;
            r.eps_final = std::max(r.eps_final, o.eps_final);
        }
    return r;
}

Vec2 warped_eigenoperator(const Vec2& k, double lambda) { return sigma_prime() * lambda * (q_matrix() * k); }

std::function<Complex(const Vec2&)> poisson_bracket(const OrbitFunction& f, const OrbitFunction& g)
{
    return [f, g](const Vec2& s) {
        const Mat2 q = q_matrix();
        const Eigen::Vector2cd df = f.gradient(s), dg = g.gradient(s);
        Complex v{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                v += q(i, j) * df(i) * dg(j);
        return v;
    };
}

} // namespace wedgeqft
