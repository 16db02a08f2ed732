#include "wedgeqft/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>

#include "fft.hpp"
#include "wedgeqft/errors.hpp"

namespace wedgeqft {

namespace {

struct Grid {
    std::size_t n;
    double hy;
    double hx;
};

std::optional<Grid> make_grid(double a_band, double b_band, double eps, double scale,
                              double tail, std::size_t cap)
{
    const double y_max = scale / eps;
    const double spread = tail * eps / scale;
    const double hy = std::min(pi / y_max, 2.0 * pi / (y_max + std::abs(b_band) + spread));
    const double length = std::max(2.0 * y_max, y_max + std::abs(a_band) + spread);
    const double want = std::ceil(length / hy) + 1.0;
    if (want > static_cast<double>(cap))
        return std::nullopt;
    const std::size_t n = detail::smooth_even_size(static_cast<std::size_t>(want));
    if (n > cap)
        return std::nullopt;
    return Grid{n, hy, 2.0 * pi / (static_cast<double>(n) * hy)};
}

inline double parity(std::ptrdiff_t j) { return (j & 1) ? -1.0 : 1.0; }

} // namespace

Factor1D plane_wave_1d(double beta)
{
    return {[beta](double x) { return std::polar(1.0, beta * x); }, std::abs(beta)};
}

Factor2D plane_wave_2d(const Vec2& k)
{
    return {[k](const Vec2& s) { return std::polar(1.0, k.dot(s)); }, k.cwiseAbs().maxCoeff()};
}

std::vector<double> QuadratureConfig::geometric_eps(double first, double last)
{
    if (!(first > 0.0) || !(last > 0.0) || last > first)
        throw DomainError("eps sequence must be positive and decreasing");
    std::vector<double> out;
    for (double e = first; e >= last * (1.0 - 1e-12); e *= 0.5)
        out.push_back(e);
    return out;
}

void QuadratureConfig::validate() const
{
    if (eps.size() < 2)
        throw DomainError("eps sequence needs at least two levels");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0))
            throw DomainError("eps levels must be positive");
        if (i > 0 && !(eps[i] < eps[i - 1]))
            throw DomainError("eps sequence must be strictly decreasing");
    }
    if (!(spectral_tail > 0.0) || !(spectral_tail_2d > 0.0) || !(tolerance > 0.0))
        throw DomainError("spectral_tail and tolerance must be positive");
}

Extrapolation richardson_eps2(const std::vector<double>& eps, const std::vector<Complex>& values)
{
    std::vector<double> h(eps.size());
    std::transform(eps.begin(), eps.end(), h.begin(), [](double e) { return e * e; });
    return extrapolate_to_zero(h, values);
}

Extrapolation extrapolate_to_zero(const std::vector<double>& h, const std::vector<Complex>& values)
{
    const std::size_t n = values.size();
    if (n == 0 || h.size() != n)
        throw DomainError("extrapolate_to_zero: mismatched or empty input");
    if (n == 1)
        return {values[0], std::numeric_limits<double>::infinity()};

    std::vector<std::vector<Complex>> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i].push_back(values[i]);
        const double hi = h[i];
        for (std::size_t j = 1; j <= i; ++j) {
            const double hk = h[i - j];
            t[i].push_back(t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) * (hi / (hk - hi)));
        }
    }

    const auto& last = t[n - 1];
    std::size_t best = 1;
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < last.size(); ++j) {
        double err = std::abs(last[j] - last[j - 1]);
        if (j < t[n - 2].size())
            err = std::max(err, std::abs(last[j] - t[n - 2][j]));
        if (err < best_err) {
            best_err = err;
            best = j;
        }
    }
    const Complex v = last[best];
    return {v, best_err + 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v))};
}

std::size_t grid_size_1d(double a_band, double b_band, double eps, const CutoffFunction& chi,
                         const QuadratureConfig& cfg)
{
    auto g = make_grid(a_band, b_band, eps, chi.scale(), cfg.spectral_tail, cfg.max_grid_1d);
    return g ? g->n : 0;
}

std::size_t grid_size_2d(double a_band, double b_band, double eps, const CutoffFunction& chi,
                         const QuadratureConfig& cfg)
{
    auto g = make_grid(a_band, b_band, eps, chi.scale(), cfg.spectral_tail_2d, cfg.max_grid_2d);
    return g ? g->n : 0;
}

Complex oscillatory_1d(const Factor1D& a, const Factor1D& b, double eps, const CutoffFunction& chi,
                       const QuadratureConfig& cfg)
{
    if (!chi.separable())
        throw UnsupportedError("oscillatory_1d requires the coordinate-product cutoff");
    auto grid = make_grid(a.bandwidth, b.bandwidth, eps, chi.scale(), cfg.spectral_tail,
                          cfg.max_grid_1d);
    if (!grid)
        throw ConvergenceError("oscillatory_1d: grid exceeds max_grid_1d", {eps}, {}, 0.0);
    const auto n = static_cast<std::ptrdiff_t>(grid->n);
    const std::ptrdiff_t half = n / 2;

    detail::ForwardFft fft(grid->n, 1);
    Complex* buf = fft.data();
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const double y = static_cast<double>(j - half) * grid->hy;
        const double w = chi.profile(eps * y);
        buf[j] = w == 0.0 ? Complex{} : w * parity(j) * b.fn(y);
    }
    fft.execute();

    Complex acc{};
    for (std::ptrdiff_t m = 0; m < n; ++m) {
        const double x = static_cast<double>(m - half) * grid->hx;
        const double w = chi.profile(eps * x);
        if (w == 0.0)
            continue;
        acc += w * a.fn(x) * (parity(m - half) * buf[m]);
    }
    return acc * (grid->hx * grid->hy / (2.0 * pi));
}

Complex oscillatory_2d(const Factor2D& a, const Factor2D& b, double eps, const CutoffFunction& chi,
                       const QuadratureConfig& cfg)
{
    auto grid = make_grid(a.bandwidth, b.bandwidth, eps, chi.scale(), cfg.spectral_tail_2d,
                          cfg.max_grid_2d);
    if (!grid)
        throw ConvergenceError("oscillatory_2d: grid exceeds max_grid_2d", {eps}, {}, 0.0);
    const auto n = static_cast<std::ptrdiff_t>(grid->n);
    const std::ptrdiff_t half = n / 2;

    detail::ForwardFft fft(grid->n, 2);
    Complex* buf = fft.data();
    for (std::ptrdiff_t j1 = 0; j1 < n; ++j1) {
        const double y1 = static_cast<double>(j1 - half) * grid->hy;
        for (std::ptrdiff_t j2 = 0; j2 < n; ++j2) {
            const Vec2 y(y1, static_cast<double>(j2 - half) * grid->hy);
            const double w = chi.half(eps * y);
            buf[j1 * n + j2] = w == 0.0 ? Complex{} : w * parity(j1 + j2) * b.fn(y);
        }
    }
    fft.execute();

    Complex acc{};
    for (std::ptrdiff_t m1 = 0; m1 < n; ++m1) {
        const double x1 = static_cast<double>(m1 - half) * grid->hx;
        Complex row{};
        for (std::ptrdiff_t m2 = 0; m2 < n; ++m2) {
            const Vec2 x(x1, static_cast<double>(m2 - half) * grid->hx);
            const double w = chi.half(eps * x);
            if (w == 0.0)
                continue;
            row += w * a.fn(x) * (parity(m1 + m2) * buf[m1 * n + m2]);
        }
        acc += row;
    }
    const double h2 = grid->hx * grid->hy;
    return acc * (h2 * h2 / (4.0 * pi * pi));
}

OscillatoryResult extrapolate(const std::function<Complex(double)>& at_eps,
                              const std::function<std::size_t(double)>& points,
                              const QuadratureConfig& cfg)
{
    cfg.validate();
    OscillatoryResult r;
    std::vector<std::size_t> sizes;
    for (double e : cfg.eps) {
        const std::size_t n = points ? points(e) : 1;
        if (n == 0)
            continue;
        r.eps.push_back(e);
        r.raw.push_back(at_eps(e));
        sizes.push_back(n);
    }
    if (cfg.richardson_levels > 0 && r.eps.size() > static_cast<std::size_t>(cfg.richardson_levels)) {
        const auto drop = static_cast<std::ptrdiff_t>(r.eps.size()) - cfg.richardson_levels;
        r.eps.erase(r.eps.begin(), r.eps.begin() + drop);
        r.raw.erase(r.raw.begin(), r.raw.begin() + drop);
        sizes.erase(sizes.begin(), sizes.begin() + drop);
    }
    if (r.eps.size() < 2)
        throw ConvergenceError("fewer than two feasible eps levels", r.eps, r.raw,
                               std::numeric_limits<double>::infinity());
    const Extrapolation ex = richardson_eps2(r.eps, r.raw);
    double scale = 0.0;
    for (const Complex& v : r.raw)
        scale = std::max(scale, std::abs(v));
    const double roundoff = 2.0 * std::numeric_limits<double>::epsilon() *
                            std::sqrt(static_cast<double>(sizes.back())) * std::max(1.0, scale);
    r.value = ex.value;
    r.error = std::max(ex.error, roundoff);
    r.eps_final = r.eps.back();
    if (!(r.error <= cfg.tolerance * std::max(1.0, std::abs(r.value))))
        throw ConvergenceError("eps extrapolation did not converge", r.eps, r.raw, r.error);
    return r;
}

OscillatoryResult oscillatory_separable(const Factor1D& a1, const Factor1D& a2, const Factor1D& b1,
                                        const Factor1D& b2, const CutoffFunction& chi,
                                        const QuadratureConfig& cfg)
{
    auto feasible = [&](double e) -> std::size_t {
        const std::size_t n1 = grid_size_1d(a1.bandwidth, b1.bandwidth, e, chi, cfg);
        const std::size_t n2 = grid_size_1d(a2.bandwidth, b2.bandwidth, e, chi, cfg);
        return n1 && n2 ? std::max(n1, n2) : 0;
    };
    auto level = [&](double e) {
        return oscillatory_1d(a1, b1, e, chi, cfg) * oscillatory_1d(a2, b2, e, chi, cfg);
    };
    return extrapolate(level, feasible, cfg);
}

OscillatoryResult oscillatory_limit(const Factor2D& a, const Factor2D& b, const CutoffFunction& chi,
                                    const QuadratureConfig& cfg)
{
    auto feasible = [&](double e) {
        const std::size_t n = grid_size_2d(a.bandwidth, b.bandwidth, e, chi, cfg);
        return n * n;
    };
    auto level = [&](double e) { return oscillatory_2d(a, b, e, chi, cfg); };
    return extrapolate(level, feasible, cfg);
}

struct PlaneWaveIntegrals::Impl {
    std::mutex mutex;
    std::map<std::tuple<double, double, double>, Complex> cache;
};

PlaneWaveIntegrals::PlaneWaveIntegrals(CutoffFunction chi, QuadratureConfig cfg)
    : impl_(std::make_shared<Impl>()), chi_(chi), cfg_(std::move(cfg))
{
    cfg_.validate();
}

Complex PlaneWaveIntegrals::level(double alpha, double beta, double eps)
{
    const auto key = std::make_tuple(alpha, beta, eps);
    {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        auto it = impl_->cache.find(key);
        if (it != impl_->cache.end())
            return it->second;
    }
    const Complex v = oscillatory_1d(plane_wave_1d(alpha), plane_wave_1d(beta), eps, chi_, cfg_);
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->cache.emplace(key, v);
    return v;
}

OscillatoryResult PlaneWaveIntegrals::limit(double alpha, double beta)
{
    auto feasible = [&](double e) { return grid_size_1d(alpha, beta, e, chi_, cfg_); };
    return extrapolate([&](double e) { return level(alpha, beta, e); }, feasible, cfg_);
}

OscillatoryResult PlaneWaveIntegrals::limit(const Vec2& a, const Vec2& b)
{
    if (!chi_.separable())
        return oscillatory_limit(plane_wave_2d(a), plane_wave_2d(b), chi_, cfg_);
    auto feasible = [&](double e) -> std::size_t {
        const std::size_t n1 = grid_size_1d(a(0), b(0), e, chi_, cfg_);
        const std::size_t n2 = grid_size_1d(a(1), b(1), e, chi_, cfg_);
        return n1 && n2 ? std::max(n1, n2) : 0;
    };
    auto lvl = [&](double e) { return level(a(0), b(0), e) * level(a(1), b(1), e); };
    return extrapolate(lvl, feasible, cfg_);
}

} // namespace wedgeqft
