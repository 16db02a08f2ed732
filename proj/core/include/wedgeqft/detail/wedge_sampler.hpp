#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "wedgeqft/errors.hpp"

namespace wedgeqft {

template <class Rng>
Point sample_wedge_point(const Wedge& w, Rng& rng)
{
    const FrwData* frw = w.chart().frw_data();
    if (!frw)
        throw UnsupportedError("wedge sampling requires an FRW chart");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * unit(rng));
    };
    auto signed_scale = [&](double lo, double hi) {
        return (unit(rng) < 0.5 ? -1.0 : 1.0) * log_uniform(lo, hi);
    };

    const Interval tr = frw->tau_range();
    const double span = std::isfinite(tr.lo) && std::isfinite(tr.hi) ? tr.hi - tr.lo : 100.0;
    const double margin = 1e-6 * std::max(1.0, span);
    const double lo = std::isfinite(tr.lo) ? tr.lo + margin : w.base_tau() - 1e3;
    const double hi = std::isfinite(tr.hi) ? tr.hi - margin : w.base_tau() + 1e3;

    double tau;
    if (unit(rng) < 0.5) {
        tau = lo + (hi - lo) * unit(rng);
    } else {
        tau = w.base_tau() + signed_scale(1e-6, std::max(1e-5, hi - lo));
        tau = std::clamp(tau, lo, hi);
    }

    const Vec3 n = w.normal();
    const Vec3 e1 = (std::abs(n(0)) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).cross(n).normalized();
    const Vec3 e2 = n.cross(e1);
    const double r = log_uniform(1e-6, 1e3);
    const Vec3 x = w.base().spatial() + signed_scale(1e-3, 1e3) * e1 + signed_scale(1e-3, 1e3) * e2 +
                   (std::abs(tau - w.base_tau()) + r) * n;
    return Point::from(frw->time_of_tau(tau), x);
}

} // namespace wedgeqft
