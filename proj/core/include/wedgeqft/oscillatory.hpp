#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "wedgeqft/cutoff.hpp"
#include "wedgeqft/types.hpp"

namespace wedgeqft {

// A factor of an oscillatory integrand together with a bound on its
// frequency content (|omega| beyond which its spectrum is negligible).
struct Factor1D {
    std::function<Complex(double)> fn;
    double bandwidth = 0.0;
};

struct Factor2D {
    std::function<Complex(const Vec2&)> fn;
    double bandwidth = 0.0;
};

Factor1D plane_wave_1d(double beta);
Factor2D plane_wave_2d(const Vec2& k);

struct QuadratureConfig {
    std::vector<double> eps = geometric_eps(0.5, 1.0 / 256.0);
    // Frequency (in units of 1/scale) past which the bump spectrum is below
    // double precision.
    double spectral_tail = 900.0;
    // Looser tail for the 2D path, whose target accuracy is ~1e-8.
    double spectral_tail_2d = 150.0;
    std::size_t max_grid_1d = std::size_t{1} << 20;
    std::size_t max_grid_2d = 3000;
    // Number of finest levels fed to the extrapolation table; 0 = all.
    int richardson_levels = 0;
    double tolerance = 1e-6;

    static std::vector<double> geometric_eps(double first, double last);
    void validate() const;
};

struct Extrapolation {
    Complex value;
    double error = 0.0;
};

// Neville extrapolation of values sampled at h_i to h = 0. The returned
// error is the spread of the best entry of the last table row against its
// neighbours.
Extrapolation extrapolate_to_zero(const std::vector<double>& h, const std::vector<Complex>& values);

// Neville extrapolation to eps -> 0 of values assumed to be even functions
// of eps, i.e. polynomials in eps^2 up to the truncation error.
Extrapolation richardson_eps2(const std::vector<double>& eps, const std::vector<Complex>& values);

struct OscillatoryResult {
    Complex value;
    double error = 0.0;
    double eps_final = 0.0;
    std::vector<double> eps;
    std::vector<Complex> raw;
};

// (1/2pi) int dx dy exp(-i x y) phi(eps x) phi(eps y) a(x) b(y), phi the
// one-dimensional profile of the coordinate-product cutoff.
Complex oscillatory_1d(const Factor1D& a, const Factor1D& b, double eps,
                       const CutoffFunction& chi, const QuadratureConfig& cfg);

// (1/4pi^2) int ds ds' exp(-i s.s') chi(eps s, eps s') a(s) b(s').
Complex oscillatory_2d(const Factor2D& a, const Factor2D& b, double eps,
                       const CutoffFunction& chi, const QuadratureConfig& cfg);

// Grid sizes used at a given eps; 0 when the level is infeasible.
std::size_t grid_size_1d(double a_band, double b_band, double eps, const CutoffFunction& chi,
                         const QuadratureConfig& cfg);
std::size_t grid_size_2d(double a_band, double b_band, double eps, const CutoffFunction& chi,
                         const QuadratureConfig& cfg);

// Evaluates `at_eps` on the configured eps levels and extrapolates.
// `points(eps)` is the number of quadrature nodes summed at that level, 0 if
// the level is infeasible; it sets a round-off floor on the error estimate.
// Throws ConvergenceError when fewer than two levels are usable or the error
// estimate exceeds cfg.tolerance * max(1, |value|).
OscillatoryResult extrapolate(const std::function<Complex(double)>& at_eps,
                              const std::function<std::size_t(double)>& points,
                              const QuadratureConfig& cfg);

// Full limit for separable integrands a1(s1)a2(s2) b1(s1')b2(s2') under
// the coordinate-product cutoff.
OscillatoryResult oscillatory_separable(const Factor1D& a1, const Factor1D& a2,
                                        const Factor1D& b1, const Factor1D& b2,
                                        const CutoffFunction& chi, const QuadratureConfig& cfg);

// Full limit of the two-dimensional integral on the general path.
OscillatoryResult oscillatory_limit(const Factor2D& a, const Factor2D& b,
                                    const CutoffFunction& chi, const QuadratureConfig& cfg);

// Memoised limit of the basic plane-wave integral
// (1/2pi) lim int dx dy exp(-ixy) exp(i alpha x) exp(i beta y).
// Thread-safe.
class PlaneWaveIntegrals {
public:
    PlaneWaveIntegrals(CutoffFunction chi, QuadratureConfig cfg);

    Complex level(double alpha, double beta, double eps);
    OscillatoryResult limit(double alpha, double beta);
    // Limit of the 2D integral with a = exp(i a.s), b = exp(i b.s').
    OscillatoryResult limit(const Vec2& a, const Vec2& b);

    const CutoffFunction& cutoff() const { return chi_; }
    const QuadratureConfig& config() const { return cfg_; }

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    CutoffFunction chi_;
    QuadratureConfig cfg_;
};

} // namespace wedgeqft
