#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wedgeqft/cutoff.hpp"
#include "wedgeqft/oscillatory.hpp"
#include "wedgeqft/types.hpp"

namespace wedgeqft {

// Pinned convention constants (generated at build time).
int sigma();
int sigma_prime();
int poisson_constant();

// f(s) = sum_k c_k exp(i k.s), momenta merged canonically.
class PlaneWaveSum {
public:
    using Term = std::pair<Vec2, Complex>;

    PlaneWaveSum() = default;
    explicit PlaneWaveSum(std::vector<Term> terms);
    static PlaneWaveSum wave(const Vec2& k, Complex c = 1.0) { return PlaneWaveSum({{k, c}}); }
    static PlaneWaveSum constant(Complex c) { return wave(Vec2::Zero(), c); }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    Complex operator()(const Vec2& s) const;
    Eigen::Vector2cd gradient(const Vec2& s) const;
    PlaneWaveSum conj() const;
    PlaneWaveSum operator+(const PlaneWaveSum& o) const;
    PlaneWaveSum operator*(const PlaneWaveSum& o) const; // pointwise product
    PlaneWaveSum scaled(Complex c) const;
    double bandwidth() const;
    bool approx_equal(const PlaneWaveSum& o, double tol) const;

private:
    void canonicalize();
    std::vector<Term> terms_;
};

// Function on the R^2 orbit: a plane-wave sum, a product f1(s1) f2(s2) of
// one-dimensional factors, or a general callable with a bandwidth bound.
class OrbitFunction {
public:
    static OrbitFunction plane_waves(PlaneWaveSum f);
    static OrbitFunction separable(Factor1D f1, Factor1D f2);
    static OrbitFunction general(std::function<Complex(const Vec2&)> f, double bandwidth);

    Complex operator()(const Vec2& s) const;
    Eigen::Vector2cd gradient(const Vec2& s) const;
    bool is_plane_waves() const { return kind_ == Kind::plane_waves; }
    bool is_separable() const { return kind_ != Kind::general; }
    const PlaneWaveSum& waves() const { return waves_; }
    const Factor1D& factor(int i) const { return factors_[i]; }
    double bandwidth() const;

private:
    enum class Kind { plane_waves, separable, general };
    Kind kind_ = Kind::general;
    PlaneWaveSum waves_;
    Factor1D factors_[2];
    std::function<Complex(const Vec2&)> fn_;
    double bandwidth_ = 0.0;
};

PlaneWaveSum star_exact(const PlaneWaveSum& f, const PlaneWaveSum& g, double lambda);

struct StarResult {
    Complex value;
    double error = 0.0;
    double eps_final = 0.0;
};

// (f *_lambda g)(x) = (1/4pi^2) lim int ds ds' e^{-iss'} chi(eps s, eps s')
//                     f(x + lambda Q s) g(x + s').
StarResult star_numeric(const OrbitFunction& f, const OrbitFunction& g, double lambda,
                        const CutoffFunction& chi, const QuadratureConfig& cfg, const Vec2& at = Vec2::Zero());

// Variant sharing memoised plane-wave integrals (both inputs plane-wave sums,
// coordinate-product cutoff).
StarResult star_numeric(const PlaneWaveSum& f, const PlaneWaveSum& g, double lambda, PlaneWaveIntegrals& integrals,
                        const Vec2& at = Vec2::Zero());

// Translation argument mu = sigma' lambda Q k of the closed form
// F_{xi,lambda} = F U_xi(mu) for a momentum-k eigenoperator F.
Vec2 warped_eigenoperator(const Vec2& k, double lambda);

// {f,g}(s) = sum_ij Q_ij d_i f d_j g.
std::function<Complex(const Vec2&)> poisson_bracket(const OrbitFunction& f, const OrbitFunction& g);

} // namespace wedgeqft
