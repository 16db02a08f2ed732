#pragma once

#include <cstdint>
#include <string>

#include "wedgeqft/geometry.hpp"
#include "wedgeqft/killing.hpp"

namespace wedgeqft {

inline constexpr double wedge_tie_tolerance = 1e-12;

// Unit spatial normal to the rows of C with respect to the spatial metric at
// p, oriented so that (grad T, xi_1, xi_2, n) is positively oriented.
Vec3 oriented_normal(const KillingPair& xi, const Point& p);

struct EdgeCanonical {
    double tau = 0.0;
    Vec3 line;     // unit normal line, sign fixed (first nonzero component > 0)
    double offset; // line . x_p
};

class Edge {
public:
    Edge(KillingPair xi, Point p);
    const KillingPair& pair() const { return xi_; }
    const Point& base() const { return p_; }
    EdgeCanonical canonical() const;
    bool same_as(const Edge& other, double tol = 1e-12) const;

private:
    KillingPair xi_;
    Point p_;
};

struct WedgeCanonical {
    double tau = 0.0;
    Vec3 normal;   // oriented Euclidean unit normal in conformal coordinates
    double offset; // normal . x_p
};

class Wedge {
public:
    Wedge(KillingPair xi, Point p);

    const KillingPair& pair() const { return xi_; }
    const Point& base() const { return p_; }
    Edge edge() const { return Edge(xi_, p_); }
    const Chart& chart() const { return *xi_.chart(); }
    const Vec3& normal() const { return n_; }
    double base_tau() const { return tau_p_; }
    WedgeCanonical canonical() const;
    bool same_as(const Wedge& other, double tol = 1e-12) const;

    // n.(x_q - x_p) - |tau_q - tau_p| in conformal coordinates (FRW only).
    double margin(const Point& q) const;

private:
    KillingPair xi_;
    Point p_;
    Vec3 n_;
    double tau_p_ = 0.0;
};

bool contains(const Wedge& w, const Point& q);
bool closure_contains(const Wedge& w, const Point& q);
Wedge causal_complement(const Wedge& w);
bool includes(const Wedge& w1, const Wedge& w2);
Wedge transform(const Isometry& h, const Wedge& w);
std::string coherent_class(const Wedge& w);

// C = r^phi W0 cap r^{-phi} W0 and its reflection j_x C.
class Cone {
public:
    Cone(double phi, const Wedge& w0);

    double phi() const { return phi_; }
    const Wedge& plus() const { return plus_; }
    const Wedge& minus() const { return minus_; }
    const Wedge& base_wedge() const { return w0_; }
    bool contains(const Point& q) const;
    bool reflected_contains(const Point& q) const;

private:
    double phi_;
    Wedge w0_;
    Wedge plus_;
    Wedge minus_;
};

Cone cone(double phi, const Wedge& w0);

Point reflect_x(const Point& q);

// Random point strictly inside an FRW wedge; scales are log-uniform so that
// both near-edge and far points occur.
template <class Rng>
Point sample_wedge_point(const Wedge& w, Rng& rng);

} // namespace wedgeqft

#include "wedgeqft/detail/wedge_sampler.hpp"
