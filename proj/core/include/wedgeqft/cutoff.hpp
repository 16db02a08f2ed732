#pragma once

#include <string>

#include "wedgeqft/types.hpp"

namespace wedgeqft {

// Cutoff families. Both factor as chi(u,u') = half(u) * half(u').
//   coordinate_product: half(u) = phi(u1/w) phi(u2/w)
//   planar_radial:      half(u) = phi(|u|/w)
// with phi(r) = exp(1 - 1/(1-r^2)) on |r|<1, so chi(0,0) = 1.
enum class CutoffFamily { coordinate_product, planar_radial };

std::string to_string(CutoffFamily family);
CutoffFamily cutoff_family_from_string(const std::string& name);

class CutoffFunction {
public:
    explicit CutoffFunction(CutoffFamily family = CutoffFamily::coordinate_product,
                            double scale = 1.0);

    CutoffFamily family() const { return family_; }
    double scale() const { return scale_; }
    bool separable() const { return family_ == CutoffFamily::coordinate_product; }

    static double bump(double r2);

    double profile(double x) const { return bump((x / scale_) * (x / scale_)); }
    double half(const Vec2& u) const;
    double operator()(const Vec2& u, const Vec2& v) const { return half(u) * half(v); }

private:
    CutoffFamily family_;
    double scale_;
};

} // namespace wedgeqft
