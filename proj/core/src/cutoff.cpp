#include "wedgeqft/cutoff.hpp"

#include <cmath>

#include "wedgeqft/errors.hpp"

namespace wedgeqft {

std::string to_string(CutoffFamily family)
{
    return family == CutoffFamily::coordinate_product ? "coordinate_product" : "planar_radial";
}

CutoffFamily cutoff_family_from_string(const std::string& name)
{
    if (name == "coordinate_product")
        return CutoffFamily::coordinate_product;
    if (name == "planar_radial")
        return CutoffFamily::planar_radial;
    throw SchemaError("unknown cutoff family '" + name + "'");
}

CutoffFunction::CutoffFunction(CutoffFamily family, double scale)
    : family_(family), scale_(scale)
{
    if (!(scale > 0.0))
        throw DomainError("cutoff scale must be positive");
}

double CutoffFunction::bump(double r2)
{
    if (r2 >= 1.0)
        return 0.0;
    return std::exp(-r2 / (1.0 - r2));
}

double CutoffFunction::half(const Vec2& u) const
{
    if (family_ == CutoffFamily::coordinate_product)
        return profile(u(0)) * profile(u(1));
    return bump(u.squaredNorm() / (scale_ * scale_));
}

} // namespace wedgeqft
