#pragma once

#include <optional>
#include <vector>

#include "wedgeqft/geometry.hpp"
#include "wedgeqft/types.hpp"

namespace wedgeqft {

struct GL2 {
    Mat2 N = Mat2::Identity();

    GL2() = default;
    explicit GL2(const Mat2& n);
    static GL2 flip() { return GL2(flip_matrix()); }
    double det() const { return N.determinant(); }
};

// Spatial Euclidean motion x -> R x + b acting on (x,y,z); t untouched.
struct Isometry {
    Mat3 R = Mat3::Identity();
    Vec3 b = Vec3::Zero();

    Isometry() = default;
    Isometry(const Mat3& r, const Vec3& shift);
    static Isometry rotation(const Mat3& r) { return Isometry(r, Vec3::Zero()); }
    static Isometry translation(const Vec3& shift) { return Isometry(Mat3::Identity(), shift); }

    Point apply(const Point& p) const { return Point::from(p.t, R * p.spatial() + b); }
    Isometry inverse() const { return Isometry(R.transpose(), -(R.transpose() * b)); }
    Isometry compose(const Isometry& inner) const { return Isometry(R * inner.R, R * inner.b + b); }
};

// Ordered pair of commuting spacelike Killing fields with constant
// components over (d_x, d_y, d_z); rows of C are xi_1, xi_2.
class KillingPair {
public:
    KillingPair(ChartPtr chart, const Mat23& c);

    const ChartPtr& chart() const { return chart_; }
    const Mat23& C() const { return C_; }
    Vec3 row(int i) const { return C_.row(i).transpose(); }
    KillingPair inverted() const;

private:
    ChartPtr chart_;
    Mat23 C_;
};

// zeta = (d_y, d_z)
KillingPair standard_pair(ChartPtr chart);

Point flow(const KillingPair& xi, const Vec2& s, const Point& p);
KillingPair act_gl(const GL2& n, const KillingPair& xi);
KillingPair pushforward(const Isometry& h, const KillingPair& xi);

// Sampled metric pullback check of h on the chart.
bool is_isometry(const Chart& chart, const Isometry& h);

// Rotational part of the chart's declared isometry group.
struct SymmetryGroup {
    bool full_rotations = false;     // SO(3)
    std::vector<Mat3> discrete;      // finite subgroup (always contains identity)
    int continuous_axis = -1;        // SO(2) about this axis combined with `discrete`
};
SymmetryGroup declared_symmetries(const Chart& chart);

struct EquivalenceWitness {
    Isometry h;
    GL2 N;
};

// Searches h in the declared group and N in GL(2) with xi_tilde = N h_* xi.
std::optional<EquivalenceWitness> equivalent(const KillingPair& xi, const KillingPair& xi_tilde);

// N with target.C = N * source.C when the two pairs span the same plane.
std::optional<GL2> relating_gl(const KillingPair& source, const KillingPair& target);

// Rotation taking unit vector a to unit vector b (Rodrigues).
Mat3 rotation_between(const Vec3& a, const Vec3& b);

} // namespace wedgeqft
