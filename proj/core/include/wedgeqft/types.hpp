#pragma once

#include <complex>

#include <Eigen/Dense>

namespace wedgeqft {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat23 = Eigen::Matrix<double, 2, 3>;
using Mat4 = Eigen::Matrix4d;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;

// The antisymmetric matrix entering every deformation formula.
inline Mat2 q_matrix()
{
    Mat2 q;
    q << 0.0, 1.0, -1.0, 0.0;
    return q;
}

inline Mat2 flip_matrix()
{
    Mat2 p;
    p << 0.0, 1.0, 1.0, 0.0;
    return p;
}

struct Point {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 spatial() const { return {x, y, z}; }
    static Point from(double t, const Vec3& v) { return {t, v(0), v(1), v(2)}; }
};

} // namespace wedgeqft
