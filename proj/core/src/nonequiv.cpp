#include "wedgeqft/nonequiv.hpp"

#include <algorithm>
#include <cmath>

#include "wedgeqft/errors.hpp"
#include "wedgeqft/geometry.hpp"
#include "wedgeqft/starprod.hpp"

namespace wedgeqft {

Mat23 zeta_components()
{
    Mat23 c;
    c << 0.0, 1.0, 0.0, 0.0, 0.0, 1.0;
    return c;
}

Mat23 rotated_zeta_components(double phi) { return zeta_components() * rotation_xy(phi).transpose(); }

namespace {

Complex generator_bracket(const ModeSpace& modes, const CVector& f1, const CVector& f, const CVector& f4,
                          const Mat23& c)
{
    const Mat2 q = q_matrix();
    CVector pf[2], pf4[2];
    for (int a = 0; a < 2; ++a) {
        pf[a] = CVector(modes.dim());
        pf4[a] = CVector(modes.dim());
        for (int j = 0; j < modes.dim(); ++j) {
            const Complex gen(0.0, modes.xi_momentum(c, j)(a));
            pf[a](j) = gen * f(j);
            pf4[a](j) = gen * f4(j);
        }
    }
    Complex v{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (q(a, b) != 0.0)
                v += q(a, b) * two_point(modes, f1, pf[a]) * two_point(modes, f, pf4[b]);
    return v;
}

} // namespace

Complex poisson_discrepancy(const ModeSpace& modes, const CVector& f1, const CVector& f, const CVector& f4,
                            double phi)
{
    return generator_bracket(modes, f1, f, f4, zeta_components()) -
           generator_bracket(modes, f1, f, f4, rotated_zeta_components(phi));
}

Complex four_point_discrepancy(const FockRep& rep, const CVector& f1, const CVector& f, const CVector& f4,
                               double phi, double lambda)
{
    const std::vector<CVector> fs = {f1, f, f, f4};
    return deformed_npoint(rep, fs, zeta_components(), lambda) -
           deformed_npoint(rep, fs, rotated_zeta_components(phi), lambda);
}

CMatrix warped_b_derivative(const FockRep& rep, const CVector& f, const Mat23& c)
{
    const ModeSpace& modes = rep.modes();
    const auto k = rep.state_momenta(c);
    const Mat2 q = q_matrix();
    CMatrix d = CMatrix::Zero(rep.dim(), rep.dim());
    for (int j = 0; j < modes.dim(); ++j) {
        if (f(j) == Complex{})
            continue;
        // d/dlambda U(sigma' lambda Q k_j) at 0 = i sigma' (Q k_j).P
        const Vec2 dir = sigma_prime() * (q * modes.xi_momentum(c, j));
        CVector gen(rep.dim());
        for (Eigen::Index n = 0; n < rep.dim(); ++n)
            gen(n) = Complex(0.0, dir.dot(k[static_cast<std::size_t>(n)]));
        const CMatrix bj = (rep.adag(j) + rep.a(modes.bar(j))) * 0.70710678118654752440;
        d += f(j) * (bj * gen.asDiagonal());
    }
    return d;
}

DiscrepancyReport lambda_sweep(const FockRep& rep, const CVector& f, double phi, const std::vector<double>& lambdas)
{
    if (f.norm() == 0.0)
        throw DomainError("lambda_sweep: zero field");
    DiscrepancyReport r;
    r.phi = phi;
    r.lambdas = lambdas;
    const Mat23 cz = zeta_components(), cr = rotated_zeta_components(phi);
    double smallest = std::numeric_limits<double>::infinity();
    for (double lambda : lambdas) {
        const double nrm = spectral_norm(rep.warped_b(f, cz, lambda) - rep.warped_b(f, cr, lambda));
        r.norms.push_back(nrm);
        if (lambda == 0.0) {
            if (nrm != 0.0)
                r.zero_at_zero = false;
        } else {
            if (!(nrm > 0.0))
                r.positive_off_zero = false;
            if (std::abs(lambda) < smallest) {
                smallest = std::abs(lambda);
                r.fitted_slope = nrm / std::abs(lambda);
            }
        }
    }
    r.predicted_slope = spectral_norm(warped_b_derivative(rep, f, cz) - warped_b_derivative(rep, f, cr));
    return r;
}

} // namespace wedgeqft
