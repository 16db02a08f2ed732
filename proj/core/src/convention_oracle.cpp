#include "wedgeqft/convention_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "wedgeqft/errors.hpp"

namespace wedgeqft {

namespace {

// First derivative at 0 of lambda -> value(lambda) via the difference
// quotient extrapolated over halving steps.
Complex derivative_at_zero(const std::function<Complex(double)>& value, Complex at_zero, double h0)
{
    std::vector<double> h;
    std::vector<Complex> q;
    for (int i = 0; i < 6; ++i) {
        const double step = h0 * std::ldexp(1.0, -i);
        h.push_back(step);
        q.push_back((value(step) - at_zero) / step);
    }
    return extrapolate_to_zero(h, q).value;
}

double phase_ratio(Complex value, double expected_angle)
{
    return std::arg(value) / expected_angle;
}

Mat2 qmat()
{
    Mat2 q;
    q << 0.0, 1.0, -1.0, 0.0;
    return q;
}

} // namespace

std::vector<Vec2> matrix_model_momenta()
{
    return {Vec2(0.0, 0.0), Vec2(1.0, 0.0), Vec2(0.0, 1.0), Vec2(1.0, -1.0)};
}

CMatrix warped_matrix_numeric(const CMatrix& f, const std::vector<Vec2>& momenta, double lambda,
                              PlaneWaveIntegrals& integrals)
{
    const Mat2 q = qmat();
    const auto n = static_cast<Eigen::Index>(momenta.size());
    if (f.rows() != n || f.cols() != n)
        throw DomainError("warped_matrix_numeric: size mismatch");
    CMatrix out = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (f(i, j) == Complex{})
                continue;
            // U(lambda Q s) F U(s' - lambda Q s) has (i,j) entry
            // F_ij exp(i (lambda Q^T (K_i - K_j)).s) exp(i K_j.s').
            const Vec2 a = lambda * q.transpose() * (momenta[i] - momenta[j]);
            out(i, j) = f(i, j) * integrals.limit(a, momenta[j]).value;
        }
    return out;
}

CMatrix rieffel_matrix_numeric(const CMatrix& f, const CMatrix& g, const std::vector<Vec2>& momenta,
                               double lambda, PlaneWaveIntegrals& integrals)
{
    const Mat2 q = qmat();
    const auto n = static_cast<Eigen::Index>(momenta.size());
    CMatrix out = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index m = 0; m < n; ++m) {
                const Complex c = f(i, m) * g(m, j);
                if (c == Complex{})
                    continue;
                const Vec2 a = lambda * q.transpose() * (momenta[i] - momenta[m]);
                const Vec2 b = momenta[m] - momenta[j];
                out(i, j) += c * integrals.limit(a, b).value;
            }
    return out;
}

ConventionEstimate function_route_estimate(const CutoffFunction& chi, const QuadratureConfig& cfg)
{
    const Mat2 q = qmat();
    PlaneWaveIntegrals pw(chi, cfg);
    ConventionEstimate est;

    // sigma from (e_k * e_l)(0), e_k(lambda Q s) = exp(i (lambda Q^T k).s).
    {
        const Vec2 k(1.0, 0.5), l(-0.5, 1.0);
        const double lambda = 0.5;
        const Complex v = pw.limit(Vec2(lambda * q.transpose() * k), l).value;
        est.sigma = phase_ratio(v, lambda * k.dot(q * l));
    }

    // Gaussian psi(s) = exp(-|s-c|^2/2) as a product of 1D factors.
    const Vec2 centre(0.4, -0.3);
    auto gauss = [](double c) {
        return Factor1D{[c](double y) { return Complex(std::exp(-0.5 * (y - c) * (y - c))); }, 9.0};
    };
    const Vec2 k(1.0, -0.5);
    // (e_k * psi)(0) with e_k(lambda Q s) = exp(i lambda (k1 s2 - k2 s1)).
    auto star_ek_psi = [&](double lambda) {
        const Factor1D a1 = plane_wave_1d(-lambda * k(1));
        const Factor1D a2 = plane_wave_1d(lambda * k(0));
        return oscillatory_separable(a1, a2, gauss(centre(0)), gauss(centre(1)), chi, cfg).value;
    };

    // sigma' from the warped multiplication operator: on L^2(R^2) with
    // (U(v)psi)(x) = psi(x+v), multiplication by e_k is a momentum-k
    // eigenoperator and its warping acts as psi -> e_k * psi. The closed
    // form predicts the value psi(sigma' lambda Q k) at the origin.
    {
        const double lambda = 0.3;
        const double value = star_ek_psi(lambda).real();
        const Vec2 v = lambda * q * k;
        est.sigma_prime = (2.0 * std::log(value) + v.squaredNorm() + centre.squaredNorm()) /
                          (2.0 * v.dot(centre));
    }

    // c from the first-order term of (e_k * psi)(0).
    {
        const double psi0 = std::exp(-0.5 * centre.squaredNorm());
        const Vec2 grad_psi = centre * psi0;
        // {e_k, psi}(0) = sum Q_ij (i k_i) d_j psi(0)
        const Complex bracket = Complex(0.0, 1.0) * k.dot(q * grad_psi);
        const Complex d = derivative_at_zero(star_ek_psi, Complex(psi0), 0.2);
        est.poisson_c = (d / (Complex(0.0, 1.0) * bracket)).real();
    }
    return est;
}

ConventionEstimate matrix_route_estimate(const CutoffFunction& chi, const QuadratureConfig& cfg)
{
    const Mat2 q = qmat();
    const auto momenta = matrix_model_momenta();
    const auto n = static_cast<Eigen::Index>(momenta.size());
    PlaneWaveIntegrals pw(chi, cfg);
    ConventionEstimate est;

    CMatrix f(n, n), g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            f(i, j) = Complex(1.0 + 0.25 * static_cast<double>(i), 0.5 - 0.125 * static_cast<double>(j));
            g(i, j) = Complex(0.75 - 0.25 * static_cast<double>(j), 0.2 * static_cast<double>(i + 1));
        }

    // sigma' from entries of the warped matrix: entry (i,j) is a momentum
    // K_i - K_j component, so F U(mu) predicts the phase K_j.mu.
    {
        const double lambda = 0.4;
        const CMatrix w = warped_matrix_numeric(f, momenta, lambda, pw);
        double best = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                const double angle = lambda * momenta[j].dot(q * (momenta[i] - momenta[j]));
                if (std::abs(angle) > std::abs(best)) {
                    best = angle;
                    est.sigma_prime = phase_ratio(w(i, j) / f(i, j), angle);
                }
            }
    }

    // sigma from the Rieffel product of two elementary matrices E_im, E_mj
    // (momenta K_i - K_m and K_m - K_j).
    {
        const double lambda = 0.6;
        const Eigen::Index i = 1, m = 2, j = 3;
        CMatrix e1 = CMatrix::Zero(n, n), e2 = CMatrix::Zero(n, n);
        e1(i, m) = 1.0;
        e2(m, j) = 1.0;
        const CMatrix r = rieffel_matrix_numeric(e1, e2, momenta, lambda, pw);
        const Vec2 kk = momenta[i] - momenta[m];
        const Vec2 ll = momenta[m] - momenta[j];
        est.sigma = phase_ratio(r(i, j), lambda * kk.dot(q * ll));
    }

    // c from the first-order Rieffel product against the matrix Poisson
    // bracket {F,G} = sum Q_ab (i[P_a,F]) (i[P_b,G]), P_a = diag(K_n,a).
    {
        CMatrix p[2];
        for (int a = 0; a < 2; ++a) {
            p[a] = CMatrix::Zero(n, n);
            for (Eigen::Index r = 0; r < n; ++r)
                p[a](r, r) = momenta[r](a);
        }
        const Complex iu(0.0, 1.0);
        CMatrix bracket = CMatrix::Zero(n, n);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (q(a, b) != 0.0)
                    bracket += q(a, b) * (iu * (p[a] * f - f * p[a])) * (iu * (p[b] * g - g * p[b]));
        Eigen::Index bi = 0, bj = 0;
        bracket.cwiseAbs().maxCoeff(&bi, &bj);
        const Complex fg = (f * g)(bi, bj);
        auto entry = [&](double lambda) { return rieffel_matrix_numeric(f, g, momenta, lambda, pw)(bi, bj); };
        const Complex d = derivative_at_zero(entry, fg, 0.2);
        est.poisson_c = (d / (iu * bracket(bi, bj))).real();
    }
    return est;
}

ConventionReport pin_conventions(const CutoffFunction& chi, const QuadratureConfig& cfg)
{
    ConventionReport rep;
    rep.function_route = function_route_estimate(chi, cfg);
    rep.matrix_route = matrix_route_estimate(chi, cfg);
    const auto& a = rep.function_route;
    const auto& b = rep.matrix_route;
    rep.sigma = static_cast<int>(std::lround(a.sigma));
    rep.sigma_prime = static_cast<int>(std::lround(a.sigma_prime));
    rep.poisson_c = static_cast<int>(std::lround(a.poisson_c));
    for (const auto* e : {&a, &b}) {
        rep.max_residual = std::max({rep.max_residual, std::abs(e->sigma - rep.sigma),
                                     std::abs(e->sigma_prime - rep.sigma_prime),
                                     std::abs(e->poisson_c - rep.poisson_c)});
    }
    rep.route_disagreement = std::max({std::abs(a.sigma - b.sigma), std::abs(a.sigma_prime - b.sigma_prime),
                                       std::abs(a.poisson_c - b.poisson_c)});
    return rep;
}

} // namespace wedgeqft
