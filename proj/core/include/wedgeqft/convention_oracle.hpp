#pragma once

#include <string>
#include <vector>

#include "wedgeqft/cutoff.hpp"
#include "wedgeqft/oscillatory.hpp"

namespace wedgeqft {

// Continuous estimates of the three convention constants:
//   sigma:        e_k * e_l = exp(i sigma lambda k.Ql) e_{k+l}
//   sigma_prime:  F_lambda = F U(sigma' lambda Q k) for momentum-k F
//   poisson_c:    (f*g - fg)/lambda -> c i {f,g},  {f,g} = Q_ij d_i f d_j g
struct ConventionEstimate {
    double sigma = 0.0;
    double sigma_prime = 0.0;
    double poisson_c = 0.0;
};

struct ConventionReport {
    ConventionEstimate function_route;
    ConventionEstimate matrix_route;
    int sigma = 0;
    int sigma_prime = 0;
    int poisson_c = 0;
    // max |estimate - pinned value| over both routes and all constants
    double max_residual = 0.0;
    // max |function_route - matrix_route| over the three constants
    double route_disagreement = 0.0;

    bool ok(double tol = 1e-8) const { return max_residual < tol && route_disagreement < tol; }
};

// Oracle quadrature of star products of plane waves and of a plane wave with
// an off-centre Gaussian, evaluated at the orbit origin.
ConventionEstimate function_route_estimate(const CutoffFunction& chi, const QuadratureConfig& cfg);

// Oracle quadrature of the warped convolution and the Rieffel product for a
// 4x4 matrix model with diagonal U(v) = diag(exp(i K_n.v)).
ConventionEstimate matrix_route_estimate(const CutoffFunction& chi, const QuadratureConfig& cfg);

ConventionReport pin_conventions(const CutoffFunction& chi, const QuadratureConfig& cfg);

// Momenta K_n of the matrix model used by the matrix route.
std::vector<Vec2> matrix_model_momenta();

// Entrywise oscillatory quadrature of
// (1/4pi^2) lim int e^{-iss'} chi U(lambda Q s) F U(s' - lambda Q s)
// for diagonal U with momenta K.
CMatrix warped_matrix_numeric(const CMatrix& f, const std::vector<Vec2>& momenta, double lambda,
                              PlaneWaveIntegrals& integrals);

// (1/4pi^2) lim int e^{-iss'} chi tau_{lambda Q s}(F) tau_{s'}(G),
// tau_s = ad U(s), same diagonal model.
CMatrix rieffel_matrix_numeric(const CMatrix& f, const CMatrix& g, const std::vector<Vec2>& momenta,
                               double lambda, PlaneWaveIntegrals& integrals);

} // namespace wedgeqft
