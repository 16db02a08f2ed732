#pragma once

#include <vector>

#include "wedgeqft/car.hpp"
#include "wedgeqft/types.hpp"

namespace wedgeqft {

// Component matrix of zeta = (d_y, d_z) and of its rotation r^phi_* zeta.
Mat23 zeta_components();
Mat23 rotated_zeta_components(double phi);

// sum_ab Q_ab [omega_2(f1, P_a f) omega_2(f, P_b f4)] for pair zeta minus the
// same for r^phi_* zeta, with P_a = i diag(k_{j,a}) the generators of u_xi.
// Equals {w13,w24}(0) - {w13^phi,w24^phi}(0) for w_ij(s) = omega_2(f_i, u(s) f_j).
Complex poisson_discrepancy(const ModeSpace& modes, const CVector& f1, const CVector& f, const CVector& f4,
                            double phi);

// omega_4^{zeta,lambda}(f1,f,f,f4) - omega_4^{r^phi zeta,lambda}(f1,f,f,f4) via matrix products.
Complex four_point_discrepancy(const FockRep& rep, const CVector& f1, const CVector& f, const CVector& f4,
                               double phi, double lambda);

struct DiscrepancyReport {
    double phi = 0.0;
    std::vector<double> lambdas;
    std::vector<double> norms;
    double fitted_slope = 0.0;    // lambda -> 0 slope of the norm
    double predicted_slope = 0.0; // norm of the first-order operator difference
    bool positive_off_zero = true;
    bool zero_at_zero = true;
};

// ||B(f)_{zeta,lambda} - B(f)_{r^phi zeta,lambda}|| over the grid.
DiscrepancyReport lambda_sweep(const FockRep& rep, const CVector& f, double phi, const std::vector<double>& lambdas);

// d/dlambda at 0 of B(f)_{xi,lambda}.
CMatrix warped_b_derivative(const FockRep& rep, const CVector& f, const Mat23& c);

} // namespace wedgeqft
