#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wedgeqft/oscillatory.hpp"
#include "wedgeqft/starprod.hpp"
#include "wedgeqft/types.hpp"

namespace wedgeqft {

// One-particle space with d = 2m modes. Mode j < m carries spatial momentum
// p_j, mode j + m its conjugate partner with -p_j. Momenta along a Killing
// pair with component matrix C are k_j = C p_j.
class ModeSpace {
public:
    explicit ModeSpace(std::vector<Vec3> momenta);
    // (1,0,1), (0,1,1), (-1,0,1), (0,-1,1) and partners: closed under
    // rotations by pi/2 about the z axis.
    static ModeSpace default_grid();
    // Momenta in the (y,z) plane only, m pairs from the list
    // (1,0), (0,1), (1,1), (1,-1).
    static ModeSpace planar(int m);

    int pairs() const { return m_; }
    int dim() const { return 2 * m_; }
    int bar(int j) const { return j < m_ ? j + m_ : j - m_; }
    const Vec3& momentum(int j) const { return p_[static_cast<std::size_t>(j)]; }
    Vec2 xi_momentum(const Mat23& c, int j) const { return c * momentum(j); }

    CVector gamma(const CVector& f) const;
    CVector translate(const Mat23& c, const Vec2& s, const CVector& f) const; // u_xi(s) f
    CVector unit(int j) const;

    // Mode permutation induced by a rotation R (p_j -> R p_j); nullopt if the
    // mode set is not closed under R.
    std::optional<std::vector<int>> permutation(const Mat3& r) const;
    CVector rotate(const std::vector<int>& perm, const CVector& f) const;

private:
    int m_;
    std::vector<Vec3> p_;
};

// Antisymmetric Fock space over a ModeSpace (Jordan-Wigner ordering).
class FockRep {
public:
    explicit FockRep(ModeSpace modes);

    const ModeSpace& modes() const { return modes_; }
    Eigen::Index dim() const { return dim_; }
    const CMatrix& a(int j) const { return a_[static_cast<std::size_t>(j)]; }
    CMatrix adag(int j) const { return a_[static_cast<std::size_t>(j)].adjoint(); }
    CVector vacuum() const;

    // B(f) = (a(f)^* + a(Gamma f)) / sqrt 2
    CMatrix b_op(const CVector& f) const;
    // Diagonal of U_xi(s): exp(i sum_j n_j k_j . s)
    CVector u_diagonal(const Mat23& c, const Vec2& s) const;
    CMatrix u_op(const Mat23& c, const Vec2& s) const;
    CVector parity_diagonal() const; // (-1)^N
    CMatrix twist() const;           // Z = (1 - iV)/sqrt 2
    // Second quantisation of a mode permutation.
    CMatrix permutation_op(const std::vector<int>& perm) const;

    // B(f)_{xi,lambda} = sum_j f_j B(e_j) U_xi(sigma' lambda Q k_j)
    CMatrix warped_b(const CVector& f, const Mat23& c, double lambda) const;
    // Direct entrywise quadrature of the defining oscillatory integral.
    CMatrix warped_numeric(const CVector& f, const Mat23& c, double lambda, PlaneWaveIntegrals& integrals) const;
    // Total xi-momentum of each Fock basis state.
    std::vector<Vec2> state_momenta(const Mat23& c) const;

private:
    ModeSpace modes_;
    Eigen::Index dim_;
    std::vector<CMatrix> a_;
};

// omega_2(f,g) = <Omega, B(f) B(g) Omega> = <Gamma f, g>/2
Complex two_point(const ModeSpace& modes, const CVector& f, const CVector& g);

Complex deformed_npoint(const FockRep& rep, const std::vector<CVector>& fs, const Mat23& c, double lambda);

// Closed-form deformed four-point function of the quasifree vacuum:
// w12 w34 + w14 w23 - (w13 *_{2 lambda} w24)(0), w_ij(s) = omega_2(f_i, u(s) f_j).
Complex deformed_4pt_formula(const ModeSpace& modes, const CVector& f1, const CVector& f2, const CVector& f3,
                             const CVector& f4, const Mat23& c, double lambda);

// s -> omega_2(f, u_xi(s) g) as a plane-wave sum.
PlaneWaveSum two_point_orbit(const ModeSpace& modes, const CVector& f, const CVector& g, const Mat23& c);

struct TwistedCommutator {
    double norm = 0.0;
    bool applicable = true; // precondition <Gamma f, u(s) g> = 0 for all s
};

TwistedCommutator twisted_commutator(const FockRep& rep, const CVector& f, const CVector& g, const Mat23& c,
                                     double lambda);

// ||U(h) B(f)_{xi,lambda} U(h)^* - B(u(h) f)_{h_* xi, lambda}|| for the
// rotation by phi in the x-y plane.
double covariance_check(const FockRep& rep, const CVector& f, double phi, const Mat23& c, double lambda);

double spectral_norm(const CMatrix& m);

} // namespace wedgeqft
