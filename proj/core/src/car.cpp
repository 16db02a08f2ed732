#include "wedgeqft/car.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "wedgeqft/convention_oracle.hpp"
#include "wedgeqft/errors.hpp"
#include "wedgeqft/geometry.hpp"

namespace wedgeqft {

namespace {

constexpr double inv_sqrt2 = 0.70710678118654752440;

bool same_vec(const Vec3& a, const Vec3& b) { return (a - b).cwiseAbs().maxCoeff() < 1e-9; }

} // namespace

ModeSpace::ModeSpace(std::vector<Vec3> momenta) : m_(static_cast<int>(momenta.size()))
{
    if (m_ < 1 || m_ > 6)
        throw DomainError("mode space needs between 1 and 6 momentum pairs");
    p_ = momenta;
    for (const Vec3& p : momenta)
        p_.push_back(-p);
    for (int i = 0; i < dim(); ++i)
        for (int j = i + 1; j < dim(); ++j)
            if (same_vec(p_[static_cast<std::size_t>(i)], p_[static_cast<std::size_t>(j)]))
                throw DomainError("mode momenta must be distinct (including conjugate partners)");
}

ModeSpace ModeSpace::default_grid()
{
    return ModeSpace({Vec3(1, 0, 1), Vec3(0, 1, 1), Vec3(-1, 0, 1), Vec3(0, -1, 1)});
}

ModeSpace ModeSpace::planar(int m)
{
    const std::vector<Vec3> all = {Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(0, 1, 1), Vec3(0, 1, -1)};
    if (m < 1 || m > 4)
        throw DomainError("planar mode space supports 1..4 pairs");
    return ModeSpace(std::vector<Vec3>(all.begin(), all.begin() + m));
}

CVector ModeSpace::gamma(const CVector& f) const
{
    CVector g(dim());
    for (int j = 0; j < dim(); ++j)
        g(j) = std::conj(f(bar(j)));
    return g;
}

CVector ModeSpace::translate(const Mat23& c, const Vec2& s, const CVector& f) const
{
    CVector g(dim());
    for (int j = 0; j < dim(); ++j)
        g(j) = std::polar(1.0, xi_momentum(c, j).dot(s)) * f(j);
    return g;
}

CVector ModeSpace::unit(int j) const
{
    CVector e = CVector::Zero(dim());
    e(j) = 1.0;
    return e;
}

std::optional<std::vector<int>> ModeSpace::permutation(const Mat3& r) const
{
    std::vector<int> perm(static_cast<std::size_t>(dim()), -1);
    for (int j = 0; j < dim(); ++j) {
        const Vec3 target = r * momentum(j);
        for (int i = 0; i < dim(); ++i)
            if (same_vec(target, momentum(i)))
                perm[static_cast<std::size_t>(j)] = i;
        if (perm[static_cast<std::size_t>(j)] < 0)
            return std::nullopt;
    }
    return perm;
}

CVector ModeSpace::rotate(const std::vector<int>& perm, const CVector& f) const
{
    CVector g = CVector::Zero(dim());
    for (int j = 0; j < dim(); ++j)
        g(perm[static_cast<std::size_t>(j)]) = f(j);
    return g;
}

FockRep::FockRep(ModeSpace modes) : modes_(std::move(modes)), dim_(Eigen::Index{1} << modes_.dim())
{
    const int d = modes_.dim();
    for (int j = 0; j < d; ++j) {
        CMatrix a = CMatrix::Zero(dim_, dim_);
        for (Eigen::Index n = 0; n < dim_; ++n) {
            if (!((n >> j) & 1))
                continue;
            const auto below = static_cast<unsigned long>(n & ((Eigen::Index{1} << j) - 1));
            const double sign = (std::popcount(below) & 1) ? -1.0 : 1.0;
            a(n & ~(Eigen::Index{1} << j), n) = sign;
        }
        a_.push_back(std::move(a));
    }
}

CVector FockRep::vacuum() const
{
    CVector v = CVector::Zero(dim_);
    v(0) = 1.0;
    return v;
}

CMatrix FockRep::b_op(const CVector& f) const
{
    CMatrix b = CMatrix::Zero(dim_, dim_);
    for (int j = 0; j < modes_.dim(); ++j) {
        if (f(j) != Complex{})
            b += f(j) * adag(j);
        if (f(modes_.bar(j)) != Complex{})
            b += f(modes_.bar(j)) * a(j);
    }
    return b * inv_sqrt2;
}

std::vector<Vec2> FockRep::state_momenta(const Mat23& c) const
{
    std::vector<Vec2> k(static_cast<std::size_t>(dim_), Vec2::Zero());
    for (Eigen::Index n = 0; n < dim_; ++n)
        for (int j = 0; j < modes_.dim(); ++j)
            if ((n >> j) & 1)
                k[static_cast<std::size_t>(n)] += modes_.xi_momentum(c, j);
    return k;
}

CVector FockRep::u_diagonal(const Mat23& c, const Vec2& s) const
{
    const auto k = state_momenta(c);
    CVector u(dim_);
    for (Eigen::Index n = 0; n < dim_; ++n)
        u(n) = std::polar(1.0, k[static_cast<std::size_t>(n)].dot(s));
    return u;
}

CMatrix FockRep::u_op(const Mat23& c, const Vec2& s) const { return u_diagonal(c, s).asDiagonal(); }

CVector FockRep::parity_diagonal() const
{
    CVector v(dim_);
    for (Eigen::Index n = 0; n < dim_; ++n)
        v(n) = (std::popcount(static_cast<unsigned long>(n)) & 1) ? -1.0 : 1.0;
    return v;
}

CMatrix FockRep::twist() const
{
    const CVector v = parity_diagonal();
    CMatrix z = CMatrix::Zero(dim_, dim_);
    for (Eigen::Index n = 0; n < dim_; ++n)
        z(n, n) = (1.0 - Complex(0.0, 1.0) * v(n)) * inv_sqrt2;
    return z;
}

CMatrix FockRep::permutation_op(const std::vector<int>& perm) const
{
    CMatrix u = CMatrix::Zero(dim_, dim_);
    for (Eigen::Index n = 0; n < dim_; ++n) {
        std::vector<int> image;
        for (int j = 0; j < modes_.dim(); ++j)
            if ((n >> j) & 1)
                image.push_back(perm[static_cast<std::size_t>(j)]);
        int inversions = 0;
        Eigen::Index target = 0;
        for (std::size_t i = 0; i < image.size(); ++i) {
            target |= Eigen::Index{1} << image[i];
            for (std::size_t k = i + 1; k < image.size(); ++k)
                if (image[i] > image[k])
                    ++inversions;
        }
        u(target, n) = (inversions & 1) ? -1.0 : 1.0;
    }
    return u;
}

CMatrix FockRep::warped_b(const CVector& f, const Mat23& c, double lambda) const
{
    CMatrix w = CMatrix::Zero(dim_, dim_);
    for (int j = 0; j < modes_.dim(); ++j) {
        if (f(j) == Complex{})
            continue;
        const Vec2 mu = warped_eigenoperator(modes_.xi_momentum(c, j), lambda);
        const CVector u = u_diagonal(c, mu);
        CMatrix bj = (adag(j) + a(modes_.bar(j))) * inv_sqrt2;
        w += f(j) * (bj * u.asDiagonal());
    }
    return w;
}

CMatrix FockRep::warped_numeric(const CVector& f, const Mat23& c, double lambda, PlaneWaveIntegrals& integrals) const
{
    return warped_matrix_numeric(b_op(f), state_momenta(c), lambda, integrals);
}

Complex two_point(const ModeSpace& modes, const CVector& f, const CVector& g)
{
    return 0.5 * modes.gamma(f).dot(g);
}

PlaneWaveSum two_point_orbit(const ModeSpace& modes, const CVector& f, const CVector& g, const Mat23& c)
{
    std::vector<PlaneWaveSum::Term> t;
    for (int j = 0; j < modes.dim(); ++j)
        t.emplace_back(modes.xi_momentum(c, j), 0.5 * f(modes.bar(j)) * g(j));
    return PlaneWaveSum(std::move(t));
}

Complex deformed_npoint(const FockRep& rep, const std::vector<CVector>& fs, const Mat23& c, double lambda)
{
    if (fs.empty())
        throw DomainError("deformed_npoint needs at least one field");
    CVector v = rep.vacuum();
    for (auto it = fs.rbegin(); it != fs.rend(); ++it)
        v = rep.warped_b(*it, c, lambda) * v;
    return v(0);
}

Complex deformed_4pt_formula(const ModeSpace& modes, const CVector& f1, const CVector& f2, const CVector& f3,
                             const CVector& f4, const Mat23& c, double lambda)
{
    const PlaneWaveSum w13 = two_point_orbit(modes, f1, f3, c);
    const PlaneWaveSum w24 = two_point_orbit(modes, f2, f4, c);
    return two_point(modes, f1, f2) * two_point(modes, f3, f4) + two_point(modes, f1, f4) * two_point(modes, f2, f3) -
           star_exact(w13, w24, 2.0 * lambda)(Vec2::Zero());
}

TwistedCommutator twisted_commutator(const FockRep& rep, const CVector& f, const CVector& g, const Mat23& c,
                                     double lambda)
{
    const ModeSpace& modes = rep.modes();
    TwistedCommutator out;
    std::map<std::pair<long long, long long>, Complex> groups;
    double scale = 0.0;
    for (int j = 0; j < modes.dim(); ++j) {
        const Vec2 k = modes.xi_momentum(c, j);
        const auto key = std::make_pair(std::llround(k(0) * 1e9), std::llround(k(1) * 1e9));
        const Complex term = f(modes.bar(j)) * g(j);
        groups[key] += term;
        scale += std::abs(term);
    }
    for (const auto& [k, v] : groups)
        if (std::abs(v) > 1e-12 * std::max(1.0, scale))
            out.applicable = false;

    const CMatrix z = rep.twist();
    const CMatrix wf = z * rep.warped_b(f, c, lambda) * z.adjoint();
    const Mat23 inverted = flip_matrix() * c;
    const CMatrix wg = rep.warped_b(g, inverted, lambda);
    out.norm = spectral_norm(wf * wg - wg * wf);
    return out;
}

double covariance_check(const FockRep& rep, const CVector& f, double phi, const Mat23& c, double lambda)
{
    const Mat3 r = rotation_xy(phi);
    const auto perm = rep.modes().permutation(r);
    if (!perm)
        throw UnsupportedError("mode set is not closed under the rotation");
    const CMatrix u = rep.permutation_op(*perm);
    const CMatrix lhs = u * rep.warped_b(f, c, lambda) * u.adjoint();
    const CMatrix rhs = rep.warped_b(rep.modes().rotate(*perm, f), c * r.transpose(), lambda);
    return spectral_norm(lhs - rhs);
}

double spectral_norm(const CMatrix& m)
{
    if (m.size() == 0)
        return 0.0;
    Eigen::BDCSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

} // namespace wedgeqft
