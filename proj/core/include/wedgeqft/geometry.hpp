#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wedgeqft/types.hpp"

namespace wedgeqft {

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double v) const { return v > lo && v < hi; }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    static Interval line() { return {}; }
};

enum class ChartFamily { generic, minkowski, kasner, frw, tabulated };
std::string to_string(ChartFamily family);

enum class CausalRelation { TimelikeRelated, NullRelated, Spacelike };
std::string to_string(CausalRelation rel);

using Coefficient = std::function<double(const Point&)>;

// Scale factor a(t) of a flat FRW chart.
class ScaleFactor {
public:
    enum class Kind { power, constant, exponential, tabulated };

    static ScaleFactor power(double exponent, double amplitude = 1.0);
    static ScaleFactor constant(double value);
    static ScaleFactor exponential(double rate, double amplitude = 1.0);
    // Uniformly spaced samples on [t_first, t_first + (n-1) step], interpolated
    // by a cardinal cubic B-spline.
    static ScaleFactor tabulated(double t_first, double step, std::vector<double> values);

    Kind kind() const { return kind_; }
    double operator()(double t) const { return fn_(t); }
    // Closed-form conformal time from t0 when one exists.
    std::optional<double> conformal_time_exact(double t0, double t) const;
    // Interval on which the closed form/definition is valid.
    Interval natural_domain() const { return domain_; }

private:
    Kind kind_ = Kind::constant;
    double p_ = 0.0;
    double amp_ = 1.0;
    std::function<double(double)> fn_;
    Interval domain_;
};

class FrwData;

class Chart {
public:
    static std::shared_ptr<const Chart> minkowski();
    static std::shared_ptr<const Chart> kasner(double p1, double p2, double p3,
                                               Interval J = {0.0, std::numeric_limits<double>::infinity()},
                                               Interval x_range = Interval::line());
    static std::shared_ptr<const Chart> frw(ScaleFactor a, Interval J, std::optional<double> t0 = std::nullopt);
    // Coefficients are functions of the full point so that malformed charts
    // (depending on y or z) can be represented and rejected.
    static std::shared_ptr<const Chart> generic(std::array<Coefficient, 4> f, Coefficient q,
                                                Interval t_range, Interval x_range, std::string name);
    // f_i(t) and q(t) sampled on a uniform grid, cardinal cubic B-spline.
    static std::shared_ptr<const Chart> tabulated(double t_first, double step,
                                                  std::array<std::vector<double>, 4> f,
                                                  std::vector<double> q, std::string name);

    ChartFamily family() const { return family_; }
    const std::string& name() const { return name_; }
    const Interval& t_range() const { return t_range_; }
    const Interval& x_range() const { return x_range_; }
    double f(int i, const Point& p) const { return f_[i](p); }
    double q(const Point& p) const { return q_(p); }

    // d_x is a Killing field of the chart (coefficients independent of x).
    bool x_killing() const { return x_killing_; }
    bool e3_symmetric() const { return family_ == ChartFamily::frw || family_ == ChartFamily::minkowski; }
    const Vec3& kasner_exponents() const { return kasner_p_; }

    const FrwData* frw_data() const { return frw_.get(); }
    bool contains(const Point& p) const { return t_range_.contains(p.t) && x_range_.contains(p.x); }

    // A point well inside the chart used for sampled checks.
    Point reference_point() const;

private:
    Chart() = default;

    ChartFamily family_ = ChartFamily::generic;
    std::string name_;
    Interval t_range_;
    Interval x_range_;
    std::array<Coefficient, 4> f_;
    Coefficient q_;
    bool x_killing_ = false;
    Vec3 kasner_p_ = Vec3::Zero();
    std::shared_ptr<const FrwData> frw_;
};

using ChartPtr = std::shared_ptr<const Chart>;

// Conformal-time data of an FRW chart: tau(t) = int_{t0}^t dt'/a(t').
class FrwData {
public:
    FrwData(ScaleFactor a, Interval J, double t0);

    const ScaleFactor& scale_factor() const { return a_; }
    const Interval& J() const { return J_; }
    double anchor() const { return t0_; }
    double conformal_time(double t) const;
    double time_of_tau(double tau) const;
    Interval tau_range() const { return tau_range_; }

private:
    double integrate(double from, double to) const;

    ScaleFactor a_;
    Interval J_;
    double t0_;
    std::vector<double> nodes_;
    std::vector<double> node_tau_;
    Interval tau_range_;
};

Mat4 metric_tensor(const Chart& chart, const Point& p);

double conformal_time(const Chart& chart, double t);

struct CausalQuery {
    CausalRelation relation;
    bool zero_separation = false;
    double dtau = 0.0;
    double dx = 0.0;
};

CausalQuery causal_query(const Chart& chart, const Point& p, const Point& q);
CausalRelation causal_relation(const Chart& chart, const Point& p, const Point& q);

struct SampleGrid {
    int nt = 5;
    int nx = 5;
    int nyz = 3;
    double t_lo = 0.0, t_hi = 0.0; // used when both finite and t_lo < t_hi
    double x_lo = 0.0, x_hi = 0.0;
    double yz_extent = 10.0;
};

struct AdmissibilityViolation {
    std::string condition;
    Point witness;
    double value = 0.0;
};

struct AdmissibilityReport {
    bool yz_independent = true;
    bool killing = true;
    bool spacelike = true;
    bool independent = true;
    bool signature = true;
    bool e3_symmetric = false;
    std::size_t points_checked = 0;
    std::vector<AdmissibilityViolation> violations;

    bool ok() const { return violations.empty(); }
};

AdmissibilityReport check_admissible(const Chart& chart, const SampleGrid& grid = {});

// Rotation by angle phi in the x-y plane.
Mat3 rotation_xy(double phi);

} // namespace wedgeqft
