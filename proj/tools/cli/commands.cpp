#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "config.hpp"
#include "wedgeqft/car.hpp"
#include "wedgeqft/convention_oracle.hpp"
#include "wedgeqft/errors.hpp"
#include "wedgeqft/nonequiv.hpp"
#include "wedgeqft/sampling.hpp"
#include "wedgeqft/starprod.hpp"
#include "wedgeqft/wedges.hpp"

namespace wedgeqft::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Csv {
public:
    Csv(const fs::path& path, const Experiment& e, const std::string& command, const std::vector<std::string>& cols)
        : out_(path, std::ios::binary), width_(cols.size())
    {
        if (!out_)
            throw Error("cannot write " + path.string());
        out_ << "# config_hash: " << e.hash << "\n# command: " << command << "\n";
        row(cols);
    }

    void row(const std::vector<std::string>& cells)
    {
        if (cells.size() != width_)
            throw Error("csv row width mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

private:
    std::ofstream out_;
    std::size_t width_;
};

void write_json(const fs::path& path, const json& j)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

json summary(const Experiment& e, const std::string& command)
{
    return json{{"config_hash", e.hash}, {"command", command}, {"seed", e.seed}};
}

// Checks the top-level keys of a subcommand config.
void envelope(const Node& root, std::initializer_list<const char*> keys)
{
    for (auto it = root.raw().begin(); it != root.raw().end(); ++it) {
        const std::string& k = it.key();
        bool known = k == "schema_version" || k == "seed" || k == "description";
        for (const char* a : keys)
            known = known || k == a;
        if (!known)
            root.fail("unknown key '" + k + "'");
    }
}

struct Run {
    const Experiment& e;
    fs::path out;
    std::ostream& log;
    std::vector<std::string> violations;

    void violate(const std::string& invariant) { violations.push_back(invariant); }
};

CVector random_field(std::mt19937_64& rng, int d)
{
    std::normal_distribution<double> g;
    CVector f(d);
    for (int j = 0; j < d; ++j) {
        const double re = g(rng);
        const double im = g(rng);
        f(j) = Complex(re, im);
    }
    return f;
}

double signed_log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double sign = u(rng) < 0.5 ? -1.0 : 1.0;
    return sign * std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u(rng));
}

Isometry random_motion(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    double q[4];
    for (double& v : q)
        v = g(rng);
    Vec3 b;
    for (int i = 0; i < 3; ++i)
        b(i) = 10.0 * g(rng);
    const Eigen::Quaterniond rot = Eigen::Quaterniond(q[0], q[1], q[2], q[3]).normalized();
    return Isometry(rot.toRotationMatrix(), b);
}

Mat23 parse_pair_components(const std::optional<Node>& n)
{
    if (!n || (n->raw().is_string() && n->string() == "zeta"))
        return zeta_components();
    if (n->raw().is_string())
        n->fail("unknown pair name '" + n->string() + "'");
    n->only({"components"});
    return parse_components(n->at("components"));
}

// Quasifree (Wick) expansion of the undeformed vacuum n-point function.
Complex wick(const ModeSpace& modes, const std::vector<CVector>& fs)
{
    if (fs.empty())
        return 1.0;
    if (fs.size() % 2)
        return 0.0;
    Complex acc{};
    for (std::size_t k = 1; k < fs.size(); ++k) {
        std::vector<CVector> rest;
        for (std::size_t i = 1; i < fs.size(); ++i)
            if (i != k)
                rest.push_back(fs[i]);
        acc += ((k % 2) ? 1.0 : -1.0) * two_point(modes, fs[0], fs[k]) * wick(modes, rest);
    }
    return acc;
}

std::vector<CVector> parse_fields(const Node& root, const ModeSpace& modes, std::uint64_t seed)
{
    std::vector<CVector> fields;
    if (auto f = root.find("fields"))
        for (const Node& n : f->array())
            fields.push_back(parse_field(n, modes.dim()));
    if (auto r = root.find("random_fields")) {
        std::mt19937_64 rng = stream(seed, 0);
        const auto count = r->count(0);
        for (std::uint64_t i = 0; i < count; ++i)
            fields.push_back(random_field(rng, modes.dim()));
    }
    if (fields.empty())
        root.fail("npoint needs 'fields' or 'random_fields'");
    return fields;
}

// ----------------------------------------------------------------------------

void check_admissible(Run& r)
{
    const Node root = r.e.root();
    envelope(root, {"chart", "sample_grid"});
    const ChartPtr chart = parse_chart(root.at("chart"));
    SampleGrid grid;
    if (auto g = root.find("sample_grid")) {
        g->only({"nt", "nx", "nyz", "t", "x", "yz_extent"});
        if (auto v = g->find("nt"))
            grid.nt = static_cast<int>(v->count(2));
        if (auto v = g->find("nx"))
            grid.nx = static_cast<int>(v->count(2));
        if (auto v = g->find("nyz"))
            grid.nyz = static_cast<int>(v->count(2));
        if (auto v = g->find("t")) {
            const Interval t = parse_interval(*v);
            grid.t_lo = t.lo;
            grid.t_hi = t.hi;
        }
        if (auto v = g->find("x")) {
            const Interval x = parse_interval(*v);
            grid.x_lo = x.lo;
            grid.x_hi = x.hi;
        }
        if (auto v = g->find("yz_extent"))
            grid.yz_extent = v->positive();
    }

    const AdmissibilityReport rep = check_admissible(*chart, grid);
    json j = summary(r.e, "check-admissible");
    j["chart"] = {{"family", to_string(chart->family())}, {"name", chart->name()}};
    j["conditions"] = {{"yz_independent", rep.yz_independent}, {"killing", rep.killing},
                       {"spacelike", rep.spacelike},           {"independent", rep.independent},
                       {"signature", rep.signature}};
    j["e3_symmetric"] = rep.e3_symmetric;
    j["points_checked"] = rep.points_checked;
    j["admissible"] = rep.ok();
    if (const FrwData* frw = chart->frw_data()) {
        const Interval tr = frw->tau_range();
        j["conformal_time_range"] = {std::isfinite(tr.lo) ? json(tr.lo) : json(nullptr),
                                     std::isfinite(tr.hi) ? json(tr.hi) : json(nullptr)};
    }
    json viol = json::array();
    for (const auto& v : rep.violations)
        viol.push_back({{"condition", v.condition},
                        {"witness", {v.witness.t, v.witness.x, v.witness.y, v.witness.z}},
                        {"value", v.value}});
    j["violations"] = viol;
    write_json(r.out / "admissibility.json", j);

    r.log << "chart " << chart->name() << ": " << (rep.ok() ? "admissible" : "NOT admissible") << " ("
          << rep.points_checked << " points" << (rep.e3_symmetric ? ", E(3) symmetric" : "") << ")\n";
    std::map<std::string, int> seen;
    for (const auto& v : rep.violations)
        if (seen[v.condition]++ == 0)
            r.violate("admissibility/" + v.condition);
}

void wedge_audit(Run& r)
{
    const Node root = r.e.root();
    envelope(root, {"chart", "wedges", "samples"});
    const ChartPtr chart = parse_chart(root.at("chart"));
    if (!chart->frw_data())
        root.at("chart").fail("wedge audits need a chart with conformal time (frw or minkowski)");
    std::vector<Wedge> wedges;
    for (const Node& w : root.at("wedges").array(1)) {
        w.only({"pair", "base"});
        wedges.emplace_back(parse_pair(w.at("pair"), chart), parse_base(w.at("base"), *chart));
    }
    const std::size_t samples = root.has("samples") ? root.at("samples").count() : 100000;
    constexpr std::size_t chunk = 4096;

    Csv csv(r.out / "wedge_audit.csv", r.e, "wedge-audit", {"wedge", "predicate", "samples", "violations"});
    std::uint64_t stream_key = 0;
    auto audit = [&](const std::string& label, const std::string& predicate, std::size_t n,
                     const std::function<bool(std::mt19937_64&)>& violated) {
        const std::uint64_t key = stream_key++;
        std::vector<std::size_t> counts((n + chunk - 1) / chunk, 0);
        for_each_chunk(n, chunk, r.e.jobs, [&](std::size_t c, std::size_t b, std::size_t e) {
            std::mt19937_64 rng = stream(r.e.seed, (key << 32) | c);
            for (std::size_t i = b; i < e; ++i)
                counts[c] += violated(rng);
        });
        std::size_t total = 0;
        for (std::size_t v : counts)
            total += v;
        csv.row({label, predicate, std::to_string(n), std::to_string(total)});
        r.log << "wedge " << label << " " << predicate << ": " << total << " violations in " << n << "\n";
        if (total)
            r.violate("wedge-audit/" + predicate + " (wedge " + label + ")");
    };

    for (std::size_t i = 0; i < wedges.size(); ++i) {
        const Wedge& w = wedges[i];
        const Wedge comp = causal_complement(w);
        const std::string label = std::to_string(i);
        audit(label, "sample_inside", samples, [&](std::mt19937_64& rng) {
            return !contains(w, sample_wedge_point(w, rng));
        });
        audit(label, "complement_disjoint", samples, [&](std::mt19937_64& rng) {
            const Point q = sample_wedge_point(w, rng), qc = sample_wedge_point(comp, rng);
            return contains(comp, q) || contains(w, qc);
        });
        audit(label, "spacelike_separation", samples, [&](std::mt19937_64& rng) {
            const Point q = sample_wedge_point(w, rng), qc = sample_wedge_point(comp, rng);
            return causal_relation(*chart, q, qc) != CausalRelation::Spacelike;
        });
        audit(label, "flow_invariance", samples, [&](std::mt19937_64& rng) {
            const Point q = sample_wedge_point(w, rng);
            const double s1 = signed_log_uniform(rng, 1e-3, 1e3);
            const double s2 = signed_log_uniform(rng, 1e-3, 1e3);
            return !contains(w, flow(w.pair(), Vec2(s1, s2), q));
        });
        audit(label, "covariance", samples, [&](std::mt19937_64& rng) {
            const Isometry h = random_motion(rng);
            const Wedge hw = transform(h, w);
            const Point q = sample_wedge_point(w, rng), qc = sample_wedge_point(comp, rng);
            return !contains(hw, h.apply(q)) || contains(hw, h.apply(qc));
        });
    }
    for (std::size_t i = 0; i < wedges.size(); ++i)
        for (std::size_t j = 0; j < wedges.size(); ++j) {
            if (i == j || !includes(wedges[i], wedges[j]))
                continue;
            const Wedge& inner = wedges[i];
            const Wedge& outer = wedges[j];
            audit(std::to_string(i) + " in " + std::to_string(j), "inclusion", samples,
                  [&](std::mt19937_64& rng) { return !contains(outer, sample_wedge_point(inner, rng)); });
        }
}

void star_bench(Run& r)
{
    const Node root = r.e.root();
    envelope(root, {"momenta", "random_cases", "lambdas", "quadrature", "cutoff", "tolerance", "timing"});
    const QuadratureConfig cfg = parse_quadrature(root.find("quadrature"));
    const CutoffFunction chi = parse_cutoff(root.find("cutoff"));
    const std::vector<double> lambdas = root.at("lambdas").numbers(1);
    const double tol = root.has("tolerance") ? root.at("tolerance").positive() : 1e-8;
    const bool timing = root.has("timing") && root.at("timing").boolean();

    std::vector<std::pair<Vec2, Vec2>> cases;
    if (auto m = root.find("momenta")) {
        std::vector<Vec2> ks;
        for (const Node& k : m->array(1))
            ks.push_back(k.vec2());
        for (const Vec2& k : ks)
            for (const Vec2& l : ks)
                cases.emplace_back(k, l);
    }
    if (auto rc = root.find("random_cases")) {
        rc->only({"count", "max_component"});
        const auto count = rc->at("count").count(0);
        const auto kmax = static_cast<int>(rc->has("max_component") ? rc->at("max_component").count() : 3);
        std::mt19937_64 rng = stream(r.e.seed, 0);
        std::uniform_int_distribution<int> comp(-kmax, kmax);
        for (std::uint64_t i = 0; i < count; ++i) {
            int v[4];
            for (int& x : v)
                x = comp(rng);
            cases.emplace_back(Vec2(v[0], v[1]), Vec2(v[2], v[3]));
        }
    }
    if (cases.empty())
        root.fail("star-bench needs 'momenta' or 'random_cases'");

    struct Row {
        Complex exact, numeric;
        double eps_final = 0.0, ms = 0.0;
        std::string failure;
    };
    const std::size_t n = cases.size() * lambdas.size();
    std::vector<Row> rows(n);
    PlaneWaveIntegrals integrals(chi, cfg);
    for_each_chunk(n, 1, r.e.jobs, [&](std::size_t idx, std::size_t, std::size_t) {
        const auto& [k, l] = cases[idx / lambdas.size()];
        const double lambda = lambdas[idx % lambdas.size()];
        const PlaneWaveSum f = PlaneWaveSum::wave(k), g = PlaneWaveSum::wave(l);
        Row& row = rows[idx];
        row.exact = star_exact(f, g, lambda)(Vec2::Zero());
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const StarResult s = chi.separable()
                                     ? star_numeric(f, g, lambda, integrals)
                                     : star_numeric(OrbitFunction::plane_waves(f), OrbitFunction::plane_waves(g),
                                                    lambda, chi, cfg);
            row.numeric = s.value;
            row.eps_final = s.eps_final;
        } catch (const ConvergenceError& e) {
            row.numeric = Complex(std::nan(""), std::nan(""));
            row.failure = e.what();
        }
        row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    });

    Csv csv(r.out / "star_bench.csv", r.e, "star-bench",
            {"k1", "k2", "l1", "l2", "lambda", "exact_re", "exact_im", "numeric_re", "numeric_im", "abs_err",
             "eps_final", "runtime_ms"});
    double worst = 0.0;
    std::size_t failed = 0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        const auto& [k, l] = cases[idx / lambdas.size()];
        const Row& row = rows[idx];
        const double err = std::abs(row.numeric - row.exact);
        // exact values are unimodular phases
        const bool ok = row.failure.empty() && err <= tol;
        failed += !ok;
        if (std::isfinite(err))
            worst = std::max(worst, err);
        csv.row({num(k(0)), num(k(1)), num(l(0)), num(l(1)), num(lambdas[idx % lambdas.size()]), num(row.exact.real()),
                 num(row.exact.imag()), num(row.numeric.real()), num(row.numeric.imag()), num(err),
                 num(row.eps_final), timing ? num(row.ms) : "0"});
        if (!row.failure.empty())
            r.log << "case " << idx << ": " << row.failure << "\n";
    }
    r.log << n << " star products, max abs error " << worst << ", " << failed << " above tolerance " << tol << "\n";
    if (failed)
        r.violate("star-bench/abs_err <= " + num(tol) + " (" + std::to_string(failed) + " cases)");
}

void npoint(Run& r)
{
    const Node root = r.e.root();
    envelope(root, {"modes", "pair", "lambdas", "fields", "random_fields", "tuples", "tolerance"});
    const FockRep rep(parse_modes(root.find("modes")));
    const ModeSpace& modes = rep.modes();
    const Mat23 c = parse_pair_components(root.find("pair"));
    const std::vector<double> lambdas = root.at("lambdas").numbers(1);
    const std::vector<CVector> fields = parse_fields(root, modes, r.e.seed);
    const double tol = root.has("tolerance") ? root.at("tolerance").positive() : 1e-10;

    std::vector<std::vector<std::size_t>> tuples;
    if (auto t = root.find("tuples")) {
        for (const Node& tn : t->array(1)) {
            std::vector<std::size_t> idx;
            for (const Node& i : tn.array(1)) {
                const auto v = i.count(0);
                if (v >= fields.size())
                    i.fail("field index out of range");
                idx.push_back(v);
            }
            tuples.push_back(idx);
        }
    } else {
        for (std::size_t n = 1; n <= fields.size(); ++n) {
            tuples.emplace_back();
            for (std::size_t i = 0; i < n; ++i)
                tuples.back().push_back(i);
        }
    }

    struct Cell {
        Complex value;
        std::string failure;
    };
    std::vector<Cell> cells(tuples.size() * lambdas.size());
    for_each_chunk(cells.size(), 1, r.e.jobs, [&](std::size_t idx, std::size_t, std::size_t) {
        const auto& tuple = tuples[idx / lambdas.size()];
        const double lambda = lambdas[idx % lambdas.size()];
        std::vector<CVector> fs;
        double scale = 1.0;
        for (std::size_t i : tuple) {
            fs.push_back(fields[i]);
            scale *= std::max(1.0, fields[i].norm());
        }
        Cell& cell = cells[idx];
        cell.value = deformed_npoint(rep, fs, c, lambda);
        const double bound = tol * scale;
        auto check = [&](const char* invariant, Complex expected) {
            if (std::abs(cell.value - expected) > bound && cell.failure.empty())
                cell.failure = invariant;
        };
        if (fs.size() % 2)
            check("odd n-point functions vanish", 0.0);
        if (lambda == 0.0)
            check("undeformed n-point equals quasifree value", wick(modes, fs));
        if (fs.size() == 2)
            check("two-point function is undeformed", two_point(modes, fs[0], fs[1]));
        if (fs.size() == 4)
            check("four-point function equals closed form",
                  deformed_4pt_formula(modes, fs[0], fs[1], fs[2], fs[3], c, lambda));
    });

    Csv csv(r.out / "npoint.csv", r.e, "npoint", {"fields_hash", "fields", "n", "lambda", "re", "im"});
    std::map<std::string, int> failures;
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        const auto& tuple = tuples[idx / lambdas.size()];
        std::string coeffs, names;
        for (std::size_t i : tuple) {
            names += (names.empty() ? "" : " ") + std::to_string(i);
            for (Eigen::Index j = 0; j < fields[i].size(); ++j)
                coeffs += num(fields[i](j).real()) + ";" + num(fields[i](j).imag()) + ";";
            coeffs += "|";
        }
        const Complex v = cells[idx].value;
        csv.row({hex64(fnv1a64(coeffs)), names, std::to_string(tuple.size()), num(lambdas[idx % lambdas.size()]),
                 num(v.real()), num(v.imag())});
        if (!cells[idx].failure.empty())
            ++failures[cells[idx].failure];
    }
    r.log << cells.size() << " n-point values over " << tuples.size() << " field tuples\n";
    for (const auto& [invariant, count] : failures)
        r.violate("npoint/" + invariant + " (" + std::to_string(count) + " cells)");
}

void nonequiv(Run& r)
{
    const Node root = r.e.root();
    envelope(root, {"modes", "phi", "lambdas", "f", "f1", "f4", "slope_tolerance", "slope_step"});
    const FockRep rep(parse_modes(root.find("modes")));
    const ModeSpace& modes = rep.modes();
    const double phi = root.at("phi").number();
    const std::vector<double> lambdas = root.at("lambdas").numbers(2);
    const double slope_tol = root.has("slope_tolerance") ? root.at("slope_tolerance").positive() : 0.05;
    const double step = root.has("slope_step") ? root.at("slope_step").positive() : 1e-3;

    std::mt19937_64 rng = stream(r.e.seed, 0);
    auto field = [&](const char* key) {
        CVector drawn = random_field(rng, modes.dim());
        if (auto n = root.find(key))
            return parse_field(*n, modes.dim());
        return drawn;
    };
    const CVector f = field("f"), f1 = field("f1"), f4 = field("f4");

    const DiscrepancyReport sweep = lambda_sweep(rep, f, phi, lambdas);
    std::vector<Complex> four(lambdas.size());
    for_each_chunk(lambdas.size(), 1, r.e.jobs, [&](std::size_t i, std::size_t, std::size_t) {
        four[i] = four_point_discrepancy(rep, f1, f, f4, phi, lambdas[i]);
    });

    Csv csv(r.out / "nonequiv.csv", r.e, "nonequiv", {"lambda", "norm", "four_point_re", "four_point_im"});
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        csv.row({num(lambdas[i]), num(sweep.norms[i]), num(four[i].real()), num(four[i].imag())});

    const Complex d = poisson_discrepancy(modes, f1, f, f4, phi);
    const Complex slope = four_point_discrepancy(rep, f1, f, f4, phi, step) / step;
    const Complex predicted = -2.0 * static_cast<double>(poisson_constant()) * Complex(0.0, 1.0) * d;
    auto rel = [](double a, double b) { return b != 0.0 ? std::abs(a - b) / std::abs(b) : std::abs(a); };
    const double norm_rel = rel(sweep.fitted_slope, sweep.predicted_slope);
    const double four_rel = std::abs(predicted) > 0.0 ? std::abs(slope - predicted) / std::abs(predicted)
                                                      : std::abs(slope);

    json j = summary(r.e, "nonequiv");
    j["phi"] = phi;
    j["norm_slope"] = {{"fitted", sweep.fitted_slope}, {"predicted", sweep.predicted_slope}, {"relative_error", norm_rel}};
    j["four_point_slope"] = {{"fitted", {slope.real(), slope.imag()}},
                             {"predicted", {predicted.real(), predicted.imag()}},
                             {"relative_error", four_rel}};
    j["poisson_discrepancy"] = {d.real(), d.imag()};
    j["zero_at_zero"] = sweep.zero_at_zero;
    j["positive_off_zero"] = sweep.positive_off_zero;
    write_json(r.out / "nonequiv_summary.json", j);

    r.log << "phi " << phi << ": norm slope " << sweep.fitted_slope << " vs " << sweep.predicted_slope
          << ", four-point slope deviation " << four_rel << "\n";
    if (!sweep.zero_at_zero)
        r.violate("nonequiv/deformed operators agree at lambda = 0");
    if (!sweep.positive_off_zero)
        r.violate("nonequiv/deformed operators differ for lambda != 0");
    if (!(norm_rel <= slope_tol))
        r.violate("nonequiv/norm slope matches first-order prediction");
    if (!(four_rel <= slope_tol))
        r.violate("nonequiv/four-point slope matches Poisson discrepancy");
}

void pin(Run& r)
{
    const Node root = r.e.root();
    envelope(root, {"quadrature", "cutoff", "tolerance"});
    const QuadratureConfig cfg = parse_quadrature(root.find("quadrature"));
    const CutoffFunction chi = parse_cutoff(root.find("cutoff"));
    const double tol = root.has("tolerance") ? root.at("tolerance").positive() : 1e-8;

    const ConventionReport rep = pin_conventions(chi, cfg);
    auto route = [](const ConventionEstimate& c) {
        return json{{"sigma", c.sigma}, {"sigma_prime", c.sigma_prime}, {"poisson_c", c.poisson_c}};
    };
    const bool matches_build =
        rep.sigma == sigma() && rep.sigma_prime == sigma_prime() && rep.poisson_c == poisson_constant();
    json j = summary(r.e, "pin-conventions");
    j["sigma"] = rep.sigma;
    j["sigma_prime"] = rep.sigma_prime;
    j["poisson_c"] = rep.poisson_c;
    j["max_residual"] = rep.max_residual;
    j["route_disagreement"] = rep.route_disagreement;
    j["function_route"] = route(rep.function_route);
    j["matrix_route"] = route(rep.matrix_route);
    j["matches_build"] = matches_build;
    write_json(r.out / "conventions.json", j);

    r.log << "sigma " << rep.sigma << ", sigma' " << rep.sigma_prime << ", c " << rep.poisson_c << "; residual "
          << rep.max_residual << ", route disagreement " << rep.route_disagreement << "\n";
    if (!rep.ok(tol))
        r.violate("pin-conventions/oracle residual < " + num(tol));
    if (!matches_build)
        r.violate("pin-conventions/constants equal the build-time values");
}

const std::map<std::string, std::function<void(Run&)>>& registry()
{
    static const std::map<std::string, std::function<void(Run&)>> table = {
        {"check-admissible", check_admissible},
        {"wedge-audit", wedge_audit},
        {"star-bench", star_bench},
        {"npoint", npoint},
        {"nonequiv", nonequiv},
        {"pin-conventions", pin},
    };
    return table;
}

} // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry())
            v.push_back(name);
        return v;
    }();
    return names;
}

int run(const Options& opts, std::ostream& log)
{
    const auto cmd = registry().find(opts.command);
    if (cmd == registry().end()) {
        log << "unknown subcommand '" << opts.command << "'\n";
        return exit_schema;
    }
    try {
        std::ifstream in(opts.config_path, std::ios::binary);
        if (!in) {
            log << "schema error: cannot read config " << opts.config_path << "\n";
            return exit_schema;
        }
        std::stringstream text;
        text << in.rdbuf();
        const Experiment e = load_experiment(text.str(), opts.seed, opts.jobs);
        fs::create_directories(opts.out_dir);
        Run r{e, fs::path(opts.out_dir), log, {}};
        cmd->second(r);
        if (!r.violations.empty()) {
            for (const auto& v : r.violations)
                log << "contract violated: " << v << "\n";
            return exit_contract;
        }
        log << opts.command << ": ok (config " << e.hash << ")\n";
        return exit_ok;
    } catch (const SchemaError& err) {
        log << "schema error: " << err.what() << "\n";
        return exit_schema;
    } catch (const DomainError& err) {
        log << "schema error: invalid value: " << err.what() << "\n";
        return exit_schema;
    } catch (const UnsupportedError& err) {
        log << "schema error: unsupported: " << err.what() << "\n";
        return exit_schema;
    } catch (const std::exception& err) {
        log << "contract violated: " << err.what() << "\n";
        return exit_contract;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& log)
{
    CLI::App app{"Wedge-local deformation experiments"};
    Options opts;
    std::uint64_t seed = 0;
    app.add_option("command", opts.command, "Subcommand to run")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("--config", opts.config_path, "Experiment config (JSON)")->required();
    app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
    app.add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_schema;
    }
    if (*seed_opt)
        opts.seed = seed;
    return run(opts, log);
}

} // namespace wedgeqft::cli
