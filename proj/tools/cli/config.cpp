#include "config.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "wedgeqft/errors.hpp"

namespace wedgeqft::cli {

std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void Node::fail(const std::string& what) const
{
    throw SchemaError(path_ + ": " + what);
}

bool Node::has(const std::string& key) const
{
    return j_->is_object() && j_->contains(key);
}

Node Node::at(const std::string& key) const
{
    if (!j_->is_object())
        fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end())
        fail("missing required key '" + key + "'");
    return Node(*it, path_ + "." + key);
}

std::optional<Node> Node::find(const std::string& key) const
{
    if (!j_->is_object())
        fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end())
        return std::nullopt;
    return Node(*it, path_ + "." + key);
}

void Node::only(std::initializer_list<const char*> allowed) const
{
    if (!j_->is_object())
        fail("expected an object");
    for (auto it = j_->begin(); it != j_->end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            known = known || it.key() == a;
        if (!known)
            fail("unknown key '" + it.key() + "'");
    }
}

double Node::number() const
{
    if (!j_->is_number())
        fail("expected a number");
    const double v = j_->get<double>();
    if (!std::isfinite(v))
        fail("expected a finite number");
    return v;
}

double Node::positive() const
{
    const double v = number();
    if (!(v > 0.0))
        fail("expected a positive number");
    return v;
}

std::int64_t Node::integer() const
{
    if (!j_->is_number_integer())
        fail("expected an integer");
    return j_->get<std::int64_t>();
}

std::uint64_t Node::count(std::uint64_t min) const
{
    if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<std::int64_t>() >= 0))
        fail("expected a non-negative integer");
    const auto v = j_->get<std::uint64_t>();
    if (v < min)
        fail("expected an integer >= " + std::to_string(min));
    return v;
}

bool Node::boolean() const
{
    if (!j_->is_boolean())
        fail("expected true or false");
    return j_->get<bool>();
}

std::string Node::string() const
{
    if (!j_->is_string())
        fail("expected a string");
    return j_->get<std::string>();
}

std::vector<Node> Node::array(std::size_t min) const
{
    if (!j_->is_array())
        fail("expected an array");
    if (j_->size() < min)
        fail("expected at least " + std::to_string(min) + " entries");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_->size(); ++i)
        out.emplace_back((*j_)[i], path_ + "[" + std::to_string(i) + "]");
    return out;
}

std::vector<double> Node::numbers(std::size_t min) const
{
    std::vector<double> out;
    for (const Node& n : array(min))
        out.push_back(n.number());
    return out;
}

Vec2 Node::vec2() const
{
    if (!j_->is_array() || j_->size() != 2)
        fail("expected [a, b]");
    const auto v = numbers();
    return {v[0], v[1]};
}

Vec3 Node::vec3() const
{
    if (!j_->is_array() || j_->size() != 3)
        fail("expected [a, b, c]");
    const auto v = numbers();
    return {v[0], v[1], v[2]};
}

Complex Node::complex() const
{
    if (j_->is_number())
        return number();
    const Vec2 v = vec2();
    return {v(0), v(1)};
}

Experiment load_experiment(const std::string& text, std::optional<std::uint64_t> seed_override, unsigned jobs)
{
    Experiment e;
    try {
        e.doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw SchemaError(std::string("config is not valid JSON: ") + err.what());
    }
    const Node root = e.root();
    if (!root.raw().is_object())
        root.fail("config must be a JSON object");
    if (root.at("schema_version").integer() != schema_version)
        root.at("schema_version").fail("unsupported schema version (expected " + std::to_string(schema_version) + ")");
    if (seed_override)
        e.doc["seed"] = *seed_override;
    e.seed = e.root().at("seed").count(0);
    e.hash = hex64(fnv1a64(e.doc.dump()));
    e.jobs = jobs == 0 ? 1 : jobs;
    return e;
}

Interval parse_interval(const Node& n)
{
    // null stands for an infinite end
    const auto items = n.array();
    if (items.size() != 2)
        n.fail("expected [lo, hi]");
    const double inf = std::numeric_limits<double>::infinity();
    const double lo = items[0].raw().is_null() ? -inf : items[0].number();
    const double hi = items[1].raw().is_null() ? inf : items[1].number();
    if (!(lo < hi))
        n.fail("interval must satisfy lo < hi");
    return {lo, hi};
}

ScaleFactor parse_scale_factor(const Node& n)
{
    const std::string kind = n.at("kind").string();
    if (kind == "power") {
        n.only({"kind", "exponent", "amplitude"});
        const auto amp = n.find("amplitude");
        return ScaleFactor::power(n.at("exponent").number(), amp ? amp->positive() : 1.0);
    }
    if (kind == "constant") {
        n.only({"kind", "value"});
        return ScaleFactor::constant(n.at("value").positive());
    }
    if (kind == "exponential") {
        n.only({"kind", "rate", "amplitude"});
        const auto amp = n.find("amplitude");
        return ScaleFactor::exponential(n.at("rate").number(), amp ? amp->positive() : 1.0);
    }
    if (kind == "tabulated") {
        n.only({"kind", "t_first", "step", "values"});
        return ScaleFactor::tabulated(n.at("t_first").number(), n.at("step").positive(),
                                      n.at("values").numbers(4));
    }
    n.at("kind").fail("unknown scale factor kind '" + kind + "'");
}

ChartPtr parse_chart(const Node& n)
{
    const std::string family = n.at("family").string();
    if (family == "minkowski") {
        n.only({"family"});
        return Chart::minkowski();
    }
    if (family == "frw") {
        n.only({"family", "a", "J", "t0"});
        const auto t0 = n.find("t0");
        return Chart::frw(parse_scale_factor(n.at("a")), parse_interval(n.at("J")),
                          t0 ? std::optional<double>(t0->number()) : std::nullopt);
    }
    if (family == "kasner") {
        n.only({"family", "p", "J", "x_range"});
        const Vec3 p = n.at("p").vec3();
        const auto J = n.find("J");
        const auto xr = n.find("x_range");
        return Chart::kasner(p(0), p(1), p(2),
                             J ? parse_interval(*J) : Interval{0.0, std::numeric_limits<double>::infinity()},
                             xr ? parse_interval(*xr) : Interval::line());
    }
    if (family == "tabulated") {
        n.only({"family", "t_first", "step", "f", "q", "name"});
        const auto fs = n.at("f").array();
        if (fs.size() != 4)
            n.at("f").fail("expected four coefficient tables f0..f3");
        std::array<std::vector<double>, 4> f;
        for (int i = 0; i < 4; ++i)
            f[i] = fs[i].numbers(4);
        const auto q = n.find("q");
        const auto name = n.find("name");
        return Chart::tabulated(n.at("t_first").number(), n.at("step").positive(), f,
                                q ? q->numbers(4) : std::vector<double>{}, name ? name->string() : "tabulated");
    }
    n.at("family").fail("unknown chart family '" + family + "'");
}

Mat23 parse_components(const Node& n)
{
    const auto rows = n.array();
    if (rows.size() != 2)
        n.fail("expected two rows of three components");
    Mat23 c;
    c.row(0) = rows[0].vec3().transpose();
    c.row(1) = rows[1].vec3().transpose();
    return c;
}

KillingPair parse_pair(const Node& n, const ChartPtr& chart)
{
    if (n.raw().is_string()) {
        const std::string name = n.string();
        if (name == "zeta")
            return standard_pair(chart);
        if (name == "zeta_inverted")
            return standard_pair(chart).inverted();
        n.fail("unknown pair name '" + name + "'");
    }
    n.only({"components"});
    return KillingPair(chart, parse_components(n.at("components")));
}

Point parse_base(const Node& n, const Chart& chart)
{
    const auto v = n.numbers();
    if (v.size() != 4)
        n.fail("expected [tau, x, y, z]");
    const FrwData* frw = chart.frw_data();
    if (!frw)
        n.fail("wedge bases need a chart with conformal time (frw or minkowski)");
    if (!frw->tau_range().contains(v[0]))
        n.fail("tau outside the conformal-time range of the chart");
    return {frw->time_of_tau(v[0]), v[1], v[2], v[3]};
}

CutoffFunction parse_cutoff(const std::optional<Node>& n)
{
    if (!n)
        return CutoffFunction{};
    n->only({"family", "scale"});
    const auto fam = n->find("family");
    const auto scale = n->find("scale");
    CutoffFamily family = CutoffFamily::coordinate_product;
    if (fam) {
        try {
            family = cutoff_family_from_string(fam->string());
        } catch (const Error&) {
            fam->fail("unknown cutoff family");
        }
    }
    return CutoffFunction(family, scale ? scale->positive() : 1.0);
}

QuadratureConfig parse_quadrature(const std::optional<Node>& n)
{
    QuadratureConfig cfg;
    if (!n)
        return cfg;
    n->only({"eps_first", "eps_last", "tolerance", "richardson_levels", "spectral_tail", "spectral_tail_2d",
             "max_grid_1d", "max_grid_2d"});
    const auto first = n->find("eps_first");
    const auto last = n->find("eps_last");
    if (first || last)
        cfg.eps = QuadratureConfig::geometric_eps(first ? first->positive() : 0.5,
                                                  last ? last->positive() : 1.0 / 256.0);
    if (auto v = n->find("tolerance"))
        cfg.tolerance = v->positive();
    if (auto v = n->find("richardson_levels"))
        cfg.richardson_levels = static_cast<int>(v->count(0));
    if (auto v = n->find("spectral_tail"))
        cfg.spectral_tail = v->positive();
    if (auto v = n->find("spectral_tail_2d"))
        cfg.spectral_tail_2d = v->positive();
    if (auto v = n->find("max_grid_1d"))
        cfg.max_grid_1d = v->count();
    if (auto v = n->find("max_grid_2d"))
        cfg.max_grid_2d = v->count();
    try {
        cfg.validate();
    } catch (const Error& e) {
        n->fail(e.what());
    }
    return cfg;
}

ModeSpace parse_modes(const std::optional<Node>& n)
{
    if (!n)
        return ModeSpace::default_grid();
    if (n->raw().is_string()) {
        const std::string s = n->string();
        if (s == "default")
            return ModeSpace::default_grid();
        if (s.rfind("planar:", 0) == 0) {
            const int m = std::atoi(s.c_str() + 7);
            if (m < 1 || m > 4)
                n->fail("planar mode sets have 1 to 4 pairs");
            return ModeSpace::planar(m);
        }
        n->fail("unknown mode set '" + s + "'");
    }
    n->only({"momenta"});
    std::vector<Vec3> p;
    for (const Node& v : n->at("momenta").array(1))
        p.push_back(v.vec3());
    try {
        return ModeSpace(std::move(p));
    } catch (const Error& e) {
        n->fail(e.what());
    }
}

CVector parse_field(const Node& n, int dim)
{
    const auto items = n.array();
    if (static_cast<int>(items.size()) != dim)
        n.fail("expected " + std::to_string(dim) + " coefficients");
    CVector f(dim);
    for (int j = 0; j < dim; ++j)
        f(j) = items[static_cast<std::size_t>(j)].complex();
    return f;
}

} // namespace wedgeqft::cli
