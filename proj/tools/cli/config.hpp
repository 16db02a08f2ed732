#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wedgeqft/car.hpp"
#include "wedgeqft/geometry.hpp"
#include "wedgeqft/killing.hpp"
#include "wedgeqft/oscillatory.hpp"

namespace wedgeqft::cli {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t h);

// Read-only view of a JSON value that reports schema errors with the path
// of the offending entry.
class Node {
public:
    Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

    const std::string& path() const { return path_; }
    const json& raw() const { return *j_; }

    bool has(const std::string& key) const;
    Node at(const std::string& key) const;
    std::optional<Node> find(const std::string& key) const;
    // Rejects keys outside `allowed` so that typos do not pass silently.
    void only(std::initializer_list<const char*> allowed) const;

    double number() const;
    double positive() const;
    std::int64_t integer() const;
    std::uint64_t count(std::uint64_t min = 1) const;
    bool boolean() const;
    std::string string() const;
    std::vector<Node> array(std::size_t min = 0) const;
    std::vector<double> numbers(std::size_t min = 0) const;
    Vec2 vec2() const;
    Vec3 vec3() const;
    Complex complex() const; // number or [re, im]

    [[noreturn]] void fail(const std::string& what) const;

private:
    const json* j_;
    std::string path_;
};

struct Experiment {
    json doc;            // parsed config with the effective seed filled in
    std::uint64_t seed;
    std::string hash;    // FNV-1a 64 of the canonical dump of `doc`
    unsigned jobs = 1;

    Node root() const { return Node(doc, "$"); }
};

// Parses and validates the common envelope (schema_version, seed).
Experiment load_experiment(const std::string& text, std::optional<std::uint64_t> seed_override, unsigned jobs);

ChartPtr parse_chart(const Node& n);
Interval parse_interval(const Node& n);
ScaleFactor parse_scale_factor(const Node& n);
// "zeta", "zeta_inverted", or {"components": [[..3..],[..3..]]}.
KillingPair parse_pair(const Node& n, const ChartPtr& chart);
// [tau, x, y, z] in conformal time.
Point parse_base(const Node& n, const Chart& chart);
QuadratureConfig parse_quadrature(const std::optional<Node>& n);
CutoffFunction parse_cutoff(const std::optional<Node>& n);
// "default", "planar:<m>" or {"momenta": [[px,py,pz], ...]}.
ModeSpace parse_modes(const std::optional<Node>& n);
CVector parse_field(const Node& n, int dim);
Mat23 parse_components(const Node& n);

} // namespace wedgeqft::cli
