#pragma once

// Run configuration: one JSON document with a schema_version field.
//
// {
//   "schema_version": 1,
//   "problem": "wave" | "petrovsky" | "scalar",
//   "alpha": 1.5,
//   "time": {"t_max": 2.0, "n_t": 200},
//   "space": {"L": 3.141592653589793, "n_x": 101, "n_modes": 16, "quadrature_points": 2049},
//   "initial_data": {"u0": {...}, "u1": {...}, "declared_class": "weak_data"},
//   "scalar": {"lambda": 1.0, "x0": 1.0, "y0": 0.0},
//   "tolerances": {"boundary": 1e-12, "initial": 1e-9},
//   "output": {"directory": ".", "prefix": "fracspec"}
// }
//
// "space" and "initial_data" apply to field problems, "scalar" to the scalar
// one. The boundary tolerance is relative to each field's peak, the initial
// one absolute. Initial data presets: {"preset": "zero"}, {"preset": "single_mode",
// "k": 1, "amplitude": 1}, {"preset": "parabola", "amplitude": 1} for
// amplitude * x (L - x), {"preset": "coefficients", "values": [...]}.
// A top-level "run" object (as written into run manifests) is ignored, so a
// manifest can be fed back in as a config.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracspec/spectral_core.hpp"

namespace fracspec::io {

using json = nlohmann::ordered_json;

inline constexpr int config_schema_version = 1;

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RunKind { wave, petrovsky, scalar };

inline const char* to_string(RunKind k)
{
    switch (k) {
    case RunKind::wave: return "wave";
    case RunKind::petrovsky: return "petrovsky";
    case RunKind::scalar: return "scalar";
    }
    return "?";
}

struct InitialData {
    enum class Preset { zero, single_mode, parabola, coefficients };
    Preset preset = Preset::zero;
    std::size_t k = 1;
    double amplitude = 1.0;
    std::vector<double> values;
};

inline const char* to_string(InitialData::Preset p)
{
    switch (p) {
    case InitialData::Preset::zero: return "zero";
    case InitialData::Preset::single_mode: return "single_mode";
    case InitialData::Preset::parabola: return "parabola";
    case InitialData::Preset::coefficients: return "coefficients";
    }
    return "?";
}

struct RunConfig {
    RunKind problem = RunKind::wave;
    double alpha = 1.5;
    double t_max = 1.0;
    std::size_t n_t = 100;

    double L = std::numbers::pi;
    std::size_t n_x = 101;
    std::size_t n_modes = 16;
    std::size_t quadrature_points = 2049;
    InitialData u0;
    InitialData u1;
    DataClass declared = DataClass::weak_data;

    double lambda = 1.0;
    double x0 = 1.0;
    double y0 = 0.0;

    double boundary_tol = 1e-12;
    double initial_tol = 1e-9;

    std::string output_directory = ".";
    std::string output_prefix = "fracspec";

    [[nodiscard]] bool is_field() const { return problem != RunKind::scalar; }
};

namespace detail {

class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            fail("must be an object");
    }

    void allow(std::initializer_list<const char*> keys) const
    {
        std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto& [key, _] : j_.items())
            if (!ok.count(key))
                throw config_error(path_ + ": unknown key '" + key + "'");
    }

    [[nodiscard]] bool has(const char* key) const { return j_.contains(key); }

    [[nodiscard]] const json& at(const char* key) const
    {
        if (!j_.contains(key))
            throw config_error(path_ + ": missing key '" + key + "'");
        return j_.at(key);
    }

    [[nodiscard]] double number(const char* key) const
    {
        const json& v = at(key);
        if (!v.is_number())
            throw config_error(name(key) + " must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d))
            throw config_error(name(key) + " must be finite");
        return d;
    }

    [[nodiscard]] double number_or(const char* key, double fallback) const
    {
        return has(key) ? number(key) : fallback;
    }

    [[nodiscard]] std::size_t count(const char* key) const
    {
        const json& v = at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw config_error(name(key) + " must be a non-negative integer");
        return static_cast<std::size_t>(v.get<long long>());
    }

    [[nodiscard]] std::size_t count_or(const char* key, std::size_t fallback) const
    {
        return has(key) ? count(key) : fallback;
    }

    [[nodiscard]] std::string text(const char* key) const
    {
        const json& v = at(key);
        if (!v.is_string())
            throw config_error(name(key) + " must be a string");
        return v.get<std::string>();
    }

    [[nodiscard]] std::string text_or(const char* key, const std::string& fallback) const
    {
        return has(key) ? text(key) : fallback;
    }

    [[nodiscard]] Reader child(const char* key) const { return Reader(at(key), name(key)); }

    [[nodiscard]] std::string name(const char* key) const { return path_ + "." + key; }

    [[noreturn]] void fail(const std::string& what) const { throw config_error(path_ + " " + what); }

private:
    const json& j_;
    std::string path_;
};

inline InitialData read_initial(const Reader& r)
{
    InitialData d;
    const std::string preset = r.text("preset");
    if (preset == "zero") {
        r.allow({"preset"});
        d.preset = InitialData::Preset::zero;
    } else if (preset == "single_mode") {
        r.allow({"preset", "k", "amplitude"});
        d.preset = InitialData::Preset::single_mode;
        d.k = r.count_or("k", 1);
        d.amplitude = r.number_or("amplitude", 1.0);
    } else if (preset == "parabola") {
        r.allow({"preset", "amplitude"});
        d.preset = InitialData::Preset::parabola;
        d.amplitude = r.number_or("amplitude", 1.0);
    } else if (preset == "coefficients") {
        r.allow({"preset", "values"});
        d.preset = InitialData::Preset::coefficients;
        const json& v = r.at("values");
        if (!v.is_array() || v.empty())
            throw config_error(r.name("values") + " must be a non-empty array of numbers");
        for (const json& e : v) {
            if (!e.is_number() || !std::isfinite(e.get<double>()))
                throw config_error(r.name("values") + " must hold finite numbers");
            d.values.push_back(e.get<double>());
        }
    } else {
        throw config_error(r.name("preset") + ": unknown preset '" + preset + "'");
    }
    return d;
}

inline void check_initial(const InitialData& d, std::size_t n_modes, const std::string& where)
{
    if (d.preset == InitialData::Preset::single_mode && (d.k < 1 || d.k > n_modes))
        throw config_error(where + ".k must lie in [1, n_modes]");
    if (d.preset == InitialData::Preset::coefficients && d.values.size() > n_modes)
        throw config_error(where + ".values has more entries than n_modes");
}

inline json write_initial(const InitialData& d)
{
    json j;
    j["preset"] = to_string(d.preset);
    switch (d.preset) {
    case InitialData::Preset::zero: break;
    case InitialData::Preset::single_mode:
        j["k"] = d.k;
        j["amplitude"] = d.amplitude;
        break;
    case InitialData::Preset::parabola: j["amplitude"] = d.amplitude; break;
    case InitialData::Preset::coefficients: j["values"] = d.values; break;
    }
    return j;
}

}  // namespace detail

inline RunConfig parse_config(const json& j)
{
    detail::Reader root(j, "config");
    root.allow({"schema_version", "problem", "alpha", "time", "space", "initial_data", "scalar", "tolerances",
                "output", "run"});
    RunConfig c;
    if (root.count("schema_version") != static_cast<std::size_t>(config_schema_version))
        throw config_error("config.schema_version must be " + std::to_string(config_schema_version));

    const std::string problem = root.text("problem");
    if (problem == "wave")
        c.problem = RunKind::wave;
    else if (problem == "petrovsky")
        c.problem = RunKind::petrovsky;
    else if (problem == "scalar")
        c.problem = RunKind::scalar;
    else
        throw config_error("config.problem: unknown problem '" + problem + "'");

    c.alpha = root.number("alpha");
    if (!(c.alpha > 1.0 && c.alpha < 2.0))
        throw config_error("config.alpha must lie in (1, 2)");

    const detail::Reader time = root.child("time");
    time.allow({"t_max", "n_t"});
    c.t_max = time.number("t_max");
    c.n_t = time.count("n_t");
    if (!(c.t_max > 0.0))
        throw config_error("config.time.t_max must be positive");
    if (c.n_t < 1)
        throw config_error("config.time.n_t must be at least 1");

    if (c.is_field()) {
        if (root.has("scalar"))
            throw config_error("config.scalar applies only to problem 'scalar'");
        const detail::Reader space = root.child("space");
        space.allow({"L", "n_x", "n_modes", "quadrature_points"});
        c.L = space.number_or("L", std::numbers::pi);
        c.n_x = space.count_or("n_x", c.n_x);
        c.n_modes = space.count_or("n_modes", c.n_modes);
        c.quadrature_points = space.count_or("quadrature_points", c.quadrature_points);
        if (!(c.L > 0.0))
            throw config_error("config.space.L must be positive");
        if (c.n_x < 2)
            throw config_error("config.space.n_x must be at least 2");
        if (c.n_modes < 1)
            throw config_error("config.space.n_modes must be at least 1");
        if (c.quadrature_points < 3)
            throw config_error("config.space.quadrature_points must be at least 3");

        const detail::Reader data = root.child("initial_data");
        data.allow({"u0", "u1", "declared_class"});
        c.u0 = detail::read_initial(data.child("u0"));
        c.u1 = data.has("u1") ? detail::read_initial(data.child("u1")) : InitialData{};
        detail::check_initial(c.u0, c.n_modes, "config.initial_data.u0");
        detail::check_initial(c.u1, c.n_modes, "config.initial_data.u1");
        const std::string declared = data.text_or("declared_class", "weak_data");
        if (declared == "weak_data")
            c.declared = DataClass::weak_data;
        else if (declared == "strong_data")
            c.declared = DataClass::strong_data;
        else
            throw config_error("config.initial_data.declared_class must be weak_data or strong_data");
    } else {
        if (root.has("space") || root.has("initial_data"))
            throw config_error("config.space and config.initial_data apply only to field problems");
        const detail::Reader scalar = root.child("scalar");
        scalar.allow({"lambda", "x0", "y0"});
        c.lambda = scalar.number("lambda");
        c.x0 = scalar.number_or("x0", 1.0);
        c.y0 = scalar.number_or("y0", 0.0);
        if (!(c.lambda > 0.0))
            throw config_error("config.scalar.lambda must be positive");
    }

    if (root.has("tolerances")) {
        const detail::Reader tol = root.child("tolerances");
        tol.allow({"boundary", "initial"});
        c.boundary_tol = tol.number_or("boundary", c.boundary_tol);
        c.initial_tol = tol.number_or("initial", c.initial_tol);
        if (!(c.boundary_tol > 0.0) || !(c.initial_tol > 0.0))
            throw config_error("config.tolerances must be positive");
    }

    if (root.has("output")) {
        const detail::Reader out = root.child("output");
        out.allow({"directory", "prefix"});
        c.output_directory = out.text_or("directory", c.output_directory);
        c.output_prefix = out.text_or("prefix", c.output_prefix);
        if (c.output_prefix.empty())
            throw config_error("config.output.prefix must not be empty");
    }
    return c;
}

/// Normalised config with every default spelled out.
inline json config_to_json(const RunConfig& c)
{
    json j;
    j["schema_version"] = config_schema_version;
    j["problem"] = to_string(c.problem);
    j["alpha"] = c.alpha;
    j["time"] = {{"t_max", c.t_max}, {"n_t", c.n_t}};
    if (c.is_field()) {
        j["space"] = {{"L", c.L}, {"n_x", c.n_x}, {"n_modes", c.n_modes}, {"quadrature_points", c.quadrature_points}};
        j["initial_data"] = {{"u0", detail::write_initial(c.u0)},
                             {"u1", detail::write_initial(c.u1)},
                             {"declared_class", to_string(c.declared)}};
    } else {
        j["scalar"] = {{"lambda", c.lambda}, {"x0", c.x0}, {"y0", c.y0}};
    }
    j["tolerances"] = {{"boundary", c.boundary_tol}, {"initial", c.initial_tol}};
    j["output"] = {{"directory", c.output_directory}, {"prefix", c.output_prefix}};
    return j;
}

inline RunConfig parse_config_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

inline RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace fracspec::io
