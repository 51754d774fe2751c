#pragma once

// `fracspec solve`: config in, CSV fields and a JSON manifest out.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fracspec/io/config.hpp"
#include "fracspec/io/csv.hpp"
#include "fracspec/model_problems.hpp"
#include "fracspec/scalar_fode.hpp"
#include "fracspec/spectral_core.hpp"

namespace fracspec::io {

/// A solved run: file contents keyed by path, plus the manifest.
struct RunOutput {
    std::vector<std::pair<std::string, std::string>> files;
    nlohmann::ordered_json manifest;
    bool checks_passed = true;
};

inline IntervalProblem interval_problem(const RunConfig& c)
{
    IntervalProblem p;
    p.L = c.L;
    p.kind = c.problem == RunKind::petrovsky ? ProblemKind::petrovsky : ProblemKind::wave;
    p.n_modes = c.n_modes;
    p.quadrature_points = c.quadrature_points;
    return p;
}

/// Modal coefficients of one initial-data selector.
inline std::vector<double> initial_coefficients(const InitialData& d, const IntervalProblem& p)
{
    std::vector<double> c(p.n_modes, 0.0);
    switch (d.preset) {
    case InitialData::Preset::zero: break;
    case InitialData::Preset::single_mode: c[d.k - 1] = d.amplitude; break;
    case InitialData::Preset::coefficients:
        for (std::size_t n = 0; n < d.values.size(); ++n)
            c[n] = d.values[n];
        break;
    case InitialData::Preset::parabola: {
        const double L = p.L, a = d.amplitude;
        c = project(p, [L, a](double x) { return a * x * (L - x); });
        break;
    }
    }
    return c;
}

namespace detail {

inline std::string output_path(const RunConfig& c, const std::string& suffix)
{
    return (std::filesystem::path(c.output_directory) / (c.output_prefix + suffix)).string();
}

inline nlohmann::ordered_json check_json(double measured, double tol)
{
    return {{"measured", measured}, {"tolerance", tol}, {"pass", measured <= tol}};
}

inline nlohmann::ordered_json regularity_json(const RegularityReport& r)
{
    nlohmann::ordered_json j;
    j["data_class"] = to_string(r.data_class);
    j["u0_norm"] = r.u0_h;
    j["u0_sqrt_a_norm"] = r.u0_sqrt_a;
    j["u1_norm"] = r.u1_h;
    if (r.u0_a)
        j["u0_a_norm"] = *r.u0_a;
    if (r.u1_sqrt_a)
        j["u1_sqrt_a_norm"] = *r.u1_sqrt_a;
    if (r.decay_exponent)
        j["decay_exponent"] = *r.decay_exponent;
    return j;
}

inline RunOutput solve_scalar(const RunConfig& c)
{
    const ScalarProblem p{c.alpha, c.lambda, c.x0, c.y0};
    std::vector<double> t(c.n_t + 1), u(c.n_t + 1), du(c.n_t + 1), da(c.n_t + 1);
    for (std::size_t i = 0; i <= c.n_t; ++i) {
        t[i] = c.t_max * static_cast<double>(i) / static_cast<double>(c.n_t);
        u[i] = scalar_solution(p, t[i]);
        du[i] = scalar_velocity(p, t[i]);
        da[i] = -p.lambda * u[i];
    }
    RunOutput out;
    out.files = {{output_path(c, "_u.csv"), series_csv(t, u, "u")},
                 {output_path(c, "_u_t.csv"), series_csv(t, du, "u_t")},
                 {output_path(c, "_caputo_u.csv"), series_csv(t, da, "caputo_u")}};
    const double initial = std::fabs(u[0] - c.x0) + std::fabs(du[0] - c.y0);
    out.manifest["initial_check"] = check_json(initial, c.initial_tol);
    out.checks_passed = initial <= c.initial_tol;
    return out;
}

inline RunOutput solve_interval(const RunConfig& c, unsigned threads)
{
    const IntervalProblem p = interval_problem(c);
    const SpectralState s(initial_coefficients(c.u0, p), initial_coefficients(c.u1, p), c.alpha,
                          spectral_operator(p), c.declared);
    const GridSpec g = GridSpec::uniform(c.t_max, c.n_t, c.L, c.n_x);
    const FieldSolution f = solve_fields(p, s, g, threads);

    RunOutput out;
    out.files = {{output_path(c, "_u.csv"), field_csv(f.u)},
                 {output_path(c, "_u_t.csv"), field_csv(f.u_t)},
                 {output_path(c, "_caputo_u.csv"), field_csv(f.caputo)}};

    // Largest end-point value relative to the field's peak, over all three fields.
    double boundary = 0.0;
    for (const FieldGrid* grid : {&f.u, &f.u_t, &f.caputo}) {
        double edge = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < grid->t.size(); ++i)
            edge = std::max({edge, std::fabs((*grid)(i, 0)), std::fabs((*grid)(i, grid->x.size() - 1))});
        for (double v : grid->values)
            peak = std::max(peak, std::fabs(v));
        if (peak > 0.0)
            boundary = std::max(boundary, edge / peak);
    }
    out.manifest["boundary_check"] = check_json(boundary, c.boundary_tol);
    out.checks_passed = boundary <= c.boundary_tol;

    // u(0) against the initial data itself; only meaningful when the data is
    // exactly representable by the retained modes.
    if (c.u0.preset != InitialData::Preset::parabola) {
        double initial = 0.0;
        for (std::size_t j = 0; j < g.x.size(); ++j) {
            double want = 0.0;
            for (std::size_t n = 0; n < p.n_modes; ++n)
                if (s.c0[n] != 0.0)
                    want += s.c0[n] * eigenpair(p, n + 1)(g.x[j]);
            initial = std::max(initial, std::fabs(f.u(0, j) - want));
        }
        out.manifest["initial_check"] = check_json(initial, c.initial_tol);
        out.checks_passed = out.checks_passed && initial <= c.initial_tol;
    } else {
        out.manifest["initial_check"] = nullptr;
    }
    out.manifest["regularity"] = regularity_json(classify_regularity(s, DecayModel::power));
    return out;
}

}  // namespace detail

/// Solves without touching the file system. Numerical failures propagate as
/// fracspec exceptions.
inline RunOutput solve(const RunConfig& c, unsigned threads = 1)
{
    RunOutput r = c.is_field() ? detail::solve_interval(c, threads) : detail::solve_scalar(c);
    nlohmann::ordered_json manifest = config_to_json(c);
    nlohmann::ordered_json run;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& [path, content] : r.files)
        files.push_back(std::filesystem::path(path).filename().string());
    run["files"] = files;
    for (auto it = r.manifest.begin(); it != r.manifest.end(); ++it)
        run[it.key()] = it.value();
    run["status"] = r.checks_passed ? "ok" : "check_failed";
    manifest["run"] = run;
    r.manifest = std::move(manifest);
    return r;
}

/// Writes the CSVs and `<prefix>_manifest.json`; returns the manifest path.
inline std::string write_run(const RunConfig& c, const RunOutput& r)
{
    std::filesystem::create_directories(c.output_directory);
    for (const auto& [path, content] : r.files)
        write_text_file(path, content);
    const std::string manifest = detail::output_path(c, "_manifest.json");
    write_text_file(manifest, r.manifest.dump(2) + "\n");
    return manifest;
}

}  // namespace fracspec::io
