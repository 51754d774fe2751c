#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fracspec/io/config.hpp"
#include "fracspec/io/csv.hpp"
#include "fracspec/io/report.hpp"
#include "fracspec/io/run.hpp"

using namespace fracspec;
using fracspec::io::config_error;
using fracspec::io::json;

namespace {

json wave_config()
{
    return json::parse(R"({
      "schema_version": 1,
      "problem": "wave",
      "alpha": 1.5,
      "time": {"t_max": 1.0, "n_t": 8},
      "space": {"n_x": 9, "n_modes": 4},
      "initial_data": {"u0": {"preset": "single_mode", "k": 2, "amplitude": 0.5}}
    })");
}

json scalar_config()
{
    return json::parse(R"({
      "schema_version": 1,
      "problem": "scalar",
      "alpha": 1.3,
      "time": {"t_max": 2.0, "n_t": 10},
      "scalar": {"lambda": 2.0, "x0": 1.0, "y0": 0.5}
    })");
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Config, DefaultsAreFilledIn)
{
    const io::RunConfig c = io::parse_config(wave_config());
    EXPECT_EQ(c.problem, io::RunKind::wave);
    EXPECT_EQ(c.L, std::numbers::pi);
    EXPECT_EQ(c.quadrature_points, 2049u);
    EXPECT_EQ(c.u0.preset, io::InitialData::Preset::single_mode);
    EXPECT_EQ(c.u0.k, 2u);
    EXPECT_EQ(c.u1.preset, io::InitialData::Preset::zero);
    EXPECT_EQ(c.declared, DataClass::weak_data);
    EXPECT_EQ(c.output_prefix, "fracspec");
}

TEST(Config, RejectsMalformedDocuments)
{
    EXPECT_THROW(io::parse_config_text("{not json"), config_error);
    EXPECT_THROW(io::parse_config_text("[]"), config_error);

    auto broken = [](const char* pointer, json value) {
        json j = wave_config();
        j[json::json_pointer(pointer)] = std::move(value);
        return j;
    };
    EXPECT_THROW(io::parse_config(broken("/schema_version", 2)), config_error);
    EXPECT_THROW(io::parse_config(broken("/problem", "heat")), config_error);
    EXPECT_THROW(io::parse_config(broken("/alpha", 2.0)), config_error);
    EXPECT_THROW(io::parse_config(broken("/alpha", "1.5")), config_error);
    EXPECT_THROW(io::parse_config(broken("/time/n_t", 0)), config_error);
    EXPECT_THROW(io::parse_config(broken("/time/n_t", 2.5)), config_error);
    EXPECT_THROW(io::parse_config(broken("/time/t_max", -1.0)), config_error);
    EXPECT_THROW(io::parse_config(broken("/space/n_modes", 0)), config_error);
    EXPECT_THROW(io::parse_config(broken("/space/colour", "red")), config_error);
    EXPECT_THROW(io::parse_config(broken("/initial_data/u0/k", 5)), config_error);
    EXPECT_THROW(io::parse_config(broken("/initial_data/u0/preset", "gauss")), config_error);
    EXPECT_THROW(io::parse_config(broken("/initial_data/declared_class", "smooth")), config_error);
    EXPECT_THROW(io::parse_config(broken("/tolerances", json{{"boundary", 0.0}})), config_error);
    EXPECT_THROW(io::parse_config(broken("/scalar", json{{"lambda", 1.0}})), config_error);

    json missing = wave_config();
    missing.erase("time");
    EXPECT_THROW(io::parse_config(missing), config_error);

    json s = scalar_config();
    s["scalar"]["lambda"] = 0.0;
    EXPECT_THROW(io::parse_config(s), config_error);
    s = scalar_config();
    s["space"] = json::object();
    EXPECT_THROW(io::parse_config(s), config_error);
}

TEST(Config, CoefficientPresetLength)
{
    json j = wave_config();
    j["initial_data"]["u1"] = {{"preset", "coefficients"}, {"values", {1.0, 2.0, 3.0, 4.0, 5.0}}};
    EXPECT_THROW(io::parse_config(j), config_error);
    j["initial_data"]["u1"]["values"] = json::array({1.0, 2.0});
    EXPECT_EQ(io::parse_config(j).u1.values.size(), 2u);
}

TEST(Config, NormalisedFormParsesToSameConfig)
{
    for (const json& j : {wave_config(), scalar_config()}) {
        const io::RunConfig a = io::parse_config(j);
        const json norm = io::config_to_json(a);
        EXPECT_EQ(io::config_to_json(io::parse_config(norm)), norm);
    }
}

TEST(Config, LoadMissingFile)
{
    EXPECT_THROW(io::load_config("/nonexistent/config.json"), config_error);
}

TEST(Csv, FieldLayout)
{
    FieldGrid f;
    f.x = {0.0, 0.5};
    f.t = {0.0, 0.1};
    f.values = {1.0, 2.0, 1.0 / 3.0, -4e-300};
    EXPECT_EQ(io::field_csv(f), "t,0,0.5\n0,1,2\n0.10000000000000001,0.33333333333333331,-4.0000000000000001e-300\n");
}

TEST(Csv, DoublesRoundTrip)
{
    for (double v : {0.1, 1.0 / 3.0, std::numbers::pi, 1e-310, -2.5e300, 123456789.123456789})
        EXPECT_EQ(std::strtod(io::format_double(v).c_str(), nullptr), v);
}

TEST(Csv, SeriesLayout)
{
    const std::vector<double> t = {0.0, 1.0}, u = {1.0, 0.5};
    EXPECT_EQ(io::series_csv(t, u, "u"), "t,u\n0,1\n1,0.5\n");
}

TEST(Run, SingleModeInitialRowMatchesEigenfunction)
{
    const io::RunConfig c = io::parse_config(wave_config());
    const io::RunOutput r = io::solve(c);
    EXPECT_TRUE(r.checks_passed);
    ASSERT_EQ(r.files.size(), 3u);
    std::istringstream lines(r.files[0].second);
    std::string header, row0;
    std::getline(lines, header);
    std::getline(lines, row0);
    std::vector<double> cells;
    std::stringstream ss(row0);
    for (std::string cell; std::getline(ss, cell, ',');)
        cells.push_back(std::stod(cell));
    ASSERT_EQ(cells.size(), 10u);
    const Eigenpair e2 = eigenpair(io::interval_problem(c), 2);
    for (std::size_t j = 0; j < 9; ++j)
        EXPECT_NEAR(cells[j + 1], 0.5 * e2(c.L * static_cast<double>(j) / 8.0), 1e-9);
}

TEST(Run, ManifestRecordsChecksAndFiles)
{
    const io::RunOutput r = io::solve(io::parse_config(wave_config()));
    const json& run = r.manifest.at("run");
    EXPECT_EQ(run.at("status"), "ok");
    EXPECT_EQ(run.at("files").size(), 3u);
    EXPECT_EQ(run.at("files")[0], "fracspec_u.csv");
    EXPECT_TRUE(run.at("boundary_check").at("pass").get<bool>());
    EXPECT_LE(run.at("initial_check").at("measured").get<double>(), 1e-9);
    EXPECT_EQ(run.at("regularity").at("data_class"), "weak_data");
}

TEST(Run, ParabolaHasNoInitialCheck)
{
    json j = wave_config();
    j["initial_data"]["u0"] = {{"preset", "parabola"}};
    const io::RunOutput r = io::solve(io::parse_config(j));
    EXPECT_TRUE(r.manifest["run"]["initial_check"].is_null());
    EXPECT_TRUE(r.checks_passed);
}

TEST(Run, ScalarSeries)
{
    const io::RunOutput r = io::solve(io::parse_config(scalar_config()));
    ASSERT_EQ(r.files.size(), 3u);
    EXPECT_EQ(r.files[0].second.substr(0, 8), "t,u\n0,1\n");
    EXPECT_EQ(r.files[1].second.substr(0, 12), "t,u_t\n0,0.5\n");
    EXPECT_TRUE(r.checks_passed);
}

TEST(Run, ManifestReingestedReproducesRun)
{
    const auto dir = std::filesystem::temp_directory_path() / "fracspec_io_roundtrip";
    std::filesystem::remove_all(dir);
    json j = wave_config();
    j["output"] = {{"directory", dir.string()}, {"prefix", "rt"}};
    const io::RunConfig c = io::parse_config(j);
    const std::string manifest = io::write_run(c, io::solve(c));
    const std::string first = read_file(dir / "rt_u.csv");
    const std::string first_manifest = read_file(manifest);

    const io::RunConfig again = io::load_config(manifest);
    io::write_run(again, io::solve(again));
    EXPECT_EQ(read_file(dir / "rt_u.csv"), first);
    EXPECT_EQ(read_file(manifest), first_manifest);
    std::filesystem::remove_all(dir);
}

TEST(Run, ThreadCountDoesNotChangeOutput)
{
    json j = wave_config();
    j["initial_data"]["u0"] = {{"preset", "parabola"}};
    j["space"]["n_modes"] = 24;
    const io::RunConfig c = io::parse_config(j);
    const io::RunOutput a = io::solve(c, 1), b = io::solve(c, 8);
    ASSERT_EQ(a.files.size(), b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i)
        EXPECT_EQ(a.files[i].second, b.files[i].second);
    EXPECT_EQ(a.manifest.dump(), b.manifest.dump());
}

TEST(Report, Layout)
{
    std::vector<verify::CheckResult> checks = {verify::make_check("a.one", 1, 0.5, 1.0),
                                               verify::make_check("a.two", 0, 2.0, 1.0)};
    const json r = io::verification_report(verify::Suite::mlf, checks);
    std::vector<std::string> keys;
    for (auto it = r.begin(); it != r.end(); ++it)
        keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "suite", "environment", "checks", "summary"}));
    EXPECT_EQ(r["suite"], "mlf");
    EXPECT_EQ(r["summary"]["passed"], 1);
    EXPECT_EQ(r["summary"]["failed"], 1);
    EXPECT_EQ(r["checks"][1]["pass"], false);
}
