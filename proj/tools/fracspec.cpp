// fracspec command line: solve, verify, mlf.
//
// Exit codes: 0 ok, 1 failed verification, 2 bad input, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracspec/errors.hpp"
#include "fracspec/io/config.hpp"
#include "fracspec/io/csv.hpp"
#include "fracspec/io/report.hpp"
#include "fracspec/io/run.hpp"
#include "fracspec/special_functions.hpp"
#include "fracspec/verification.hpp"

namespace {

enum Exit { ok = 0, verify_failed = 1, bad_input = 2, numeric_failure = 3 };

int fail(int code, const std::string& kind, const std::string& message)
{
    const nlohmann::ordered_json j = {{"error", kind}, {"message", message}, {"exit_code", code}};
    std::cerr << j.dump() << '\n';
    return code;
}

struct bad_environment : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned threads_from_env()
{
    const char* raw = std::getenv("FRACSPEC_THREADS");
    if (raw == nullptr || *raw == '\0')
        return 0;
    const std::string s(raw);
    if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6)
        throw bad_environment("FRACSPEC_THREADS must be a non-negative integer, got '" + s + "'");
    return static_cast<unsigned>(std::stoul(s));
}

int run_solve(const std::string& path)
{
    const fracspec::io::RunConfig c = fracspec::io::load_config(path);
    const fracspec::io::RunOutput r = fracspec::io::solve(c, threads_from_env());
    const std::string manifest = fracspec::io::write_run(c, r);
    if (!r.checks_passed)
        return fail(numeric_failure, "check_failed", "post-solve checks failed; see " + manifest);
    std::cout << manifest << '\n';
    return ok;
}

int run_verify(const std::string& suite_name, const std::string& report_path)
{
    using fracspec::verify::Suite;
    Suite suite = Suite::all;
    bool found = false;
    for (Suite s : {Suite::mlf, Suite::calculus, Suite::scalar, Suite::spectral, Suite::all}) {
        if (suite_name == fracspec::verify::to_string(s)) {
            suite = s;
            found = true;
        }
    }
    if (!found)
        return fail(bad_input, "usage", "unknown suite '" + suite_name + "'");
    fracspec::verify::Options opt;
    opt.threads = threads_from_env();
    const auto checks = fracspec::verify::run_suite(suite, opt);
    bool all_pass = true;
    for (const auto& c : checks) {
        std::printf("%-4s %-44s %.6e %s %.3e\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.measured,
                    fracspec::verify::to_string(c.comparison), c.tolerance);
        all_pass = all_pass && c.pass;
    }
    if (!report_path.empty())
        fracspec::io::write_text_file(report_path, fracspec::io::verification_report(suite, checks).dump(2) + "\n");
    return all_pass ? ok : verify_failed;
}

int run_mlf(double alpha, double beta, double from, double to, double steps_in, const std::string& csv_path)
{
    if (!(steps_in >= 1.0 && steps_in <= 1e8) || steps_in != std::floor(steps_in))
        return fail(bad_input, "range", "--steps must be a whole number of at least 1");
    const auto steps = static_cast<long long>(steps_in);
    if (!std::isfinite(from) || !std::isfinite(to) || !(from < to))
        return fail(bad_input, "range", "--from must be smaller than --to");
    if (!(alpha > 0.0 && alpha <= 2.0) || !(beta > 0.0))
        return fail(bad_input, "range", "need 0 < alpha <= 2 and beta > 0");
    std::ostringstream os;
    os << "x,value,est_abs_error,branch\n";
    for (long long i = 0; i <= steps; ++i) {
        const double x = i == steps ? to : from + (to - from) * static_cast<double>(i) / static_cast<double>(steps);
        const fracspec::EvalResult r = fracspec::mittag_leffler({alpha, beta, x}, fracspec::default_ml_tol);
        os << fracspec::io::format_double(x) << ',' << fracspec::io::format_double(r.value) << ','
           << fracspec::io::format_double(r.est_abs_error) << ',' << fracspec::to_string(r.branch) << '\n';
    }
    if (csv_path.empty())
        std::cout << os.str();
    else
        fracspec::io::write_text_file(csv_path, os.str());
    return ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral solver for time-fractional wave and plate equations"};
    app.require_subcommand(1);

    std::string config_path;
    auto* solve = app.add_subcommand("solve", "solve a configured problem and write CSV fields");
    solve->add_option("--config", config_path, "JSON run configuration")->required();

    std::string suite = "all", report;
    auto* verify = app.add_subcommand("verify", "run self-checks");
    verify->add_option("--suite", suite, "mlf, calculus, scalar, spectral or all");
    verify->add_option("--report", report, "write a JSON report here");

    double alpha = 0, beta = 0, from = 0, to = 0, steps = 0;
    std::string csv;
    auto* mlf = app.add_subcommand("mlf", "tabulate E_{alpha,beta}(x)");
    mlf->add_option("--alpha", alpha)->required();
    mlf->add_option("--beta", beta)->required();
    mlf->add_option("--from", from)->required();
    mlf->add_option("--to", to)->required();
    mlf->add_option("--steps", steps, "number of intervals; steps + 1 rows")->required();
    mlf->add_option("--csv", csv, "write the table here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(bad_input, "usage", e.what());
    }

    try {
        if (*solve)
            return run_solve(config_path);
        if (*verify)
            return run_verify(suite, report);
        return run_mlf(alpha, beta, from, to, steps, csv);
    } catch (const fracspec::io::config_error& e) {
        return fail(bad_input, "config", e.what());
    } catch (const bad_environment& e) {
        return fail(bad_input, "environment", e.what());
    } catch (const fracspec::convergence_error& e) {
        return fail(numeric_failure, "convergence", e.what());
    } catch (const fracspec::overflow_error& e) {
        return fail(numeric_failure, "overflow", e.what());
    } catch (const fracspec::instability_error& e) {
        return fail(numeric_failure, "instability", e.what());
    } catch (const fracspec::domain_error& e) {
        return fail(numeric_failure, "domain", e.what());
    } catch (const std::exception& e) {
        return fail(numeric_failure, "internal", e.what());
    }
}
