#include "doctest.h"

#include "fdfp/config.hpp"
#include "fdfp/fit.hpp"
#include "fdfp/fuzz.hpp"
#include "fdfp/scenario.hpp"
#include "fdfp/snapshot.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace fdfp;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

const std::string kMinimal = R"(
[grid]
geometry = cartesian1d
extent = 8
cells = 128

[initial]
kind = indicator
lo = -1
hi = 1
height = 0.5

[solver]
kind = fv
t_final = 0.5

[output]
dir = somewhere
)";

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::path(FDFP_TEST_TMP) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::string> errors_of(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.errors;
    }
    return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& needle)
{
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

// Rows of a CSV file with a header, keyed by the first column.
std::map<std::string, std::vector<std::string>> csv_rows(const fs::path& p)
{
    std::map<std::string, std::vector<std::string>> out;
    std::istringstream is(slurp(p));
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cols.push_back(c);
        out[cols.at(0)] = cols;
    }
    return out;
}

std::string replace(std::string s, const std::string& from, const std::string& to)
{
    s.replace(s.find(from), from.size(), to);
    return s;
}

}  // namespace

TEST_CASE("minimal config parses with defaults")
{
    const ScenarioConfig c = parse_config(kMinimal);
    CHECK(c.geometry == Geometry::cartesian1d);
    CHECK(c.cells == 128);
    CHECK(c.extent == 8.0);
    CHECK(c.initial.kind == "indicator");
    CHECK(c.initial.height == 0.5);
    CHECK(c.solver == "fv");
    CHECK(c.fv.t_final == 0.5);
    CHECK(c.output_dir == "somewhere");
    CHECK(c.seed == 1);
    REQUIRE(c.experiments.size() == 1);
    CHECK(c.experiments[0].kind == "run");
}

TEST_CASE("config errors name the key and suggest the nearest one")
{
    const auto e = errors_of(replace(kMinimal, "cells = 128", "cells = 128\ncolour = red"));
    REQUIRE(e.size() == 1);
    CHECK(e[0].find("'colour'") != std::string::npos);
    CHECK(e[0].find("did you mean 'cells'") != std::string::npos);
    CHECK(e[0].find("line 6") != std::string::npos);

    const auto typo = errors_of(replace(kMinimal, "t_final", "t_finl"));
    CHECK(any_contains(typo, "did you mean 't_final'"));

    const auto section = errors_of(kMinimal + "\n[experiment.decay_fitt]\n");
    CHECK(any_contains(section, "did you mean 'decay_fit'"));
}

TEST_CASE("indicator heights above one leave the invariant region")
{
    const auto e = errors_of(replace(kMinimal, "height = 0.5", "height = 1.5"));
    REQUIRE(e.size() == 1);
    CHECK(e[0].find("[0,1]") != std::string::npos);
    CHECK(e[0].find("1.5") != std::string::npos);
}

TEST_CASE("all config problems are reported together")
{
    const std::string bad = R"(
[grid]
geometry = cartesian2d
cells = many

[initial]
kind = gaussian
[solver]
kind = fv
t_final = 0.5
cfl_safety = 3

[experiment.kernel_bounds]
cases = 1:2:0:0
)";
    const auto e = errors_of(bad);
    CHECK(e.size() >= 5);
    CHECK(any_contains(e, "unknown geometry"));
    CHECK(any_contains(e, "expects an integer"));
    CHECK(any_contains(e, "missing required key 'extent'"));
    CHECK(any_contains(e, "did you mean 'gaussian_profile'"));
    CHECK(any_contains(e, "cfl_safety"));
    CHECK(any_contains(e, "1:2:0:0"));
}

TEST_CASE("experiment sections")
{
    const ScenarioConfig c = parse_config(kMinimal + R"(
[experiment.kernel_bounds.short]
cases = inf:1:1:1, 2:2:0:0
samples = 5
[experiment.kernel_bounds]
[experiment.decay_fit]
window = 0.1 0.4
)");
    REQUIRE(c.experiments.size() == 3);
    CHECK(c.experiments[0].name == "short");
    REQUIRE(c.experiments[0].cases.size() == 2);
    CHECK(std::isinf(c.experiments[0].cases[0].p));
    CHECK(c.experiments[0].cases[0].alpha_order == 1);
    CHECK(c.experiments[1].cases.size() == full_bound_matrix().size());
    CHECK(full_bound_matrix().size() == 24);
    CHECK(c.experiments[2].window_lo == 0.1);
    CHECK(c.experiments[2].window_hi == 0.4);

    CHECK(any_contains(errors_of(kMinimal + "[experiment.run]\n[experiment.run]\n"), "used twice"));
}

TEST_CASE("edit distance")
{
    CHECK(edit_distance("", "abc") == 3);
    CHECK(edit_distance("kitten", "sitting") == 3);
    CHECK(edit_distance("cells", "cells") == 0);
}

TEST_CASE("snapshot round trip is bit exact")
{
    StateFuzzer fz(5);
    const auto g = std::make_shared<const Grid>(make_grid(Geometry::cartesian1d, 1, 8.0, 97));
    const auto rg = std::make_shared<const Grid>(make_grid(Geometry::radial, 3, 5.0, 40));
    const fs::path dir = scratch("snapshots");
    for (const auto& grid : {g, rg}) {
        State s = fz.next(grid);
        for (double& x : s.values) x = std::nextafter(x * 0.999, 1.0) * (1.0 / 3.0);
        const std::string path = (dir / "s.txt").string();
        write_snapshot(s, 0.1 + 0.2, path);
        const SnapshotData d = read_snapshot(path);
        CHECK(d.time == 0.1 + 0.2);
        const State back = snapshot_state(d);
        CHECK(back.grid->same_as(*grid));
        CHECK(back.values == s.values);
    }
}

TEST_CASE("hand-written snapshot")
{
    const std::string text = "fdfp-snapshot v1\ncartesian1d,1,3,1.5,0.25\n-1,0.25\n0,0.5\n1,1\n";
    const SnapshotData d = parse_snapshot(text);
    CHECK(d.cells == 3);
    CHECK(d.extent == 1.5);
    CHECK(d.time == 0.25);
    CHECK(d.nodes == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(d.values == std::vector<double>{0.25, 0.5, 1.0});
    // Three cells are below the solver's minimum mesh size.
    CHECK_THROWS(snapshot_state(d));
}

TEST_CASE("snapshot validation")
{
    auto message = [](const std::string& text) {
        try {
            parse_snapshot(text);
        } catch (const std::exception& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    const std::string head = "fdfp-snapshot v1\ncartesian1d,1,3,1.5,0\n";
    CHECK(message(head + "-1,0.2\n0,1.2\n1,0\n").find("row 4") != std::string::npos);
    CHECK(message(head + "-1,0.2\n0,1.2\n1,0\n").find("[0,1]") != std::string::npos);
    CHECK(message(head + "-1,0.2\n0,abc\n1,0\n").find("row 4") != std::string::npos);
    CHECK(message(head + "-1,0.2\n").find("3 cells") != std::string::npos);
    CHECK(message("fdfp-snapshot v9\n").find("version") != std::string::npos);
    CHECK(message("").find("empty") != std::string::npos);
    CHECK_THROWS(read_snapshot("/nonexistent/snapshot.txt"));
}

TEST_CASE("exponential fit")
{
    std::vector<double> t, v, c;
    for (int i = 0; i < 30; ++i) {
        t.push_back(0.1 * i);
        v.push_back(2.0 * std::exp(-3.0 * t.back()));
        c.push_back(0.7);
    }
    const auto f = fit_exponential(t, v);
    CHECK(std::abs(f.slope + 3.0) <= 1e-10);
    CHECK(f.intercept == Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(f.r2 == Approx(1.0));
    CHECK(fit_exponential(t, c).slope == Approx(0.0).scale(1.0));

    // Multiplicative noise of 5%, generated from a fixed seed.
    StateFuzzer fz(42);
    std::vector<double> noisy;
    for (double x : v) noisy.push_back(x * std::exp(0.05 * (2.0 * fz.uniform() - 1.0)));
    CHECK(fit_exponential(t, noisy).slope == Approx(-3.0).epsilon(0.02));

    CHECK_THROWS_AS(fit_exponential(std::vector<double>{0, 1, 2}, std::vector<double>{1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponential(std::vector<double>{0, 1, 2, 3}, std::vector<double>{1, 0, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fit_exponential(std::vector<double>{1, 1, 1, 1}, std::vector<double>{1, 2, 3, 4}),
                    std::invalid_argument);
}

TEST_CASE("fv run of an equilibrium has flat diagnostics")
{
    const fs::path out = scratch("equilibrium");
    ScenarioConfig cfg = load_config(std::string(FDFP_CONFIG_DIR) + "/equilibrium.ini");
    const auto r = run_scenario(cfg, {.output_dir = out.string()});
    CHECK(r.all_passed());
    std::istringstream is(slurp(out / "diagnostics.csv"));
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,mass,energy,entropy,free_energy,dissipation,rel_entropy,l1_to_eq");
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) row.push_back(std::stod(c));
        rows.push_back(row);
    }
    REQUIRE(rows.size() >= 3);
    for (const auto& row : rows)
        for (int col = 1; col <= 4; ++col) CHECK(row[col] == Approx(rows[0][col]).epsilon(1e-12));
    CHECK(fs::exists(out / "snapshot_000.txt"));
    CHECK(fs::exists(out / "snapshot_002.txt"));
    CHECK(fs::exists(out / "report_run.csv"));
    CHECK(snapshot_state(read_snapshot((out / "snapshot_002.txt").string())).values.size() == 256);
}

TEST_CASE("decay fit experiment")
{
    const fs::path out = scratch("decay");
    const auto r = run_scenario(load_config(std::string(FDFP_CONFIG_DIR) + "/decay.ini"), {.output_dir = out.string()});
    CHECK(r.all_passed());
    const auto rows = csv_rows(out / "report_decay_fit.csv");
    CHECK(rows.at("bound_satisfied")[1] == "true");
    CHECK(std::stod(rows.at("slope")[1]) <= std::stod(rows.at("minus_two_c")[1]));
}

TEST_CASE("duhamel run with cross check")
{
    const fs::path out = scratch("cross");
    const auto r =
        run_scenario(load_config(std::string(FDFP_CONFIG_DIR) + "/cross_check.ini"), {.output_dir = out.string()});
    CHECK(r.all_passed());
    const auto rows = csv_rows(out / "cross_check.csv");
    CHECK(rows.size() == 17);
    double worst = 0.0;
    for (const auto& [t, cols] : rows) worst = std::max(worst, std::stod(cols[1]));
    CHECK(worst <= 1e-2);
}

TEST_CASE("identical config and seed give identical files")
{
    const std::string text = kMinimal + "[experiment.entropy_control]\ntrials = 50\n[experiment.run]\n";
    const fs::path a = scratch("det_a"), b = scratch("det_b"), c = scratch("det_c");
    run_scenario(parse_config(text), {.output_dir = a.string(), .seed = 3});
    run_scenario(parse_config(text), {.output_dir = b.string(), .seed = 3});
    run_scenario(parse_config(text), {.output_dir = c.string(), .seed = 4});
    for (const char* f : {"diagnostics.csv", "report_run.csv", "report_entropy_control.csv"})
        CHECK(slurp(a / f) == slurp(b / f));
    CHECK(slurp(a / "diagnostics.csv") == slurp(c / "diagnostics.csv"));
}

TEST_CASE("failed assertions reach the report and the result")
{
    const fs::path out = scratch("failing");
    const std::string text = kMinimal + "[experiment.kernel_bounds]\ncases = inf:1:1:1\nfunctions = fermi_dirac\n";
    const auto r = run_scenario(parse_config(text), {.output_dir = out.string()});
    CHECK_FALSE(r.all_passed());
    REQUIRE(r.experiments.size() == 1);
    CHECK_FALSE(r.experiments[0].passed);
    CHECK(slurp(out / "report_kernel_bounds.csv").find("false") != std::string::npos);
}

#ifdef FDFP_CLI
namespace {

int cli(const std::string& args)
{
    const std::string cmd = std::string(FDFP_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const std::string& name, const std::string& text)
{
    const fs::path p = fs::path(FDFP_TEST_TMP) / name;
    fs::create_directories(p.parent_path());
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("command line exit codes")
{
    const fs::path out = scratch("cli");
    const auto ok = write_config("cli_ok.ini", kMinimal);
    CHECK(cli("check " + ok.string()) == 0);
    CHECK(cli("run " + ok.string() + " --quiet --output-dir " + (out / "ok").string()) == 0);
    CHECK(fs::exists(out / "ok" / "diagnostics.csv"));

    const auto bad = write_config("cli_bad.ini", replace(kMinimal, "cells = 128", "colour = 1"));
    CHECK(cli("check " + bad.string()) == 2);
    CHECK(cli("run " + bad.string()) == 2);
    CHECK(cli("check /nonexistent.ini") == 2);
    CHECK(cli("") == 2);
    CHECK(cli("frobnicate") == 2);
    CHECK(cli("run " + ok.string() + " --seed banana") == 2);

    const auto failing = write_config(
        "cli_fail.ini", kMinimal + "[experiment.kernel_bounds]\ncases = inf:1:1:1\nfunctions = fermi_dirac\n");
    CHECK(cli("run " + failing.string() + " --quiet --output-dir " + (out / "fail").string()) == 1);

    const auto unstable = write_config("cli_unstable.ini", replace(kMinimal, "t_final = 0.5", "t_final = 0.5\ndt = 0.5"));
    CHECK(cli("check " + unstable.string()) == 0);
    CHECK(cli("run " + unstable.string() + " --quiet --output-dir " + (out / "unstable").string()) == 3);

    const auto starved = write_config("cli_starved.ini", replace(replace(kMinimal, "kind = fv", "kind = duhamel"),
                                                                 "t_final = 0.5", "t_final = 0.5\npicard_max_iter = 1"));
    CHECK(cli("run " + starved.string() + " --quiet --output-dir " + (out / "starved").string()) == 3);

    write_snapshot(equilibrium_state(1.0, make_grid(Geometry::cartesian1d, 1, 8.0, 64)), 0.0,
                   (out / "snap.txt").string());
    CHECK(cli("snapshot-info " + (out / "snap.txt").string()) == 0);
    CHECK(cli("snapshot-info " + (out / "missing.txt").string()) == 2);
}
#endif
