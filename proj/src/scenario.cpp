#include "fdfp/scenario.hpp"

#include "fdfp/fuzz.hpp"
#include "fdfp/mehler.hpp"
#include "fdfp/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fdfp {

namespace {

namespace fs = std::filesystem;

class Csv {
public:
    Csv(const fs::path& path, const std::string& header) : os_(path, std::ios::binary), path_(path)
    {
        if (!os_) throw std::runtime_error("cannot write " + path.string());
        os_ << header << '\n';
    }

    template <class... Cells>
    void row(const Cells&... cells)
    {
        bool first = true;
        ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
        os_ << '\n';
    }

private:
    static std::string cell(double x) { return format_double(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(long x) { return std::to_string(x); }
    static std::string cell(bool x) { return x ? "true" : "false"; }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }

    std::ofstream os_;
    fs::path path_;
};

// One row per assertion: name, measured value, limit, verdict.
class Checks {
public:
    void add(const std::string& name, double value, double limit, bool ok)
    {
        rows_.push_back({name, value, limit, ok});
        passed_ = passed_ && ok;
    }
    void at_most(const std::string& name, double value, double limit) { add(name, value, limit, value <= limit); }
    void at_least(const std::string& name, double value, double limit) { add(name, value, limit, value >= limit); }

    bool passed() const { return passed_; }

    void write(const fs::path& path) const
    {
        Csv csv(path, "check,value,limit,passed");
        for (const auto& r : rows_) csv.row(r.name, r.value, r.limit, r.ok);
    }

    std::string failures() const
    {
        std::string s;
        for (const auto& r : rows_)
            if (!r.ok) s += (s.empty() ? "" : "; ") + r.name + "=" + format_double(r.value);
        return s;
    }

private:
    struct Row {
        std::string name;
        double value, limit;
        bool ok;
    };
    std::vector<Row> rows_;
    bool passed_ = true;
};

double initial_mass_star(const ScenarioConfig& cfg, const ExperimentSpec& ex, double mass)
{
    if (ex.mass_star) return *ex.mass_star;
    if (cfg.initial.kind == "scaled_fermi_dirac") return cfg.initial.mass_star;
    return mass;
}

void check_trajectory(Checks& c, const Trajectory& tr, const State& f0, bool fv)
{
    const int N = f0.grid->dim;
    const double M = integrate(f0);
    const double m2_0 = moment(f0, 2);
    const auto poly = moment_bound_polynomial(2, {M, m2_0, moment(f0, 4)}, M, N);
    const double ebound = energy_bound(f0);
    const double rel0 = tr.diagnostics.front().rel_entropy;
    double mass_drift = 0.0, m2_excess = -1e300, m4_ratio = 0.0, energy_excess = -1e300;
    double rel_min = 1e300, rel_rise = -1e300, ck_worst = -1e300;
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        const auto& d = tr.diagnostics[k];
        const double t = tr.times[k];
        mass_drift = std::max(mass_drift, std::abs(d.mass - M) / M);
        m2_excess = std::max(m2_excess, moment(tr.states[k], 2) - (m2_0 + 2.0 * N * M * t));
        m4_ratio = std::max(m4_ratio, moment(tr.states[k], 4) / poly(t));
        energy_excess = std::max(energy_excess, d.energy - ebound);
        rel_min = std::min(rel_min, d.rel_entropy);
        rel_rise = std::max(rel_rise, d.rel_entropy - rel0);
        const double lhs = d.l1_to_eq * d.l1_to_eq;
        const double rhs = 2.0 * M * d.rel_entropy;
        ck_worst = std::max(ck_worst, lhs - (rhs * (1.0 + 1e-6) + 1e-10));
    }
    if (fv) {
        c.at_most("mass_drift_per_step", tr.monitor.max_mass_drift, 1e-12);
        c.at_least("min_value", tr.monitor.min_value, 0.0);
        c.at_most("max_value", tr.monitor.max_value, 1.0);
        c.at_most("entropy_increase_per_step", tr.monitor.max_entropy_increase, 1e-10);
        c.at_most("m2_excess_over_linear_bound", m2_excess, 1e-8);
        c.at_most("m4_over_polynomial_bound", m4_ratio, 1.05);
    } else {
        c.at_most("mass_drift", mass_drift, 1e-6);
        c.at_least("min_value", tr.monitor.min_value, -1e-6);
        c.at_most("max_value", tr.monitor.max_value, 1.0 + 1e-6);
    }
    c.at_least("min_rel_entropy", rel_min, -1e-8);
    c.at_most("rel_entropy_rise", rel_rise, fv ? 1e-12 : 1e-6);
    c.at_most("energy_excess_over_bound", energy_excess, 0.0);
    c.at_most("csiszar_kullback_excess", ck_worst, 0.0);
}

}  // namespace

bool ScenarioResult::all_passed() const
{
    return std::all_of(experiments.begin(), experiments.end(), [](const auto& e) { return e.passed; });
}

State build_initial(const InitialSpec& spec, std::shared_ptr<const Grid> grid)
{
    const Grid& g = *grid;
    if (spec.kind == "fermi_dirac") return equilibrium_state(spec.mass, grid);
    if (spec.kind == "scaled_fermi_dirac") {
        State s = equilibrium_state(spec.mass_star, grid);
        for (double& x : s.values) x *= spec.factor;
        return s;
    }
    std::vector<double> f(g.cells, 0.0);
    if (spec.kind == "indicator") {
        for (int i = 0; i < g.cells; ++i)
            if (g.node[i] >= spec.lo && g.node[i] <= spec.hi) f[i] = spec.height;
        return make_state(grid, std::move(f));
    }
    if (spec.kind == "gaussian_profile") {
        const double amp = spec.mass / std::pow(2.0 * std::numbers::pi * spec.sigma * spec.sigma, 0.5 * g.dim);
        for (int i = 0; i < g.cells; ++i) {
            const double r = g.node[i] / spec.sigma;
            f[i] = std::min(1.0, amp * std::exp(-0.5 * r * r));
        }
        return make_state(grid, std::move(f));
    }
    if (spec.kind == "from_snapshot") {
        const State s = snapshot_state(read_snapshot(spec.path));
        if (!s.grid->same_as(g)) throw std::invalid_argument("snapshot " + spec.path + " was taken on a different grid");
        return make_state(grid, s.values);
    }
    throw std::invalid_argument("unknown initial kind '" + spec.kind + "'");
}

std::vector<double> kernel_test_function(const std::string& name, const Grid& g)
{
    std::vector<double> f(g.cells);
    for (int i = 0; i < g.cells; ++i) {
        const double v = g.node[i];
        if (name == "gaussian")
            f[i] = std::exp(-v * v / (2.0 * 0.4 * 0.4));
        else if (name == "indicator")
            f[i] = std::abs(v) <= 1.2 ? 1.0 : 0.0;
        else if (name == "fermi_dirac")
            f[i] = fermi_dirac_eval({1.0, 1}, std::abs(v));
        else
            throw std::invalid_argument("unknown test function '" + name + "'");
    }
    return f;
}

ScenarioResult run_scenario(ScenarioConfig cfg, const RunOptions& opts)
{
    if (opts.output_dir) cfg.output_dir = *opts.output_dir;
    if (opts.seed) cfg.seed = *opts.seed;
    auto log = [&](const std::string& msg) {
        if (opts.log) *opts.log << msg << '\n' << std::flush;
    };
    const fs::path out(cfg.output_dir);
    fs::create_directories(out);

    auto grid = std::make_shared<const Grid>(make_grid(cfg.geometry, cfg.dim, cfg.extent, cfg.cells));
    const State f0 = build_initial(cfg.initial, grid);
    const double mass = integrate(f0);
    if (!(mass > 0.0)) throw std::invalid_argument("initial condition has zero mass on this grid");
    const bool fv = cfg.solver == "fv";

    // Main trajectory.
    Trajectory main;
    std::optional<PicardResult> picard;
    if (fv) {
        FvParams p = cfg.fv;
        p.output_times = cfg.snapshot_times;
        log("fv: running to t = " + format_double(p.t_final));
        main = solve(f0, p);
    } else {
        log("duhamel: Picard iteration to t = " + format_double(cfg.duhamel.t_final));
        picard = picard_solve(f0, cfg.duhamel);
        main = picard->trajectory;
        log("duhamel: converged in " + std::to_string(picard->iterations) + " iterations");
    }
    {
        Csv csv(out / "diagnostics.csv", "t,mass,energy,entropy,free_energy,dissipation,rel_entropy,l1_to_eq");
        for (const auto& d : main.diagnostics)
            csv.row(d.time, d.mass, d.energy, d.entropy, d.free_energy, d.dissipation, d.rel_entropy, d.l1_to_eq);
    }
    for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i) {
        const double want = cfg.snapshot_times[i];
        std::size_t best = 0;
        for (std::size_t k = 1; k < main.times.size(); ++k)
            if (std::abs(main.times[k] - want) < std::abs(main.times[best] - want)) best = k;
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%03zu.txt", i);
        State s = main.states[best];
        for (double& x : s.values) x = std::clamp(x, 0.0, 1.0);
        write_snapshot(s, main.times[best], (out / name).string());
    }

    ScenarioResult result;
    for (const ExperimentSpec& ex : cfg.experiments) {
        ExperimentOutcome outcome{ex.name, false, ""};
        const fs::path report = out / ("report_" + ex.name + ".csv");
        if (ex.kind == "run") {
            Checks c;
            check_trajectory(c, main, f0, fv);
            if (picard) {
                c.at_most("picard_iterations", picard->iterations, cfg.duhamel.picard_max_iter);
                c.at_most("picard_final_increment", picard->increments.back(), cfg.duhamel.picard_tol);
            }
            c.write(report);
            outcome.passed = c.passed();
            outcome.summary = c.passed() ? "all trajectory checks hold" : c.failures();
        } else if (ex.kind == "comparison") {
            State a = f0, b = build_initial(ex.other, grid);
            bool ab = true, ba = true;
            for (int i = 0; i < grid->cells; ++i) {
                ab = ab && a.values[i] <= b.values[i];
                ba = ba && b.values[i] <= a.values[i];
            }
            if (!ab && !ba) throw ConfigError({"comparison: initial data are not pointwise ordered"});
            if (!ab) std::swap(a, b);
            FvParams p = cfg.fv;
            if (!fv) p.t_final = cfg.duhamel.t_final;
            const auto rep = comparison_experiment(a, b, p);
            Checks c;
            c.at_most("max_positive_part", rep.max_positive_part, 1e-10);
            c.at_most("max_l1_slack", rep.max_l1_slack, 1e-9);
            c.write(report);
            outcome.passed = c.passed();
            outcome.summary = "(f-g)+ <= " + format_double(rep.max_positive_part) + ", L1 slack " +
                              format_double(rep.max_l1_slack);
        } else if (ex.kind == "decay_fit") {
            const DecayBound bound = make_decay_bound(mass, initial_mass_star(cfg, ex, mass), grid->dim);
            const auto rep = decay_rate_fit(main, bound, ex.window_lo, ex.window_hi);
            Csv csv(report, "metric,value");
            csv.row("rate_constant", bound.rate_constant);
            csv.row("minus_two_c", rep.minus_two_c);
            csv.row("at_equilibrium", rep.at_equilibrium);
            csv.row("slope", rep.fit.slope);
            csv.row("intercept", rep.fit.intercept);
            csv.row("r2", rep.fit.r2);
            csv.row("points", rep.points);
            csv.row("worst_bound_ratio", rep.worst_bound_ratio);
            csv.row("bound_satisfied", rep.bound_satisfied);
            outcome.passed = rep.at_equilibrium || (rep.bound_satisfied && rep.fit.slope <= rep.minus_two_c);
            csv.row("passed", outcome.passed);
            outcome.summary = rep.at_equilibrium ? "at equilibrium"
                                                 : "slope " + format_double(rep.fit.slope) + " vs -2C " +
                                                       format_double(rep.minus_two_c);
        } else if (ex.kind == "moment_propagation") {
            const auto rep = radial_moment_propagation(f0, cfg.fv, ex.order, ex.t_finals);
            Csv csv(report, "t_final,sup_moment,sup_tail");
            for (std::size_t i = 0; i < rep.t_finals.size(); ++i)
                csv.row(rep.t_finals[i], rep.sup_moment[i], rep.sup_tail[i]);
            csv.row("spread", rep.spread, "");
            csv.row("monotone_preserved", rep.monotone_preserved, "");
            outcome.passed = rep.uniform && rep.monotone_preserved;
            csv.row("passed", outcome.passed, "");
            outcome.summary = "sup moment spread " + format_double(rep.spread);
        } else if (ex.kind == "kernel_bounds") {
            Csv csv(report, "function,p,q,m,alpha,min_ratio,max_ratio,spread,passed");
            std::vector<double> ts(ex.samples);
            for (int i = 0; i < ex.samples; ++i)
                ts[i] = ex.t_min * std::pow(ex.t_max / ex.t_min, static_cast<double>(i) / (ex.samples - 1));
            int failed = 0, total = 0;
            for (const auto& fname : ex.functions) {
                const auto g = kernel_test_function(fname, *grid);
                for (const auto& spec : ex.cases) {
                    double lo = 1e300, hi = 0.0;
                    for (double t : ts) {
                        const double r = appendix_bound_ratio(spec, t, *grid, g);
                        lo = std::min(lo, r);
                        hi = std::max(hi, r);
                    }
                    const double spread = hi / lo;
                    const bool ok = std::isfinite(spread) && spread <= ex.max_spread;
                    ++total;
                    failed += !ok;
                    csv.row(fname, spec.p, spec.q, spec.m, spec.alpha_order, lo, hi, spread, ok);
                }
            }
            outcome.passed = failed == 0;
            outcome.summary = std::to_string(total - failed) + "/" + std::to_string(total) + " cases within spread " +
                              format_double(ex.max_spread);
        } else if (ex.kind == "entropy_control") {
            Csv csv(report, "eps,trials,max_pointwise_violation,max_integrated_excess,min_minus_entropy,passed");
            StateFuzzer fz(cfg.seed);
            bool all = true;
            for (double eps : ex.eps) {
                double viol = -1e300, excess = -1e300, minus_s = 1e300;
                bool ok = true;
                for (int k = 0; k < ex.trials; ++k) {
                    const auto rep = check_entropy_control(fz.next(grid), eps);
                    viol = std::max(viol, rep.max_pointwise_violation);
                    excess = std::max(excess, rep.minus_entropy - rep.bound);
                    minus_s = std::min(minus_s, rep.minus_entropy);
                    ok = ok && rep.holds;
                }
                csv.row(eps, ex.trials, viol, excess, minus_s, ok);
                all = all && ok;
            }
            outcome.passed = all;
            outcome.summary = all ? "no violations" : "violations found";
        } else if (ex.kind == "cross_check") {
            DuhamelParams dp = cfg.duhamel;
            if (fv) dp.t_final = cfg.fv.t_final;
            const PicardResult pr = picard_solve(f0, dp);
            FvParams p = cfg.fv;
            p.t_final = dp.t_final;
            p.output_times = duhamel_times(dp);
            const Trajectory ft = solve(f0, p);
            Csv csv(out / "cross_check.csv", "t,l1_difference");
            double worst = 0.0;
            for (std::size_t k = 0; k < pr.trajectory.times.size(); ++k) {
                const double t = pr.trajectory.times[k];
                const auto it = std::find(ft.times.begin(), ft.times.end(), t);
                if (it == ft.times.end()) throw SolverError("fv run missed output time " + format_double(t));
                const State& fs_ = ft.states[it - ft.times.begin()];
                double d = 0.0;
                for (int i = 0; i < grid->cells; ++i)
                    d += grid->qweight[i] * std::abs(fs_.values[i] - pr.trajectory.states[k].values[i]);
                csv.row(t, d);
                worst = std::max(worst, d);
            }
            Checks c;
            c.at_most("max_l1_difference", worst, ex.tolerance);
            c.write(report);
            outcome.passed = c.passed();
            outcome.summary = "max L1 difference " + format_double(worst);
        }
        log("experiment " + ex.name + ": " + (outcome.passed ? "PASS" : "FAIL") + " (" + outcome.summary + ")");
        result.experiments.push_back(std::move(outcome));
    }
    return result;
}

}  // namespace fdfp
