#include "fdfp/config.hpp"

#include "fdfp/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fdfp {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

struct Section {
    std::string name;
    int line = 0;
    std::map<std::string, Entry> entries;
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string nearest(const std::string& word, const std::vector<std::string>& options)
{
    std::string best;
    std::size_t best_d = std::string::npos;
    for (const auto& o : options) {
        const std::size_t d = edit_distance(word, o);
        if (d < best_d) {
            best_d = d;
            best = o;
        }
    }
    return best;
}

std::vector<std::string> tokens(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::optional<double> parse_real(const std::string& s)
{
    std::size_t used = 0;
    try {
        const double x = std::stod(s, &used);
        if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

// Typed access to one section; remembers which keys are legal so that
// unknown ones can be reported with a suggestion.
class Reader {
public:
    Reader(const Section* sec, std::vector<std::string>& errors, std::vector<std::string> allowed)
        : sec_(sec), errors_(errors), allowed_(std::move(allowed))
    {
        if (!sec_) return;
        for (const auto& [key, entry] : sec_->entries) {
            if (std::find(allowed_.begin(), allowed_.end(), key) == allowed_.end())
                error(entry.line, "unknown key '" + key + "' in [" + sec_->name + "] (did you mean '" +
                                      nearest(key, allowed_) + "'?)");
        }
    }

    bool has(const std::string& key) const { return sec_ && sec_->entries.count(key); }
    int line_of(const std::string& key) const { return has(key) ? sec_->entries.at(key).line : (sec_ ? sec_->line : 0); }

    std::string text(const std::string& key, const std::string& fallback, bool required = false)
    {
        if (!has(key)) {
            if (required) missing(key);
            return fallback;
        }
        return sec_->entries.at(key).value;
    }

    double real(const std::string& key, double fallback, bool required = false)
    {
        if (!has(key)) {
            if (required) missing(key);
            return fallback;
        }
        const Entry& e = sec_->entries.at(key);
        if (auto x = parse_real(e.value)) return *x;
        error(e.line, "key '" + key + "' expects a number, got '" + e.value + "'");
        return fallback;
    }

    long integer(const std::string& key, long fallback, bool required = false)
    {
        if (!has(key)) {
            if (required) missing(key);
            return fallback;
        }
        const Entry& e = sec_->entries.at(key);
        auto x = parse_real(e.value);
        if (x && *x == std::floor(*x) && std::abs(*x) < 9e15) return static_cast<long>(*x);
        error(e.line, "key '" + key + "' expects an integer, got '" + e.value + "'");
        return fallback;
    }

    std::vector<double> reals(const std::string& key, std::vector<double> fallback)
    {
        if (!has(key)) return fallback;
        const Entry& e = sec_->entries.at(key);
        std::vector<double> out;
        for (const auto& tok : tokens(e.value)) {
            if (auto x = parse_real(tok))
                out.push_back(*x);
            else
                error(e.line, "key '" + key + "' expects a list of numbers, got '" + tok + "'");
        }
        return out;
    }

    void error(int line, const std::string& msg) { errors_.push_back("line " + std::to_string(line) + ": " + msg); }

    void missing(const std::string& key)
    {
        if (sec_)
            error(sec_->line, "[" + sec_->name + "] is missing required key '" + key + "'");
        else
            errors_.push_back("missing required key '" + key + "'");
    }

private:
    const Section* sec_;
    std::vector<std::string>& errors_;
    std::vector<std::string> allowed_;
};

const std::vector<std::string> kInitialKeys{"kind", "mass", "mass_star", "factor", "lo",
                                            "hi",   "height", "sigma",   "path"};

const std::map<std::string, std::vector<std::string>> kInitialKindKeys{
    {"fermi_dirac", {"mass"}},
    {"scaled_fermi_dirac", {"mass_star", "factor"}},
    {"indicator", {"lo", "hi", "height"}},
    {"gaussian_profile", {"mass", "sigma"}},
    {"from_snapshot", {"path"}},
};

InitialSpec read_initial(Reader& r, int section_line, const std::string& base_dir, const std::string& where)
{
    InitialSpec s;
    s.kind = r.text("kind", "", true);
    if (s.kind.empty()) return s;
    auto it = kInitialKindKeys.find(s.kind);
    if (it == kInitialKindKeys.end()) {
        std::vector<std::string> kinds;
        for (const auto& [k, _] : kInitialKindKeys) kinds.push_back(k);
        r.error(r.line_of("kind"), "unknown initial kind '" + s.kind + "' in " + where + " (did you mean '" +
                                       nearest(s.kind, kinds) + "'?)");
        return s;
    }
    const auto& needed = it->second;
    for (const auto& key : kInitialKeys) {
        if (key == "kind") continue;
        const bool used = std::find(needed.begin(), needed.end(), key) != needed.end();
        if (!used && r.has(key))
            r.error(r.line_of(key), "key '" + key + "' does not apply to initial kind " + s.kind);
        if (used && !r.has(key)) r.error(section_line, where + " kind " + s.kind + " needs key '" + key + "'");
    }
    s.mass = r.real("mass", 0.0);
    s.mass_star = r.real("mass_star", 0.0);
    s.factor = r.real("factor", 1.0);
    s.lo = r.real("lo", 0.0);
    s.hi = r.real("hi", 0.0);
    s.height = r.real("height", 1.0);
    s.sigma = r.real("sigma", 1.0);
    s.path = r.text("path", "");
    if (!s.path.empty() && !base_dir.empty() && std::filesystem::path(s.path).is_relative())
        s.path = (std::filesystem::path(base_dir) / s.path).string();

    if ((s.kind == "fermi_dirac" || s.kind == "gaussian_profile") && r.has("mass") && !(s.mass > 0.0))
        r.error(r.line_of("mass"), "mass must be positive");
    if (s.kind == "scaled_fermi_dirac") {
        if (r.has("mass_star") && !(s.mass_star > 0.0)) r.error(r.line_of("mass_star"), "mass_star must be positive");
        if (r.has("factor") && !(s.factor > 0.0 && s.factor <= 1.0))
            r.error(r.line_of("factor"), "factor must lie in (0,1] so that f0 <= F_{M*}");
    }
    if (s.kind == "indicator") {
        if (r.has("height") && !(s.height > 0.0 && s.height <= 1.0))
            r.error(r.line_of("height"), "indicator height " + r.text("height", "") +
                                             " leaves the invariant region [0,1] (need 0 < height <= 1)");
        if (r.has("lo") && r.has("hi") && !(s.lo < s.hi)) r.error(r.line_of("hi"), "indicator needs lo < hi");
    }
    if (s.kind == "gaussian_profile" && r.has("sigma") && !(s.sigma > 0.0))
        r.error(r.line_of("sigma"), "sigma must be positive");
    return s;
}

std::optional<AppendixBoundSpec> parse_case(const std::string& tok)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : tok) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4) return std::nullopt;
    auto p = parse_real(parts[0]), q = parse_real(parts[1]), m = parse_real(parts[2]), a = parse_real(parts[3]);
    if (!p || !q || !m || !a) return std::nullopt;
    AppendixBoundSpec s{*p, *q, *m, static_cast<int>(*a), 1};
    try {
        validate(s);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (*a != 0.0 && *a != 1.0) return std::nullopt;
    return s;
}

const std::vector<std::string> kExperimentKinds{"run",           "comparison",      "decay_fit",  "moment_propagation",
                                                "kernel_bounds", "entropy_control", "cross_check"};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errs)
    : std::runtime_error([&] {
          std::string m = "invalid configuration:";
          for (const auto& e : errs) m += "\n  " + e;
          return m;
      }()),
      errors(std::move(errs))
{
}

std::size_t edit_distance(const std::string& a, const std::string& b)
{
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::vector<AppendixBoundSpec> full_bound_matrix()
{
    const double ps[] = {1.0, 2.0, kInf};
    std::vector<AppendixBoundSpec> out;
    for (double p : ps)
        for (double q : ps) {
            if (q > p) continue;
            for (double m : {0.0, 1.0})
                for (int a : {0, 1}) out.push_back({p, q, m, a, 1});
        }
    return out;
}

ScenarioConfig parse_config(const std::string& text, const std::string& base_dir)
{
    std::vector<std::string> errors;
    std::vector<Section> sections;
    {
        std::istringstream is(text);
        std::string raw;
        int line = 0;
        while (std::getline(is, raw)) {
            ++line;
            const auto hash = raw.find('#');
            const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') {
                    errors.push_back("line " + std::to_string(line) + ": malformed section header '" + s + "'");
                    continue;
                }
                sections.push_back({trim(s.substr(1, s.size() - 2)), line, {}});
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos) {
                errors.push_back("line " + std::to_string(line) + ": expected 'key = value', got '" + s + "'");
                continue;
            }
            if (sections.empty()) {
                errors.push_back("line " + std::to_string(line) + ": key outside any [section]");
                continue;
            }
            const std::string key = trim(s.substr(0, eq));
            const std::string value = trim(s.substr(eq + 1));
            auto& entries = sections.back().entries;
            if (entries.count(key))
                errors.push_back("line " + std::to_string(line) + ": duplicate key '" + key + "'");
            else
                entries[key] = {value, line};
        }
    }

    const std::vector<std::string> fixed{"grid", "initial", "solver", "output"};
    std::map<std::string, const Section*> named;
    std::vector<const Section*> experiments;
    for (const auto& sec : sections) {
        if (sec.name.rfind("experiment.", 0) == 0) {
            experiments.push_back(&sec);
            continue;
        }
        if (std::find(fixed.begin(), fixed.end(), sec.name) == fixed.end()) {
            std::vector<std::string> options = fixed;
            for (const auto& k : kExperimentKinds) options.push_back("experiment." + k);
            errors.push_back("line " + std::to_string(sec.line) + ": unknown section [" + sec.name +
                             "] (did you mean [" + nearest(sec.name, options) + "]?)");
            continue;
        }
        if (named.count(sec.name)) {
            errors.push_back("line " + std::to_string(sec.line) + ": section [" + sec.name + "] appears twice");
            continue;
        }
        named[sec.name] = &sec;
    }
    auto get = [&](const std::string& name) -> const Section* {
        auto it = named.find(name);
        return it == named.end() ? nullptr : it->second;
    };
    for (const auto& name : {"grid", "initial", "solver"})
        if (!get(name)) errors.push_back(std::string("missing required section [") + name + "]");

    ScenarioConfig cfg;

    if (const Section* sec = get("grid")) {
        Reader r(sec, errors, {"geometry", "dim", "extent", "cells"});
        const std::string geom = r.text("geometry", "", true);
        bool geom_ok = false;
        if (!geom.empty()) {
            try {
                cfg.geometry = geometry_from_string(geom);
                geom_ok = true;
            } catch (const std::exception& e) {
                r.error(r.line_of("geometry"), e.what());
            }
        }
        cfg.dim = static_cast<int>(r.integer("dim", 1));
        cfg.extent = r.real("extent", 0.0, true);
        cfg.cells = static_cast<int>(r.integer("cells", 0, true));
        if (geom_ok && r.has("extent") && r.has("cells")) {
            try {
                make_grid(cfg.geometry, cfg.dim, cfg.extent, cfg.cells);
            } catch (const std::exception& e) {
                r.error(sec->line, std::string("grid: ") + e.what());
            }
        }
    }

    if (const Section* sec = get("initial")) {
        Reader r(sec, errors, kInitialKeys);
        cfg.initial = read_initial(r, sec->line, base_dir, "[initial]");
    }

    if (const Section* sec = get("solver")) {
        Reader r(sec, errors,
                 {"kind", "t_final", "cfl_safety", "output_stride", "dt", "clamp_delta", "time_nodes", "picard_tol",
                  "picard_max_iter", "singular_quad_nodes"});
        cfg.solver = r.text("kind", "", true);
        const double t_final = r.real("t_final", 0.0, true);
        if (cfg.solver == "fv") {
            for (const char* k : {"time_nodes", "picard_tol", "picard_max_iter", "singular_quad_nodes"})
                if (r.has(k)) r.error(r.line_of(k), std::string("key '") + k + "' applies to the duhamel solver only");
            cfg.fv.t_final = t_final;
            cfg.fv.cfl_safety = r.real("cfl_safety", cfg.fv.cfl_safety);
            cfg.fv.output_stride = static_cast<int>(r.integer("output_stride", cfg.fv.output_stride));
            cfg.fv.clamp_delta = r.real("clamp_delta", cfg.fv.clamp_delta);
            if (r.has("dt")) cfg.fv.dt_override = r.real("dt", 0.0);
            try {
                validate(cfg.fv);
            } catch (const std::exception& e) {
                r.error(sec->line, std::string("fv solver: ") + e.what());
            }
        } else if (cfg.solver == "duhamel") {
            for (const char* k : {"cfl_safety", "output_stride", "dt", "clamp_delta"})
                if (r.has(k)) r.error(r.line_of(k), std::string("key '") + k + "' applies to the fv solver only");
            cfg.duhamel.t_final = t_final;
            cfg.duhamel.time_nodes = static_cast<int>(r.integer("time_nodes", cfg.duhamel.time_nodes));
            cfg.duhamel.picard_tol = r.real("picard_tol", cfg.duhamel.picard_tol);
            cfg.duhamel.picard_max_iter = static_cast<int>(r.integer("picard_max_iter", cfg.duhamel.picard_max_iter));
            cfg.duhamel.singular_quad_nodes =
                static_cast<int>(r.integer("singular_quad_nodes", cfg.duhamel.singular_quad_nodes));
            try {
                validate(cfg.duhamel);
            } catch (const std::exception& e) {
                r.error(sec->line, std::string("duhamel solver: ") + e.what());
            }
            if (cfg.geometry != Geometry::cartesian1d)
                r.error(r.line_of("kind"), "the duhamel solver needs geometry = cartesian1d");
        } else if (!cfg.solver.empty()) {
            r.error(r.line_of("kind"), "unknown solver '" + cfg.solver + "' (did you mean '" +
                                           nearest(cfg.solver, {"fv", "duhamel"}) + "'?)");
        }
    }

    {
        const Section* sec = get("output");
        Reader r(sec, errors, {"dir", "snapshot_times", "seed"});
        cfg.output_dir = r.text("dir", cfg.output_dir);
        if (!cfg.output_dir.empty() && !base_dir.empty() && std::filesystem::path(cfg.output_dir).is_relative())
            cfg.output_dir = (std::filesystem::path(base_dir) / cfg.output_dir).string();
        cfg.snapshot_times = r.reals("snapshot_times", {});
        const double t_final = cfg.solver == "duhamel" ? cfg.duhamel.t_final : cfg.fv.t_final;
        for (double t : cfg.snapshot_times)
            if (!(t >= 0.0 && t <= t_final))
                r.error(r.line_of("snapshot_times"), "snapshot time " + format_double(t) + " lies outside [0, t_final]");
        const long seed = r.integer("seed", 1);
        if (seed < 0) r.error(r.line_of("seed"), "seed must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(std::max(seed, 0L));
    }

    std::set<std::string> names;
    for (const Section* sec : experiments) {
        const std::string rest = sec->name.substr(std::string("experiment.").size());
        const auto dot = rest.find('.');
        ExperimentSpec ex;
        ex.kind = rest.substr(0, dot);
        ex.name = dot == std::string::npos ? ex.kind : rest.substr(dot + 1);
        if (std::find(kExperimentKinds.begin(), kExperimentKinds.end(), ex.kind) == kExperimentKinds.end()) {
            errors.push_back("line " + std::to_string(sec->line) + ": unknown experiment '" + ex.kind +
                             "' (did you mean '" + nearest(ex.kind, kExperimentKinds) + "'?)");
            continue;
        }
        if (!names.insert(ex.name).second) {
            errors.push_back("line " + std::to_string(sec->line) + ": experiment name '" + ex.name + "' is used twice");
            continue;
        }
        if (ex.kind == "run") {
            Reader r(sec, errors, {});
        } else if (ex.kind == "comparison") {
            Reader r(sec, errors, kInitialKeys);
            ex.other = read_initial(r, sec->line, base_dir, "[" + sec->name + "]");
        } else if (ex.kind == "decay_fit") {
            Reader r(sec, errors, {"window", "mass_star"});
            const auto w = r.reals("window", {});
            if (w.size() != 2 || !(w[0] < w[1]))
                r.error(r.has("window") ? r.line_of("window") : sec->line, "decay_fit needs 'window = t_lo t_hi'");
            else {
                ex.window_lo = w[0];
                ex.window_hi = w[1];
            }
            if (r.has("mass_star")) ex.mass_star = r.real("mass_star", 0.0);
        } else if (ex.kind == "moment_propagation") {
            Reader r(sec, errors, {"order", "t_finals"});
            ex.order = static_cast<int>(r.integer("order", ex.order));
            ex.t_finals = r.reals("t_finals", ex.t_finals);
            if (ex.order < 0 || ex.order % 2) r.error(r.line_of("order"), "order must be a non-negative even integer");
            if (ex.t_finals.empty()) r.error(r.line_of("t_finals"), "t_finals must not be empty");
            if (cfg.geometry != Geometry::radial)
                r.error(sec->line, "moment_propagation needs geometry = radial");
        } else if (ex.kind == "kernel_bounds") {
            Reader r(sec, errors, {"cases", "functions", "t_min", "t_max", "samples", "max_spread"});
            const std::string cases = r.text("cases", "all");
            if (cases == "all")
                ex.cases = full_bound_matrix();
            else
                for (const auto& tok : tokens(cases)) {
                    if (auto c = parse_case(tok))
                        ex.cases.push_back(*c);
                    else
                        r.error(r.line_of("cases"), "bad kernel bound case '" + tok + "' (expected p:q:m:alpha with 1<=q<=p)");
                }
            if (r.has("functions")) ex.functions = tokens(r.text("functions", ""));
            for (const auto& f : ex.functions)
                if (f != "gaussian" && f != "indicator" && f != "fermi_dirac")
                    r.error(r.line_of("functions"), "unknown test function '" + f + "'");
            ex.t_min = r.real("t_min", ex.t_min);
            ex.t_max = r.real("t_max", ex.t_max);
            ex.samples = static_cast<int>(r.integer("samples", ex.samples));
            ex.max_spread = r.real("max_spread", ex.max_spread);
            if (!(ex.t_min >= kMinKernelTime && ex.t_min < ex.t_max)) r.error(sec->line, "need 1e-6 <= t_min < t_max");
            if (ex.samples < 2) r.error(r.line_of("samples"), "samples must be at least 2");
            if (cfg.geometry != Geometry::cartesian1d) r.error(sec->line, "kernel_bounds needs geometry = cartesian1d");
        } else if (ex.kind == "entropy_control") {
            Reader r(sec, errors, {"eps", "trials"});
            ex.eps = r.reals("eps", ex.eps);
            ex.trials = static_cast<int>(r.integer("trials", ex.trials));
            for (double e : ex.eps)
                if (!(e > 0.0 && e < 1.0)) r.error(r.line_of("eps"), "eps values must lie in (0,1)");
            if (ex.trials < 1) r.error(r.line_of("trials"), "trials must be at least 1");
        } else if (ex.kind == "cross_check") {
            Reader r(sec, errors, {"tolerance"});
            ex.tolerance = r.real("tolerance", ex.tolerance);
            if (cfg.geometry != Geometry::cartesian1d) r.error(sec->line, "cross_check needs geometry = cartesian1d");
            const double tf = cfg.solver == "duhamel" ? cfg.duhamel.t_final : cfg.fv.t_final;
            if (tf > 1.0) r.error(sec->line, "cross_check needs t_final <= 1");
        }
        cfg.experiments.push_back(std::move(ex));
    }
    if (cfg.experiments.empty()) {
        ExperimentSpec run;
        run.kind = run.name = "run";
        cfg.experiments.push_back(std::move(run));
    }

    if (!errors.empty()) throw ConfigError(std::move(errors));
    return cfg;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw ConfigError({"cannot open config file " + path});
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace fdfp
