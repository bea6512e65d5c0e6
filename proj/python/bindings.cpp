#include "fdfp/config.hpp"
#include "fdfp/equilibrium.hpp"
#include "fdfp/fit.hpp"
#include "fdfp/functionals.hpp"
#include "fdfp/mehler.hpp"
#include "fdfp/scenario.hpp"
#include "fdfp/snapshot.hpp"
#include "fdfp/solver_duhamel.hpp"
#include "fdfp/solver_fv.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fdfp;

namespace {

py::array_t<double> to_array(const std::vector<double>& v)
{
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a)
{
    if (a.ndim() != 1) throw std::invalid_argument("expected a one-dimensional array");
    return {a.data(), a.data() + a.size()};
}

py::dict diagnostics_dict(const std::vector<DiagnosticsRow>& rows)
{
    std::vector<double> t, mass, energy, entropy, free, diss, rel, l1;
    for (const auto& r : rows) {
        t.push_back(r.time);
        mass.push_back(r.mass);
        energy.push_back(r.energy);
        entropy.push_back(r.entropy);
        free.push_back(r.free_energy);
        diss.push_back(r.dissipation);
        rel.push_back(r.rel_entropy);
        l1.push_back(r.l1_to_eq);
    }
    py::dict d;
    d["t"] = to_array(t);
    d["mass"] = to_array(mass);
    d["energy"] = to_array(energy);
    d["entropy"] = to_array(entropy);
    d["free_energy"] = to_array(free);
    d["dissipation"] = to_array(diss);
    d["rel_entropy"] = to_array(rel);
    d["l1_to_eq"] = to_array(l1);
    return d;
}

void bind_grid(py::module_& m)
{
    py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
        .def_property_readonly("geometry", [](const Grid& g) { return to_string(g.geometry); })
        .def_readonly("dim", &Grid::dim)
        .def_readonly("extent", &Grid::extent)
        .def_readonly("cells", &Grid::cells)
        .def_readonly("h", &Grid::h)
        .def_property_readonly("node", [](const Grid& g) { return to_array(g.node); })
        .def_property_readonly("qweight", [](const Grid& g) { return to_array(g.qweight); })
        .def("__repr__", [](const Grid& g) {
            return "Grid(" + to_string(g.geometry) + ", dim=" + std::to_string(g.dim) + ", extent=" +
                   format_double(g.extent) + ", cells=" + std::to_string(g.cells) + ")";
        });

    m.def(
        "make_grid",
        [](const std::string& geometry, int dim, double extent, int cells) {
            return std::make_shared<Grid>(make_grid(geometry_from_string(geometry), dim, extent, cells));
        },
        py::arg("geometry"), py::arg("dim"), py::arg("extent"), py::arg("cells"));

    py::class_<State>(m, "State")
        .def(py::init([](std::shared_ptr<Grid> g, const py::array_t<double, py::array::c_style | py::array::forcecast>& v) {
                 return make_state(std::shared_ptr<const Grid>(g), from_array(v));
             }),
             py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", [](const State& s) { return std::make_shared<Grid>(*s.grid); })
        .def_property_readonly("values", [](const State& s) { return to_array(s.values); })
        .def("__len__", &State::size);

    m.def("integrate", &integrate);
    m.def("moment", &moment, py::arg("state"), py::arg("order"));
    m.def("l1_distance", &l1_distance);
}

void bind_equilibrium(py::module_& m)
{
    m.def(
        "fermi_dirac_eval", [](double beta, double speed, int dim) { return fermi_dirac_eval({beta, dim}, speed); },
        py::arg("beta"), py::arg("speed"), py::arg("dim") = 1);
    m.def(
        "mass_of_beta", [](double beta, int dim) { return mass_of_beta({beta, dim}); }, py::arg("beta"),
        py::arg("dim") = 1);
    m.def(
        "beta_of_mass", [](double mass, int dim) { return beta_of_mass(mass, dim).beta; }, py::arg("mass"),
        py::arg("dim") = 1);
    m.def(
        "free_energy_of_beta", [](double beta, int dim) { return free_energy_of_beta({beta, dim}); },
        py::arg("beta"), py::arg("dim") = 1);
    m.def(
        "equilibrium_state",
        [](double mass, std::shared_ptr<Grid> g) { return equilibrium_state(mass, std::shared_ptr<const Grid>(g)); },
        py::arg("mass"), py::arg("grid"));
    m.def("regularize_initial", &regularize_initial, py::arg("f0"), py::arg("eps"));
}

void bind_functionals(py::module_& m)
{
    m.def("entropy_density", &entropy_density);
    m.def("entropy", &entropy);
    m.def("kinetic_energy", &kinetic_energy);
    m.def("free_energy", &free_energy);
    m.def("dissipation", &dissipation);
    m.def(
        "relative_entropy", [](const State& s, double mass) { return relative_entropy(s, mass).value; },
        py::arg("state"), py::arg("mass"));
    m.def("entropy_control_constant", &entropy_control_constant, py::arg("eps"), py::arg("dim") = 1);
    m.def(
        "check_entropy_control",
        [](const State& s, double eps) {
            const auto r = check_entropy_control(s, eps);
            py::dict d;
            d["max_pointwise_violation"] = r.max_pointwise_violation;
            d["minus_entropy"] = r.minus_entropy;
            d["bound"] = r.bound;
            d["holds"] = r.holds;
            return d;
        },
        py::arg("state"), py::arg("eps"));
    m.def(
        "csiszar_kullback_check",
        [](const State& s, double mass) {
            const auto r = csiszar_kullback_check(s, mass);
            return py::make_tuple(r.lhs, r.rhs, r.holds);
        },
        py::arg("state"), py::arg("mass"));
    m.def(
        "moment_bound_polynomial",
        [](int gamma, const std::vector<double>& moments, double mass, int dim) {
            return moment_bound_polynomial(gamma, moments, mass, dim).coeffs;
        },
        py::arg("gamma"), py::arg("initial_moments"), py::arg("mass"), py::arg("dim") = 1);
}

void bind_mehler(py::module_& m)
{
    m.def("kernel_eval", py::overload_cast<double, double, double>(&kernel_eval), py::arg("t"), py::arg("v"),
          py::arg("w"));
    m.def(
        "apply_kernel", [](double t, const State& g) { return to_array(apply_kernel(t, g)); }, py::arg("t"),
        py::arg("g"));
    m.def(
        "apply_kernel_gradient", [](double t, const State& g) { return to_array(apply_kernel_gradient(t, g)); },
        py::arg("t"), py::arg("g"));
    m.def(
        "weighted_norm",
        [](std::shared_ptr<Grid> g, const py::array_t<double, py::array::c_style | py::array::forcecast>& f, double p,
           double mm) { return weighted_norm(*g, from_array(f), p, mm); },
        py::arg("grid"), py::arg("values"), py::arg("p"), py::arg("m"));
    m.def(
        "appendix_bound_ratio",
        [](double p, double q, double mm, int alpha, double t, std::shared_ptr<Grid> g,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& f) {
            return appendix_bound_ratio({p, q, mm, alpha, 1}, t, *g, from_array(f));
        },
        py::arg("p"), py::arg("q"), py::arg("m"), py::arg("alpha"), py::arg("t"), py::arg("grid"), py::arg("values"));
}

void bind_solvers(py::module_& m)
{
    py::class_<FvParams>(m, "FvParams")
        .def(py::init<>())
        .def_readwrite("t_final", &FvParams::t_final)
        .def_readwrite("cfl_safety", &FvParams::cfl_safety)
        .def_readwrite("output_stride", &FvParams::output_stride)
        .def_readwrite("dt_override", &FvParams::dt_override)
        .def_readwrite("output_times", &FvParams::output_times);

    py::class_<DuhamelParams>(m, "DuhamelParams")
        .def(py::init<>())
        .def_readwrite("t_final", &DuhamelParams::t_final)
        .def_readwrite("time_nodes", &DuhamelParams::time_nodes)
        .def_readwrite("picard_tol", &DuhamelParams::picard_tol)
        .def_readwrite("picard_max_iter", &DuhamelParams::picard_max_iter)
        .def_readwrite("singular_quad_nodes", &DuhamelParams::singular_quad_nodes);

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("times", [](const Trajectory& t) { return to_array(t.times); })
        .def_property_readonly("states", [](const Trajectory& t) { return t.states; })
        .def_property_readonly("diagnostics", [](const Trajectory& t) { return diagnostics_dict(t.diagnostics); })
        .def_property_readonly("steps", [](const Trajectory& t) { return t.monitor.steps; })
        .def_property_readonly("min_value", [](const Trajectory& t) { return t.monitor.min_value; })
        .def_property_readonly("max_value", [](const Trajectory& t) { return t.monitor.max_value; })
        .def_property_readonly("max_entropy_increase",
                               [](const Trajectory& t) { return t.monitor.max_entropy_increase; });

    m.def("interface_flux", [](const State& s) { return to_array(interface_flux(s)); });
    m.def(
        "max_stable_dt", [](std::shared_ptr<Grid> g, double safety) { return max_stable_dt(*g, safety); },
        py::arg("grid"), py::arg("cfl_safety") = 0.5);
    m.def("step", &step, py::arg("state"), py::arg("dt"));
    m.def(
        "solve", [](const State& f0, const FvParams& p) { return solve(f0, p); }, py::arg("f0"), py::arg("params"));
    m.def(
        "comparison_experiment",
        [](const State& f0, const State& g0, const FvParams& p) {
            const auto r = comparison_experiment(f0, g0, p);
            return py::make_tuple(r.max_positive_part, r.max_l1_slack);
        },
        py::arg("f0"), py::arg("g0"), py::arg("params"));
    m.def(
        "picard_solve",
        [](const State& f0, const DuhamelParams& p) {
            PicardResult r = picard_solve(f0, p);
            py::dict d;
            d["trajectory"] = std::move(r.trajectory);
            d["increments"] = to_array(r.increments);
            d["iterations"] = r.iterations;
            return d;
        },
        py::arg("f0"), py::arg("params"));
    m.def(
        "fit_exponential",
        [](const std::vector<double>& t, const std::vector<double>& v) {
            const auto f = fit_exponential(t, v);
            return py::make_tuple(f.slope, f.intercept, f.r2);
        },
        py::arg("times"), py::arg("values"));
}

void bind_harness(py::module_& m)
{
    m.def(
        "check_config",
        [](const std::string& text) {
            try {
                parse_config(text);
                return std::vector<std::string>{};
            } catch (const ConfigError& e) {
                return e.errors;
            }
        },
        py::arg("text"), "Return the list of problems in a scenario file's text (empty when valid).");
    m.def(
        "run_scenario",
        [](const std::string& path, std::optional<std::string> output_dir, std::optional<std::uint64_t> seed) {
            RunOptions opts;
            opts.output_dir = output_dir;
            opts.seed = seed;
            const auto r = run_scenario(load_config(path), opts);
            py::list out;
            for (const auto& e : r.experiments) out.append(py::make_tuple(e.name, e.passed, e.summary));
            return out;
        },
        py::arg("path"), py::arg("output_dir") = py::none(), py::arg("seed") = py::none());
    m.def(
        "write_snapshot", [](const State& s, double t, const std::string& p) { write_snapshot(s, t, p); },
        py::arg("state"), py::arg("time"), py::arg("path"));
    m.def(
        "read_snapshot",
        [](const std::string& p) {
            const SnapshotData d = read_snapshot(p);
            return py::make_tuple(snapshot_state(d), d.time);
        },
        py::arg("path"));
}

}  // namespace

PYBIND11_MODULE(_fdfp, m)
{
    m.doc() = "Fermi-Dirac-Fokker-Planck lab: grids, equilibria, functionals, kernel operators and solvers";
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    m.attr("inf") = kInf;
    bind_grid(m);
    bind_equilibrium(m);
    bind_functionals(m);
    bind_mehler(m);
    bind_solvers(m);
    bind_harness(m);
}
