#include "numerics.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_roots.h>

#include <memory>
#include <stdexcept>
#include <string>

namespace fdfp::detail {

namespace {

struct ErrorHandlerOff {
    ErrorHandlerOff() { gsl_set_error_handler_off(); }
};

void ensure_handler_off()
{
    static ErrorHandlerOff off;
}

double trampoline(double x, void* p)
{
    return (*static_cast<const std::function<double(double)>*>(p))(x);
}

struct WorkspaceDeleter {
    void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

constexpr std::size_t kLimit = 2000;

}  // namespace

double integrate_semi_infinite(const std::function<double(double)>& f, double lower, double epsrel)
{
    ensure_handler_off();
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(kLimit));
    gsl_function F{&trampoline, const_cast<std::function<double(double)>*>(&f)};
    double result = 0.0, abserr = 0.0;
    const int status = gsl_integration_qagiu(&F, lower, 0.0, epsrel, kLimit, ws.get(), &result, &abserr);
    if (status != GSL_SUCCESS)
        throw std::runtime_error(std::string("quadrature did not converge: ") + gsl_strerror(status));
    return result;
}

double integrate_interval(const std::function<double(double)>& f, double a, double b, double epsrel)
{
    ensure_handler_off();
    std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(kLimit));
    gsl_function F{&trampoline, const_cast<std::function<double(double)>*>(&f)};
    double result = 0.0, abserr = 0.0;
    const int status =
        gsl_integration_qag(&F, a, b, 0.0, epsrel, kLimit, GSL_INTEG_GAUSS61, ws.get(), &result, &abserr);
    if (status != GSL_SUCCESS)
        throw std::runtime_error(std::string("quadrature did not converge: ") + gsl_strerror(status));
    return result;
}

double brent_root(const std::function<double(double)>& f, double lo, double hi, double xtol)
{
    ensure_handler_off();
    gsl_function F{&trampoline, const_cast<std::function<double(double)>*>(&f)};
    std::unique_ptr<gsl_root_fsolver, decltype(&gsl_root_fsolver_free)> s(
        gsl_root_fsolver_alloc(gsl_root_fsolver_brent), &gsl_root_fsolver_free);
    if (gsl_root_fsolver_set(s.get(), &F, lo, hi) != GSL_SUCCESS)
        throw std::runtime_error("root not bracketed");
    for (int it = 0; it < 200; ++it) {
        if (gsl_root_fsolver_iterate(s.get()) != GSL_SUCCESS) throw std::runtime_error("root iteration failed");
        const double a = gsl_root_fsolver_x_lower(s.get());
        const double b = gsl_root_fsolver_x_upper(s.get());
        if (gsl_root_test_interval(a, b, xtol, 0.0) == GSL_SUCCESS) return gsl_root_fsolver_root(s.get());
    }
    throw std::runtime_error("root finder did not converge");
}

GaussRule gauss_legendre(int points)
{
    ensure_handler_off();
    if (points < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> t(
        gsl_integration_glfixed_table_alloc(points), &gsl_integration_glfixed_table_free);
    if (!t) throw std::runtime_error("cannot build Gauss-Legendre table");
    GaussRule r;
    r.x.resize(points);
    r.w.resize(points);
    for (int i = 0; i < points; ++i) gsl_integration_glfixed_point(-1.0, 1.0, i, &r.x[i], &r.w[i], t.get());
    return r;
}

}  // namespace fdfp::detail
