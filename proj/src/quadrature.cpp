#include "josim/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <memory>
#include <stdexcept>
#include <string>

namespace josim {

namespace {

double call_fn(double x, void* p) {
  return (*static_cast<const std::function<double(double)>*>(p))(x);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double epsrel) {
  constexpr std::size_t kLimit = 2048;
  std::unique_ptr<gsl_integration_workspace,
                  decltype(&gsl_integration_workspace_free)>
      ws(gsl_integration_workspace_alloc(kLimit),
         gsl_integration_workspace_free);
  if (!ws) throw std::runtime_error("quadrature: workspace allocation failed");

  gsl_function gf;
  gf.function = &call_fn;
  gf.params = const_cast<std::function<double(double)>*>(&f);

  double result = 0, abserr = 0;
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  // 61-point Gauss-Kronrod without series extrapolation; the boundary-layer
  // integrands are steep but finite, and extrapolation misclassifies them
  // as divergent.
  const int status =
      gsl_integration_qag(&gf, a, b, 0.0, epsrel, kLimit, GSL_INTEG_GAUSS61,
                          ws.get(), &result, &abserr);
  gsl_set_error_handler(old);
  if (status != GSL_SUCCESS && status != GSL_EROUND) {
    throw std::runtime_error(std::string("quadrature failed: ") +
                             gsl_strerror(status));
  }
  return result;
}

}  // namespace josim
