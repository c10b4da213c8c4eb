#pragma once

#include <functional>

namespace josim {

// Adaptive integral of f over [a, b] to the requested relative accuracy,
// robust to integrable endpoint singularities.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double epsrel = 1e-10);

}  // namespace josim
