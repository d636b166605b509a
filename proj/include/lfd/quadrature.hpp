#pragma once

// Globally adaptive Gauss-Kronrod (7/15 point) quadrature for complex
// integrands on finite intervals.

#include <complex>
#include <functional>

namespace lfd {

struct QuadResult {
  std::complex<double> value;
  double error = 0.0;  // Kronrod-minus-Gauss estimate summed over panels
  int panels = 0;
  bool converged = false;
};

/// Subdivides the panel with the largest error estimate until the total
/// estimate is <= max(abs_tol, rel_tol * |value|) or max_panels is reached.
QuadResult integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                     double abs_tol, double rel_tol = 0.0, int max_panels = 5000);

}  // namespace lfd
