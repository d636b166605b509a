#pragma once

// Gamma-function machinery for level-one L-functions: log Gamma, the
// functional-equation factor chi_f, the rotation phase theta_f and the
// upper incomplete gamma function.

#include <complex>

namespace lfd {

using cplx = std::complex<double>;

/// log Gamma(z) on the standard branch: real on the positive axis and
/// continuous in the plane slit along the nonpositive reals (the branch of
/// mpmath.loggamma / scipy.special.loggamma). Absolute error <= 1e-12 for
/// |z| <= 1e3. Throws DomainError at z = 0, -1, -2, ...
cplx log_gamma(cplx z);

/// log chi_f(s) = log[(-1)^{k/2} (2pi)^{2s-1} Gamma(1-s+(k-1)/2) / Gamma(s+(k-1)/2)],
/// with the sign carried as i*pi when (-1)^{k/2} = -1.
cplx log_chi_f(cplx s, int k);
cplx chi_f(cplx s, int k);

/// log of the archimedean factor (2pi)^{-w} Gamma(w), w = s + (k-1)/2, so
/// that Lambda_f(s) = exp(log_gamma_factor(s, k)) L_f(s).
cplx log_gamma_factor(cplx s, int k);

/// Rotation phase evaluated directly from log Gamma:
/// Im log Gamma(k/2 + it) - t log(2pi), plus pi/2 when k = 2 (mod 4).
/// exp(2i theta) = 1 / chi_f(1/2 + it).
double theta_direct(double t, int k);
/// d theta / dt = Re psi(k/2 + it) - log(2pi), asymptotic to O(|z|^-2).
double theta_derivative(double t, int k);

struct PhaseState {
  double t = 0.0;
  double theta = 0.0;
  double last_t = 0.0;
  bool initialized = false;
};

inline constexpr double kMaxPhaseStep = 0.5;

/// Continuous branch of the rotation phase tracked through successive
/// calls. The first call seeds from theta_direct. Later calls reduce the
/// direct value modulo 2pi onto the branch nearest the linear prediction
/// from the previous point. Throws PreconditionError if |t - last_t| > 0.5.
double theta_f(double t, int k, PhaseState& state);

/// Gamma(w, x) for real x > 0. Continued fraction for x >= |w| + 4,
/// otherwise Gamma(w) minus the lower-gamma series. Throws NumericError if
/// the iteration cap is hit, DomainError for x <= 0.
cplx upper_gamma(cplx w, double x);
/// gamma(w, x) = Gamma(w) - Gamma(w, x), by its power series.
cplx lower_gamma(cplx w, double x);

/// Gamma(w, z) continued analytically to complex z with Re z > 0.
cplx upper_gamma(cplx w, cplx z);

/// Q(w, z) = Gamma(w, z) / Gamma(w), with the normalization folded into
/// the exponent so that neither factor overflows separately.
cplx regularized_upper_gamma(cplx w, cplx z);

struct RegularizedGamma {
  cplx value;
  double error;  // first-order rounding estimate, absolute
};

/// Q(w, z) with an error estimate propagated from the exponent, the
/// iteration count and (for the series) the largest partial term.
RegularizedGamma regularized_upper_gamma_est(cplx w, cplx z);

}  // namespace lfd
