#include "lfd/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lanczos_table.hpp"
#include "lfd/errors.hpp"

namespace lfd {

namespace {

using lcplx = std::complex<long double>;

constexpr long double kHalfLog2PiL = 0.918938533204672741780329736405617639861L;
constexpr double kLog2Pi = 1.83787706640934548356065947281123527972;
constexpr double kPi = std::numbers::pi;
constexpr int kCfCap = 100000;
constexpr int kSeriesCap = 100000;
// Worst |log Gamma| error of the frozen Lanczos table on |z| <= 1e3.
constexpr double kLogGammaAbsError = 1e-14;

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Re z >= 1/2.
cplx log_gamma_lanczos(cplx z) {
  const lcplx zm1 = lcplx(z.real(), z.imag()) - 1.0L;
  lcplx a = detail::kLanczosCoeff[0];
  for (int k = detail::kLanczosTerms - 1; k >= 1; --k) a += static_cast<long double>(detail::kLanczosCoeff[k]) / (zm1 + static_cast<long double>(k));
  const lcplx t = zm1 + static_cast<long double>(detail::kLanczosG) + 0.5L;
  const lcplx r = kHalfLog2PiL + (zm1 + 0.5L) * std::log(t) - t + std::log(a);
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

// log(1 + u) for |u| <= 1, u != -1.
cplx log1p_complex(cplx u) {
  const double re = 0.5 * std::log1p(2.0 * u.real() + std::norm(u));
  const double im = std::atan2(u.imag(), 1.0 + u.real());
  return {re, im};
}

// log sin(pi z) on the branch that makes the reflection formula agree
// with the standard log Gamma branch.
cplx log_sin_pi(cplx z) {
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  const cplx i(0.0, 1.0);
  const cplx e = std::exp(2.0 * kPi * i * z);
  return -i * kPi * z + cplx(std::log(0.5), 0.5 * kPi) + log1p_complex(-e);
}

struct SeriesSum {
  cplx sum;
  int terms;
  double max_term;
};

// sum_{n>=0} z^n / ((w+1)(w+2)...(w+n)).
SeriesSum lower_series(cplx w, cplx z) {
  cplx term = 1.0, sum = 1.0;
  double max_term = 1.0;
  const double zabs = std::abs(z);
  for (int n = 1; n <= kSeriesCap; ++n) {
    term *= z / (w + static_cast<double>(n));
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    if (n > zabs && std::abs(term) < 1e-17 * std::abs(sum)) return {sum, n, max_term};
  }
  throw NumericError("incomplete gamma series did not converge", sum);
}

struct Fraction {
  cplx value;
  int terms;
};

// Legendre continued fraction for Gamma(w, z) e^{z} z^{-w} (modified Lentz).
Fraction upper_fraction(cplx w, cplx z) {
  constexpr double tiny = 1e-300;
  cplx b = z + 1.0 - w;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i <= kCfCap; ++i) {
    const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - w);
    b += 2.0;
    d = an * d + b;
    if (d == 0.0) d = tiny;
    c = b + an / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const cplx delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return {h, i};
  }
  throw NumericError("incomplete gamma continued fraction did not converge", h);
}

bool use_fraction(cplx w, cplx z) { return std::abs(z) >= std::abs(w) + 4.0; }

void require_right_half(cplx z) {
  if (!(z.real() > 0.0) && !(z.real() == 0.0 && z.imag() != 0.0)) {
    throw DomainError("incomplete gamma needs Re z > 0");
  }
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_pole(z)) throw DomainError("log_gamma pole at z = " + std::to_string(z.real()));
  if (z.real() >= 0.5) return log_gamma_lanczos(z);
  return std::log(kPi) - log_sin_pi(z) - log_gamma_lanczos(1.0 - z);
}

cplx log_chi_f(cplx s, int k) {
  const double h = 0.5 * (k - 1);
  const cplx num = 1.0 - s + h;
  const cplx den = s + h;
  if (is_pole(num) || is_pole(den)) throw DomainError("chi_f evaluated at a gamma pole");
  cplx r = (2.0 * s - 1.0) * kLog2Pi + log_gamma(num) - log_gamma(den);
  if ((k / 2) % 2 != 0) r += cplx(0.0, kPi);
  return r;
}

cplx chi_f(cplx s, int k) { return std::exp(log_chi_f(s, k)); }

cplx log_gamma_factor(cplx s, int k) {
  const cplx w = s + 0.5 * (k - 1);
  return log_gamma(w) - w * kLog2Pi;
}

double theta_direct(double t, int k) {
  double th = log_gamma(cplx(0.5 * k, t)).imag() - t * kLog2Pi;
  if (k % 4 == 2) th += 0.5 * kPi;
  return th;
}

double theta_derivative(double t, int k) {
  const cplx z(0.5 * k, t);
  return (std::log(z) - 0.5 / z - 1.0 / (12.0 * z * z)).real() - kLog2Pi;
}

double theta_f(double t, int k, PhaseState& state) {
  if (!state.initialized) {
    state.theta = theta_direct(t, k);
    state.t = state.last_t = t;
    state.initialized = true;
    return state.theta;
  }
  const double h = t - state.t;
  if (std::abs(h) > kMaxPhaseStep) {
    throw PreconditionError("phase step " + std::to_string(std::abs(h)) +
                            " exceeds 0.5; use a smaller step");
  }
  const double predicted = state.theta + h * theta_derivative(state.t, k);
  const double raw = std::remainder(theta_direct(t, k), 2.0 * kPi);
  const double theta = raw + 2.0 * kPi * std::nearbyint((predicted - raw) / (2.0 * kPi));
  state.last_t = state.t;
  state.t = t;
  state.theta = theta;
  return theta;
}

cplx lower_gamma(cplx w, double x) {
  if (!(x > 0.0)) throw DomainError("lower_gamma needs x > 0");
  if (is_pole(w)) throw DomainError("lower_gamma at a nonpositive integer order");
  const cplx z(x, 0.0);
  return std::exp(w * std::log(z) - z) / w * lower_series(w, z).sum;
}

cplx upper_gamma(cplx w, double x) {
  if (!(x > 0.0)) throw DomainError("upper_gamma needs x > 0");
  return upper_gamma(w, cplx(x, 0.0));
}

cplx upper_gamma(cplx w, cplx z) {
  require_right_half(z);
  if (use_fraction(w, z)) return std::exp(w * std::log(z) - z) * upper_fraction(w, z).value;
  if (is_pole(w)) throw DomainError("upper_gamma series path at a nonpositive integer order");
  const cplx lower = std::exp(w * std::log(z) - z) / w * lower_series(w, z).sum;
  return std::exp(log_gamma(w)) - lower;
}

cplx regularized_upper_gamma(cplx w, cplx z) { return regularized_upper_gamma_est(w, z).value; }

RegularizedGamma regularized_upper_gamma_est(cplx w, cplx z) {
  require_right_half(z);
  if (is_pole(w)) throw DomainError("regularized gamma at a nonpositive integer order");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const cplx lz = std::log(z);
  if (use_fraction(w, z)) {
    const cplx lg = log_gamma(w);
    const cplx e = w * lz - z - lg;
    const double exp_err = 4.0 * eps * (std::abs(w) * std::abs(lz) + std::abs(z) + std::abs(lg)) + kLogGammaAbsError;
    const Fraction f = upper_fraction(w, z);
    const cplx q = std::exp(e) * f.value;
    return {q, std::abs(q) * (exp_err + 4.0 * eps * f.terms)};
  }
  const cplx lg = log_gamma(w + 1.0);
  const cplx e = w * lz - z - lg;
  const double exp_err = 4.0 * eps * (std::abs(w) * std::abs(lz) + std::abs(z) + std::abs(lg)) + kLogGammaAbsError;
  const SeriesSum ser = lower_series(w, z);
  const cplx p = std::exp(e) * ser.sum;
  const double p_abs = std::abs(p);
  const double amp = ser.max_term / std::abs(ser.sum);
  return {1.0 - p, p_abs * (exp_err + 4.0 * eps * ser.terms * amp) + eps};
}

}  // namespace lfd
