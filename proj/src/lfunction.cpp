#include "lfd/lfunction.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "lfd/errors.hpp"
#include "lfd/kernels.hpp"
#include "lfd/summation.hpp"

namespace lfd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Relative accuracy of chi_f.
constexpr double kChiRelError = 1e-13;

// log of 2 sqrt(n) n^{p} |Gamma(w, 2 pi n y)| / |Gamma(w)| bounded along
// the horizontal ray from z = 2 pi n y; +inf where the bound is invalid.
double log_term_bound(double n, cplx w, double log_abs_gamma_w, cplx y, double p) {
  const cplx z = 2.0 * kPi * n * y;
  const double r = std::abs(z);
  const double a = w.real() - 1.0;
  if (a > 0.0 && r <= a) return std::numeric_limits<double>::infinity();
  const double phase = std::max(0.0, -w.imag() * std::arg(z));
  const double corr = a > 0.0 ? -std::log1p(-a / r) : 0.0;
  return std::log(2.0) + (0.5 + p) * std::log(n) + a * std::log(r) - z.real() + phase - log_abs_gamma_w + corr;
}

std::string fmt_s(cplx s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g%+.15gi", s.real(), s.imag());
  return buf;
}

std::string fmt_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

std::string_view method_name(EvalMethod m) noexcept {
  switch (m) {
    case EvalMethod::dirichlet: return "dirichlet";
    case EvalMethod::afe: return "afe";
    case EvalMethod::exact: break;
  }
  return "exact";
}

LFunction::LFunction(int weight, std::int64_t table_size)
    : table_(CoefficientTable::get(weight, table_size)) {}

LFunction::LFunction(std::shared_ptr<const CoefficientTable> table) : table_(std::move(table)) {
  if (!table_) throw PreconditionError("null coefficient table");
}

EvalResult LFunction::dirichlet_eval(cplx s, std::int64_t n_terms) const {
  const double sigma = s.real();
  if (!(sigma > 1.0)) throw DomainError("dirichlet_eval needs Re s > 1, got s = " + fmt_s(s));
  if (n_terms < 1 || n_terms > table_->n_max()) {
    throw PreconditionError("n_terms " + std::to_string(n_terms) + " outside the coefficient table (1.." +
                            std::to_string(table_->n_max()) + ")");
  }
  const auto lam = table_->lambdas().subspan(1, static_cast<std::size_t>(n_terms));
  const auto ln = table_->log_n().subspan(1, static_cast<std::size_t>(n_terms));
  EvalResult r;
  r.method = EvalMethod::dirichlet;
  r.terms_used = n_terms;
  r.value = kernels::dirichlet_sum(lam, ln, sigma, s.imag());

  const double N = static_cast<double>(n_terms);
  const double d = sigma - 1.0;
  const double tail = sigma * std::pow(N, 1.0 - sigma) * ((std::log(N) + 1.0) / d + 1.0 / (d * d));
  CompensatedSum abs_sum;
  for (std::size_t i = 0; i < lam.size(); ++i) abs_sum.add(std::abs(lam[i]) * std::exp(-sigma * ln[i]));
  r.est_error = tail + 32.0 * kEps * abs_sum.value();
  return r;
}

EvalResult LFunction::afe_eval(cplx s) const {
  const double sigma = s.real(), t = s.imag();
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw DomainError("afe_eval needs 0 <= Re s <= 1, got s = " + fmt_s(s));
  if (!(std::abs(t) >= 2.0 * kPi)) {
    throw DomainError("afe_eval needs |Im s| >= 2 pi so that y >= 1; use exact_eval at s = " + fmt_s(s));
  }
  if (std::abs(t) > kMaxHeight) throw DomainError("afe_eval limited to |Im s| <= 200");
  const auto m = static_cast<std::int64_t>(std::floor(std::abs(t) / (2.0 * kPi)));
  if (m > table_->n_max()) throw PreconditionError("coefficient table too short for afe_eval");
  const auto lam = table_->lambdas().subspan(1, static_cast<std::size_t>(m));
  const auto ln = table_->log_n().subspan(1, static_cast<std::size_t>(m));
  const cplx first = kernels::dirichlet_sum(lam, ln, sigma, t);
  const cplx dual = kernels::dirichlet_sum(lam, ln, 1.0 - sigma, -t);
  EvalResult r;
  r.method = EvalMethod::afe;
  r.value = first + chi_f(s, weight()) * dual;
  r.est_error = std::pow(std::abs(t), 0.5 - sigma);
  r.terms_used = m;
  r.heuristic = true;
  return r;
}

EvalResult LFunction::exact_eval(cplx s, double tol, double split_scale) const {
  const double sigma = s.real(), t = s.imag();
  if (!(sigma >= kExactMinSigma && sigma <= kExactMaxSigma) || !(std::abs(t) <= kMaxHeight)) {
    throw DomainError("exact_eval supports -2 <= Re s <= 3 and |Im s| <= 200, got s = " + fmt_s(s));
  }
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  if (!(split_scale > 0.0)) throw PreconditionError("split scale must be positive");

  const int k = weight();
  const double h = 0.5 * (k - 1);
  const cplx w = s + h;
  const cplx wp = 1.0 - s + h;
  const cplx lchi = log_chi_f(s, k);
  const cplx chi = std::exp(lchi);
  const double chi_abs = std::exp(lchi.real());
  const double lg_w = log_gamma(w).real();
  const double lg_wp = log_gamma(wp).real();

  const double theta0 = t == 0.0 ? 0.5 * kPi : std::min(0.5 * kPi, 8.0 / std::abs(t));
  const double phi = t > 0.0 ? 0.5 * kPi - theta0 : (t < 0.0 ? -(0.5 * kPi - theta0) : 0.0);
  const cplx y0 = std::polar(split_scale, phi);
  const cplx y1 = 1.0 / y0;

  // Tail beyond n: g(n+1) / (1 - rho) with rho bounding every later ratio.
  const double growth = h - 0.5;
  auto tail_after = [&](std::int64_t n) {
    const double m = static_cast<double>(n + 1);
    const double ratio_poly = growth * std::log((m + 1.0) / m);
    const double g1 = log_term_bound(m, w, lg_w, y0, -sigma);
    const double g2 = log_term_bound(m, wp, lg_wp, y1, sigma - 1.0) + std::log(chi_abs);
    const double rho1 = ratio_poly - 2.0 * kPi * y0.real();
    const double rho2 = ratio_poly - 2.0 * kPi * y1.real();
    if (!std::isfinite(g1) || !std::isfinite(g2) || rho1 >= 0.0 || rho2 >= 0.0) {
      return std::numeric_limits<double>::infinity();
    }
    return std::exp(g1) / -std::expm1(rho1) + std::exp(g2) / -std::expm1(rho2);
  };

  const std::int64_t cap = std::min<std::int64_t>(kExactTermCap, table_->n_max());
  std::int64_t n_terms = 0;
  double tail = std::numeric_limits<double>::infinity();
  for (std::int64_t n = 1; n <= cap; ++n) {
    tail = tail_after(n);
    n_terms = n;
    if (tail <= 1e-3 * tol) break;
  }

  CompensatedComplexSum first, dual;
  double dual_abs = 0.0;
  CompensatedSum rounding;
  const auto lam = table_->lambdas();
  const auto ln = table_->log_n();
  for (std::int64_t n = 1; n <= n_terms; ++n) {
    const double l = lam[static_cast<std::size_t>(n)];
    const double logn = ln[static_cast<std::size_t>(n)];
    const double nd = static_cast<double>(n);
    const RegularizedGamma q1 = regularized_upper_gamma_est(w, 2.0 * kPi * nd * y0);
    const RegularizedGamma q2 = regularized_upper_gamma_est(wp, 2.0 * kPi * nd * y1);
    const double c1 = std::abs(l) * std::exp(-sigma * logn);
    const double c2 = std::abs(l) * std::exp((sigma - 1.0) * logn);
    const cplx term1 = l * std::exp(-s * logn) * q1.value;
    const cplx term2 = l * std::exp((s - 1.0) * logn) * q2.value;
    first.add(term1);
    dual.add(term2);
    dual_abs += std::abs(term2);
    rounding.add(32.0 * kEps * (std::abs(term1) + chi_abs * std::abs(term2)) +
                 c1 * q1.error + chi_abs * c2 * q2.error);
  }
  const cplx dual_sum = dual.value();
  EvalResult r;
  r.method = EvalMethod::exact;
  r.value = first.value() + chi * dual_sum;
  r.terms_used = n_terms;
  r.est_error = tail + rounding.value() + kChiRelError * chi_abs * dual_abs;
  if (!(r.est_error < tol)) {
    throw NumericError("exact_eval could not reach tolerance " + fmt_g(tol) + " at s = " + fmt_s(s) +
                           " (bound " + fmt_g(r.est_error) + " with " + std::to_string(n_terms) +
                           " terms)",
                       r.value, r.est_error);
  }
  return r;
}

CompletedValue LFunction::completed(cplx s, double tol, double split_scale) const {
  const EvalResult r = exact_eval(s, tol, split_scale);
  const cplx g = log_gamma_factor(s, weight());
  const double scale = std::exp(g.real());
  return {std::exp(g) * r.value, scale * r.est_error};
}

ZValue LFunction::z_function(double t, PhaseState* state, double tol) const {
  if (!(t >= 0.0 && t <= kMaxHeight)) throw DomainError("z_function needs 0 <= t <= 200");
  ZValue z;
  z.theta = state ? theta_f(t, weight(), *state) : theta_direct(t, weight());
  z.eval = exact_eval(cplx(0.5, t), tol);
  const cplx rot = std::polar(1.0, z.theta) * z.eval.value;
  z.value = rot.real();
  z.discarded_imag = rot.imag();
  return z;
}

}  // namespace lfd
