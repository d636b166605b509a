#pragma once

// Numeric validators for the mean-value and exponential-sum lemmas: a
// discrete mean value inequality, the Dirichlet-polynomial mean value
// bound, sum versus integral for small |f'|, and the stationary-phase
// transform. Each check evaluates both sides and reports the implied
// constant next to its frozen cap.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lfd {

using cplx = std::complex<double>;

/// sum_{N < n <= N1} a(n) n^{it}; a[i] is the coefficient of n = first + i.
struct DirichletPoly {
  std::int64_t first = 1;
  std::vector<cplx> a;

  cplx operator()(double t) const;
  cplx derivative(double t) const;
  /// Closed form of int_{t0}^{t1} |S(t)|^2 dt (diagonal plus pairwise
  /// (m/n)^{it} terms), and the same for S'.
  double mean_square(double t0, double t1) const;
  double mean_square_derivative(double t0, double t1) const;
  double coefficient_energy() const;  // sum |a(n)|^2
};

/// Coefficients a(n) for N < n <= N1 (N, N1 real).
DirichletPoly make_poly(double N, double N1, const std::function<cplx(std::int64_t)>& a);

struct DiscreteMeanReport {
  double lhs = 0.0;  // sum_r |S(t_r)|^2
  double rhs = 0.0;  // I/d + 2 sqrt(I I')
  double d = 0.0;
  double window_lo = 0.0, window_hi = 0.0;
  double integral = 0.0, integral_derivative = 0.0;
  double quad_deviation = 0.0;  // max relative gap to adaptive quadrature
  bool pass = false;
};

/// sum_r |S(t_r)|^2 <= (1/d) int |S|^2 + 2 sqrt(int |S|^2) sqrt(int |S'|^2)
/// with both integrals over [t_0 - d/2, t_k + d/2]; d = 1 for a single
/// point. Throws PreconditionError unless the points strictly increase.
DiscreteMeanReport discrete_mean_check(const std::vector<double>& points, const DirichletPoly& S);

inline constexpr double kMeanValueCap = 10.0;

struct MeanValueReport {
  double integral = 0.0;  // int_X^{X1} |S|^2 closed form
  double quadrature = 0.0;
  double scale = 0.0;  // (X + N log N) sum |a|^2
  double ratio = 0.0;
  bool pass = false;  // ratio <= 10
};

/// int_X^{X1} |sum_{N<n<=N1} a(n) n^{it}|^2 dt against (X + N log N) sum |a|^2.
/// Throws DomainError unless 0 < X < X1 <= 2X and 3 <= N < N1 <= 2N.
MeanValueReport mean_value_check(const DirichletPoly& S, double N, double N1, double X, double X1);

/// Largest ratio over random trials with N <= 256, X <= 512 and
/// coefficients uniform on the unit circle.
double mean_value_sweep(int trials, std::uint64_t seed);

/// Amplitude phi with phi', and phase f with f', ..., f''''.
struct PhaseInstance {
  std::string name;
  std::function<double(double)> phi, dphi;
  std::array<std::function<double(double)>, 5> f;
  double a = 0.0, b = 0.0;
  std::map<std::string, double> params;

  double param(const std::string& key) const;
};

/// Phase families: linear f = p x + q, log f = c log x,
/// quadratic f = x^2/(2A) + p x. Amplitudes: const phi = h, power
/// phi = h x^e.
PhaseInstance linear_phase(double slope, double offset);
PhaseInstance log_phase(double c);
PhaseInstance quadratic_phase(double A, double slope);
void set_amplitude(PhaseInstance& inst, double h, double exponent = 0.0);

/// Largest relative gap between each derivative callable and a central
/// difference of the one below it, over 20 points of [a, b].
double derivative_consistency(const PhaseInstance& inst);

struct SumIntegralReport {
  cplx sum, integral;
  double difference = 0.0;
  double kappa = 0.0;  // difference / H
  double max_fprime = 0.0;
  double amplitude_slope = 0.0;  // max |phi'| U / H
  double quad_error = 0.0;
  std::optional<double> closed_form_deviation;  // linear phase, const amplitude
  bool pass = false;
};

/// sum_{a<x<=b} phi(x) e^{2 pi i f(x)} against the integral over [a, b].
/// Preconditions sampled on 200 points: |f'| <= C < 1, f'' of one sign,
/// b - a <= U, |phi| <= H. Params: H, U, C, and optionally kappa_cap.
/// Throws PreconditionError when sampling fails.
SumIntegralReport sum_vs_integral_check(const PhaseInstance& inst);

inline constexpr double kIntegerGuard = 1e-9;

struct StationaryPhaseReport {
  cplx direct, transformed;
  double residual = 0.0;
  double scale = 0.0;  // H (T(a) + T(b) + log(f'(b) - f'(a) + 2))
  double kappa = 0.0;
  std::int64_t n_lo = 0, n_hi = -1;
  double newton_residual = 0.0;  // max |f'(x_n) - n|
  bool pass = false;
};

/// Stationary-phase transform: x_n from f'(x_n) = n by safeguarded Newton,
/// Z(n) = e^{i pi/4} phi(x_n) f''(x_n)^{-1/2} e^{2 pi i (f(x_n) - n x_n)}, weights
/// 1/2 at integer endpoints f'(a), f'(b) (within 1e-9). Params: H, A and
/// optionally kappa_cap; requires A f'' in [0.1, 10] and A >= 1 on samples
/// (PreconditionError). Throws NumericError if some |f'(x_n) - n| > 1e-12.
StationaryPhaseReport stationary_phase_check(const PhaseInstance& inst);

struct DualSumReport {
  cplx direct;       // sum_{L1 < l <= L0} l^{-iV}
  cplx transformed;  // e^{i(pi/4 - V log(V/(2 pi e)))} sqrt(V/2pi) sum_{N1<=n<=N2} n^{iV}/n
  cplx lemma_sum;    // the same transform assembled from stationary_phase_check
  double residual = 0.0;
  double scale = 0.0;  // L1 / sqrt(V)
  double kappa = 0.0;
  std::int64_t n_lo = 0, n_hi = -1;
  bool pass = false;
};

/// The dual-sum identity for f(x) = -(V/2pi) log x on (L1, L0], with
/// N1 = V/(2 pi L0), N2 = V/(2 pi L1). Requires 2V > pi L1.
DualSumReport dual_sum_check(double V, double L1, double L0, std::optional<double> kappa_cap = {});

// Corpus of validator instances.

struct LemmaResult {
  std::string name;
  std::string check;   // discrete_mean, mean_value, sum_integral, stationary_phase, dual_sum
  std::string family;  // phase family or coefficient family
  double measured = 0.0;  // ratio or kappa
  std::optional<double> cap;
  double lhs = 0.0, rhs = 0.0;
  double quad_deviation = 0.0;
  bool pass = false;
  bool capped = false;  // false: reported only
};

struct CorpusEntry {
  std::string name;
  std::map<std::string, std::string> fields;
};

/// Plain-text corpus: one instance per line as key=value tokens; '#'
/// starts a comment. Throws PreconditionError on malformed lines.
std::vector<CorpusEntry> parse_corpus(std::istream& in);

/// The corpus shipped with the library.
const char* default_corpus();

inline constexpr double kQuadAgreement = 1e-8;

/// Runs one instance. Zero-ordinate points for the discrete mean check
/// (points=zeros:T0:T1) come from scan_zeros on L_Delta.
LemmaResult run_entry(const CorpusEntry& entry);

std::vector<LemmaResult> run_corpus(const std::vector<CorpusEntry>& entries);

}  // namespace lfd
