#pragma once

// L_f(s) for a level-one eigenform, three ways: the Dirichlet series
// (Re s > 1), the sharp-cutoff approximate functional equation, and a
// convergent incomplete-gamma expansion used as the reference oracle.

#include <complex>
#include <cstdint>
#include <memory>
#include <string_view>

#include "lfd/coefficients.hpp"
#include "lfd/special_functions.hpp"

namespace lfd {

enum class EvalMethod { dirichlet, afe, exact };

std::string_view method_name(EvalMethod m) noexcept;

struct EvalResult {
  cplx value;
  EvalMethod method = EvalMethod::exact;
  double est_error = 0.0;
  std::int64_t terms_used = 0;
  /// True for afe: the error field is the scale |t|^{1/2 - sigma}, not a bound.
  bool heuristic = false;
};

struct ZValue {
  double value = 0.0;           // Re[e^{i theta} L(1/2 + it)]
  double discarded_imag = 0.0;  // Im of the same product
  double theta = 0.0;
  EvalResult eval;
};

struct CompletedValue {
  cplx value;          // Lambda_f(s) = (2pi)^{-w} Gamma(w) L_f(s)
  double bound = 0.0;  // est_error of the L evaluation in Lambda units
};

inline constexpr std::int64_t kDefaultTableSize = 10000;
inline constexpr double kMaxHeight = 200.0;
inline constexpr double kExactMinSigma = -2.0;
inline constexpr double kExactMaxSigma = 3.0;
inline constexpr std::int64_t kExactTermCap = 20000;

class LFunction {
 public:
  explicit LFunction(int weight, std::int64_t table_size = kDefaultTableSize);
  explicit LFunction(std::shared_ptr<const CoefficientTable> table);

  int weight() const noexcept { return table_->weight(); }
  const CoefficientTable& table() const noexcept { return *table_; }

  /// sum_{n <= n_terms} lambda(n) n^{-s}. est_error bounds the tail by
  /// sum_{n > N} d(n) n^{-sigma} <= sigma N^{1-sigma} [(log N + 1)/(sigma-1) + 1/(sigma-1)^2]
  /// plus a rounding allowance. Throws DomainError for Re s <= 1,
  /// PreconditionError if n_terms exceeds the table.
  EvalResult dirichlet_eval(cplx s, std::int64_t n_terms) const;

  /// Sharp-cutoff AFE with y = |t|/(2 pi) on both sums. Requires
  /// 0 <= Re s <= 1 and |t| >= 2 pi (DomainError otherwise).
  EvalResult afe_eval(cplx s) const;

  /// Incomplete-gamma expansion with the Mellin contour split at
  /// y0 = split_scale * exp(i phi):
  ///   L(s) = sum lambda(n) [n^{-s} Q(w, 2 pi n y0) + chi(s) n^{s-1} Q(w', 2 pi n / y0)].
  /// phi tilts the split point toward the oscillation so the terms do
  /// not cancel at large |t|. est_error = geometric tail bound plus a
  /// rounding allowance; absolute on L. Throws NumericError (carrying
  /// the best value and bound) when tol cannot be met.
  EvalResult exact_eval(cplx s, double tol = 1e-10, double split_scale = 1.0) const;

  /// Lambda_f(s) from exact_eval.
  CompletedValue completed(cplx s, double tol = 1e-10, double split_scale = 1.0) const;

  /// Z_f(t) from exact_eval on 0 <= t <= 200. With a state, the phase is
  /// tracked through theta_f; otherwise theta_direct is used.
  ZValue z_function(double t, PhaseState* state = nullptr, double tol = 1e-10) const;

 private:
  std::shared_ptr<const CoefficientTable> table_;
};

}  // namespace lfd
