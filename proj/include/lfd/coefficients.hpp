#pragma once

// Fourier coefficients of the level-one normalized Hecke eigenforms of
// weights 12, 16, 18, 20, 22 and 26, plus the arithmetic sequences derived
// from them.
//
// Sequences indexed by n are stored 1-based: element 0 is a zero placeholder
// and element n holds the value at n.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lfd {

/// Signed exact integer wide enough for a_f(n), n <= 1e5, at every
/// supported weight (|a_f(n)| < 2^217 there). Overflow throws.
using ExactInt = boost::multiprecision::checked_int256_t;

inline constexpr std::int64_t kMaxCoefficients = 100000;

class EigenformSpec {
 public:
  /// Throws DomainError unless dim S_k = 1.
  explicit EigenformSpec(int weight);

  static bool is_supported(int weight) noexcept;
  static std::span<const int> supported_weights() noexcept;

  int weight() const noexcept { return weight_; }
  /// (k - 1) / 2, the shift between the analytic and arithmetic normalizations.
  double half_weight() const noexcept { return 0.5 * (weight_ - 1); }
  /// (-1)^{k/2}.
  int root_number() const noexcept { return (weight_ / 2) % 2 == 0 ? 1 : -1; }

  friend bool operator==(const EigenformSpec&, const EigenformSpec&) = default;

 private:
  int weight_;
};

/// Ramanujan tau(1..n_max): coefficients of q * prod (1 - q^m)^24.
std::vector<ExactInt> tau_series(std::int64_t n_max);

/// a_f(1..n_max) for the unique normalized eigenform of the given weight,
/// built as Delta * E_{k-12}.
std::vector<ExactInt> eigenform_coeffs(const EigenformSpec& spec, std::int64_t n_max);

/// lambda_f(n) = a_f(n) n^{-(k-1)/2} in binary64.
std::vector<double> normalize(std::span<const ExactInt> a, int weight);

/// Dirichlet inverse of lambda_f, built multiplicatively from prime data:
/// mu(p) = -lambda(p), mu(p^2) = 1, mu(p^r) = 0 for r >= 3.
std::vector<double> mu_coeffs(std::span<const double> lambda);

/// d(n) (order 2) or d_4(n) (order 4) for n <= n_max.
std::vector<std::int64_t> divisor_counts(std::int64_t n_max, int order);

/// d_j(n) for any j >= 1 by iterated Dirichlet convolution with 1.
std::vector<std::int64_t> divisor_counts_general(std::int64_t n_max, int order);

/// spf[n] = smallest prime factor of n (spf[0] = spf[1] = 0).
std::vector<std::int32_t> smallest_prime_factors(std::int64_t n_max);

/// (f * g)(n) = sum_{d | n} f(d) g(n/d) for n <= n_max, compensated.
std::vector<double> dirichlet_convolve(std::span<const double> f, std::span<const double> g,
                                       std::int64_t n_max);

/// Immutable, memoized coefficient data for one eigenform.
class CoefficientTable {
 public:
  CoefficientTable(EigenformSpec spec, std::int64_t n_max);

  /// Shared instance per (weight, n_max). Thread-safe.
  static std::shared_ptr<const CoefficientTable> get(int weight, std::int64_t n_max);

  const EigenformSpec& spec() const noexcept { return spec_; }
  int weight() const noexcept { return spec_.weight(); }
  std::int64_t n_max() const noexcept { return n_max_; }

  const ExactInt& a(std::int64_t n) const { return a_.at(static_cast<std::size_t>(n)); }
  double lambda(std::int64_t n) const { return lambda_.at(static_cast<std::size_t>(n)); }
  double mu(std::int64_t n) const { return mu_.at(static_cast<std::size_t>(n)); }

  std::span<const ExactInt> exact() const noexcept { return a_; }
  std::span<const double> lambdas() const noexcept { return lambda_; }
  std::span<const double> mus() const noexcept { return mu_; }
  /// log n, 1-based like the rest.
  std::span<const double> log_n() const noexcept { return log_n_; }

  /// CSV with header `n,a,lambda,mu`; `a` as an exact decimal string.
  void write_csv(std::ostream& os) const;

 private:
  EigenformSpec spec_;
  std::int64_t n_max_;
  std::vector<ExactInt> a_;
  std::vector<double> lambda_;
  std::vector<double> mu_;
  std::vector<double> log_n_;
};

namespace detail {

/// Modular construction with an explicit modulus budget; the public entry
/// points use the full budget. Throws OverflowError naming the first n
/// whose Deligne bound exceeds the CRT capacity.
std::vector<ExactInt> eigenform_coeffs_with_moduli(const EigenformSpec& spec,
                                                   std::int64_t n_max, int max_moduli);

}  // namespace detail

}  // namespace lfd
