#include "lfd/coefficients.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <string>

#include "lfd/errors.hpp"
#include "lfd/summation.hpp"
#include "modular_series.hpp"

namespace lfd {

namespace {

constexpr std::array<int, 6> kWeights = {12, 16, 18, 20, 22, 26};

// E_j = 1 + c_j sum sigma_{j-1}(n) q^n with c_j = -2j / B_j.
std::int64_t eisenstein_constant(int j) {
  switch (j) {
    case 4: return 240;
    case 6: return -504;
    case 8: return 480;
    case 10: return -264;
    case 14: return -24;
    default: throw DomainError("no Eisenstein series of weight " + std::to_string(j));
  }
}

// q-expansion of prod_{m>=1} (1 - q^m) = sum_k (-1)^k q^{k(3k-1)/2}, k in Z.
std::vector<detail::u64> euler_product(const detail::ModularSeries& ring, std::size_t terms) {
  std::vector<detail::u64> p(terms, 0);
  const auto one = ring.from_signed(1);
  const auto minus_one = ring.from_signed(-1);
  p[0] = one;
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t e1 = k * (3 * k - 1) / 2;
    const std::int64_t e2 = k * (3 * k + 1) / 2;
    if (e1 >= static_cast<std::int64_t>(terms)) break;
    const auto sign = (k % 2 == 0) ? one : minus_one;
    p[static_cast<std::size_t>(e1)] = sign;
    if (e2 < static_cast<std::int64_t>(terms)) p[static_cast<std::size_t>(e2)] = sign;
  }
  return p;
}

// Coefficients of q^0..q^{terms-1} in prod (1 - q^m)^24.
std::vector<detail::u64> eta24(const detail::ModularSeries& ring, std::size_t terms) {
  const auto p1 = euler_product(ring, terms);
  const auto p2 = ring.square(p1, terms);
  const auto p4 = ring.square(p2, terms);
  const auto p8 = ring.square(p4, terms);
  const auto p16 = ring.square(p8, terms);
  return ring.multiply(p16, p8, terms);
}

std::vector<detail::u64> eisenstein(const detail::ModularSeries& ring, int j, std::size_t terms) {
  const auto& fld = ring.field();
  std::vector<detail::u64> e(terms, 0);
  if (terms == 0) return e;
  e[0] = fld.one();
  if (j == 0) return e;
  for (std::size_t d = 1; d < terms; ++d) {
    const auto dp = fld.pow(fld.to_mont(d), static_cast<detail::u64>(j - 1));
    for (std::size_t m = d; m < terms; m += d) e[m] = fld.add(e[m], dp);
  }
  const auto c = ring.from_signed(eisenstein_constant(j));
  for (std::size_t n = 1; n < terms; ++n) e[n] = fld.mul(e[n], c);
  return e;
}

// Residues of a_f(1..n_max) modulo one prime (plain form, index n-1).
std::vector<detail::u64> residues(const EigenformSpec& spec, std::int64_t n_max,
                                  const detail::NttPrime& prime) {
  const detail::ModularSeries ring(prime);
  const auto terms = static_cast<std::size_t>(n_max);
  auto series = eta24(ring, terms);
  const int j = spec.weight() - 12;
  if (j != 0) series = ring.multiply(series, eisenstein(ring, j, terms), terms);
  for (auto& v : series) v = ring.field().from_mont(v);
  return series;
}

detail::u64 mulmod(detail::u64 a, detail::u64 b, detail::u64 m) {
  return static_cast<detail::u64>(static_cast<detail::u128>(a) * b % m);
}

detail::u64 powmod(detail::u64 a, detail::u64 e, detail::u64 m) {
  detail::u64 r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Largest n <= n_max whose Deligne bound fits in the symmetric range of
// the product of the first `moduli` primes, or 0 if n = 1 already fails.
std::int64_t capacity_limit(const EigenformSpec& spec, std::int64_t n_max, int moduli,
                            std::span<const std::int64_t> d) {
  double log2_m = 0.0;
  for (int i = 0; i < moduli; ++i) log2_m += std::log2(static_cast<double>(detail::kNttPrimes[i].modulus));
  const double slope = spec.half_weight();
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double bits = std::log2(static_cast<double>(d[static_cast<std::size_t>(n)])) +
                        slope * std::log2(static_cast<double>(n));
    if (bits + 1.0 + 1e-9 >= log2_m) return n - 1;
  }
  return n_max;
}

}  // namespace

EigenformSpec::EigenformSpec(int weight) : weight_(weight) {
  if (!is_supported(weight)) {
    throw DomainError("weight " + std::to_string(weight) +
                      " does not give a one-dimensional cusp form space; supported: 12, 16, 18, 20, 22, 26");
  }
}

bool EigenformSpec::is_supported(int weight) noexcept {
  for (int w : kWeights)
    if (w == weight) return true;
  return false;
}

std::span<const int> EigenformSpec::supported_weights() noexcept { return kWeights; }

namespace detail {

std::vector<ExactInt> eigenform_coeffs_with_moduli(const EigenformSpec& spec, std::int64_t n_max,
                                                   int max_moduli) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  if (n_max > kMaxCoefficients) {
    throw PreconditionError("n_max " + std::to_string(n_max) + " exceeds the cap " +
                            std::to_string(kMaxCoefficients));
  }
  if (max_moduli < 1 || max_moduli > kMaxModuli) throw PreconditionError("modulus budget out of range");

  const auto d = divisor_counts(n_max, 2);
  int moduli = 1;
  while (moduli < max_moduli && capacity_limit(spec, n_max, moduli, d) < n_max) ++moduli;
  const std::int64_t limit = capacity_limit(spec, n_max, moduli, d);
  if (limit < n_max) {
    throw OverflowError("exact coefficient range exhausted at n = " + std::to_string(limit + 1) +
                            " for weight " + std::to_string(spec.weight()),
                        limit + 1);
  }

  std::vector<std::vector<u64>> res;
  res.reserve(static_cast<std::size_t>(moduli));
  for (int i = 0; i < moduli; ++i) res.push_back(residues(spec, n_max, kNttPrimes[i]));

  // Garner mixed-radix digits, then Horner evaluation in the wide type.
  std::array<std::array<u64, kMaxModuli>, kMaxModuli> inv{};
  for (int i = 0; i < moduli; ++i)
    for (int j = 0; j < i; ++j)
      inv[i][j] = powmod(kNttPrimes[j].modulus % kNttPrimes[i].modulus, kNttPrimes[i].modulus - 2,
                         kNttPrimes[i].modulus);

  ExactInt modulus = 1;
  for (int i = 0; i < moduli; ++i) modulus *= ExactInt(kNttPrimes[i].modulus);
  const ExactInt half = modulus / 2;

  std::vector<ExactInt> out(static_cast<std::size_t>(n_max) + 1, ExactInt(0));
  std::array<u64, kMaxModuli> digit{};
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const auto idx = static_cast<std::size_t>(n - 1);
    for (int i = 0; i < moduli; ++i) {
      const u64 pi = kNttPrimes[i].modulus;
      u64 x = res[i][idx];
      for (int j = 0; j < i; ++j) {
        x = (x + pi - digit[j] % pi) % pi;
        x = mulmod(x, inv[i][j], pi);
      }
      digit[i] = x;
    }
    ExactInt value = ExactInt(digit[moduli - 1]);
    for (int i = moduli - 2; i >= 0; --i) value = value * ExactInt(kNttPrimes[i].modulus) + ExactInt(digit[i]);
    if (value > half) value -= modulus;
    out[static_cast<std::size_t>(n)] = value;
  }
  return out;
}

}  // namespace detail

std::vector<ExactInt> eigenform_coeffs(const EigenformSpec& spec, std::int64_t n_max) {
  return detail::eigenform_coeffs_with_moduli(spec, n_max, detail::kMaxModuli);
}

std::vector<ExactInt> tau_series(std::int64_t n_max) {
  return eigenform_coeffs(EigenformSpec(12), n_max);
}

std::vector<double> normalize(std::span<const ExactInt> a, int weight) {
  const double h = 0.5 * (weight - 1);
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t n = 1; n < a.size(); ++n) {
    out[n] = a[n].convert_to<double>() * std::pow(static_cast<double>(n), -h);
  }
  return out;
}

std::vector<std::int32_t> smallest_prime_factors(std::int64_t n_max) {
  if (n_max < 0) throw PreconditionError("n_max must be nonnegative");
  std::vector<std::int32_t> spf(static_cast<std::size_t>(n_max) + 1, 0);
  for (std::int64_t i = 2; i <= n_max; ++i) {
    if (spf[static_cast<std::size_t>(i)] != 0) continue;
    for (std::int64_t m = i; m <= n_max; m += i)
      if (spf[static_cast<std::size_t>(m)] == 0) spf[static_cast<std::size_t>(m)] = static_cast<std::int32_t>(i);
  }
  return spf;
}

std::vector<double> mu_coeffs(std::span<const double> lambda) {
  const auto n_max = static_cast<std::int64_t>(lambda.size()) - 1;
  std::vector<double> mu(lambda.size(), 0.0);
  if (n_max < 1) return mu;
  const auto spf = smallest_prime_factors(n_max);
  mu[1] = 1.0;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const std::int64_t p = spf[static_cast<std::size_t>(n)];
    std::int64_t rest = n;
    int r = 0;
    while (rest % p == 0) {
      rest /= p;
      ++r;
    }
    double local = 0.0;
    if (r == 1) local = -lambda[static_cast<std::size_t>(p)];
    else if (r == 2) local = 1.0;
    mu[static_cast<std::size_t>(n)] = local * mu[static_cast<std::size_t>(rest)];
  }
  return mu;
}

std::vector<std::int64_t> divisor_counts(std::int64_t n_max, int order) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  if (order != 2 && order != 4) throw PreconditionError("divisor_counts supports order 2 or 4");
  const auto size = static_cast<std::size_t>(n_max) + 1;
  std::vector<std::int64_t> d(size, 0);
  for (std::size_t i = 1; i < size; ++i)
    for (std::size_t m = i; m < size; m += i) ++d[m];
  if (order == 2) return d;
  std::vector<std::int64_t> d4(size, 0);
  for (std::size_t i = 1; i < size; ++i)
    for (std::size_t m = i, j = 1; m < size; m += i, ++j) d4[m] += d[i] * d[j];
  return d4;
}

std::vector<std::int64_t> divisor_counts_general(std::int64_t n_max, int order) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  if (order < 1) throw PreconditionError("order must be >= 1");
  const auto size = static_cast<std::size_t>(n_max) + 1;
  std::vector<std::int64_t> cur(size, 1);
  cur[0] = 0;
  for (int step = 1; step < order; ++step) {
    std::vector<std::int64_t> next(size, 0);
    for (std::size_t i = 1; i < size; ++i)
      for (std::size_t m = i; m < size; m += i) next[m] += cur[i];
    cur.swap(next);
  }
  return cur;
}

std::vector<double> dirichlet_convolve(std::span<const double> f, std::span<const double> g,
                                       std::int64_t n_max) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  const auto size = static_cast<std::size_t>(n_max) + 1;
  if (f.size() < size || g.size() < size) throw PreconditionError("convolution inputs shorter than n_max");
  std::vector<CompensatedSum> acc(size);
  for (std::size_t i = 1; i < size; ++i) {
    if (f[i] == 0.0) continue;
    for (std::size_t m = i, j = 1; m < size; m += i, ++j) acc[m].add(f[i] * g[j]);
  }
  std::vector<double> out(size, 0.0);
  for (std::size_t n = 1; n < size; ++n) out[n] = acc[n].value();
  return out;
}

CoefficientTable::CoefficientTable(EigenformSpec spec, std::int64_t n_max)
    : spec_(spec), n_max_(n_max), a_(eigenform_coeffs(spec, n_max)) {
  lambda_ = normalize(a_, spec_.weight());
  mu_ = mu_coeffs(lambda_);
  log_n_.assign(a_.size(), 0.0);
  for (std::size_t n = 1; n < log_n_.size(); ++n) log_n_[n] = std::log(static_cast<double>(n));
}

std::shared_ptr<const CoefficientTable> CoefficientTable::get(int weight, std::int64_t n_max) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::int64_t>, std::shared_ptr<const CoefficientTable>> cache;
  const EigenformSpec spec(weight);
  std::lock_guard lock(mutex);
  auto& slot = cache[{weight, n_max}];
  if (!slot) slot = std::make_shared<const CoefficientTable>(spec, n_max);
  return slot;
}

void CoefficientTable::write_csv(std::ostream& os) const {
  os << "n,a,lambda,mu\n";
  char buf[64];
  for (std::int64_t n = 1; n <= n_max_; ++n) {
    os << n << ',' << a(n).str() << ',';
    std::snprintf(buf, sizeof buf, "%.15g", lambda(n));
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.15g", mu(n) + 0.0);
    os << buf << '\n';
  }
}

}  // namespace lfd
