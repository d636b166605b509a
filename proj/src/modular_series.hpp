#pragma once

// Truncated power series over Z/pZ for a handful of 62-bit NTT primes, and
// Chinese remaindering back to exact integers.

#include <array>
#include <cstdint>
#include <vector>

namespace lfd::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct NttPrime {
  u64 modulus;
  u64 generator;  // primitive root
};

inline constexpr int kMaxModuli = 4;

// p = c * 2^23 + 1, just below 2^62.
inline constexpr std::array<NttPrime, kMaxModuli> kNttPrimes = {{
    {4611686018326724609ULL, 3},
    {4611686018309947393ULL, 5},
    {4611686018058289153ULL, 5},
    {4611686017974403073ULL, 3},
}};

inline constexpr int kNttMaxLog = 23;

/// Montgomery arithmetic modulo an odd p < 2^62 with R = 2^64.
class MontgomeryField {
 public:
  explicit MontgomeryField(u64 p);

  u64 modulus() const noexcept { return p_; }
  u64 to_mont(u64 a) const noexcept { return reduce(static_cast<u128>(a % p_) * r2_); }
  u64 from_mont(u64 a) const noexcept { return reduce(a); }
  u64 mul(u64 a, u64 b) const noexcept { return reduce(static_cast<u128>(a) * b); }
  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  u64 pow(u64 base_mont, u64 e) const noexcept;
  u64 one() const noexcept { return one_; }

 private:
  u64 reduce(u128 t) const noexcept {
    const u64 m = static_cast<u64>(t) * pinv_;
    const u64 r = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
    return r >= p_ ? r - p_ : r;
  }

  u64 p_;
  u64 pinv_;  // -p^{-1} mod 2^64
  u64 r2_;    // 2^128 mod p
  u64 one_;
};

/// Series arithmetic in Montgomery form for one prime.
class ModularSeries {
 public:
  explicit ModularSeries(const NttPrime& prime);

  const MontgomeryField& field() const noexcept { return field_; }

  /// (a * b) truncated to `terms` coefficients. Inputs in Montgomery form.
  std::vector<u64> multiply(const std::vector<u64>& a, const std::vector<u64>& b,
                            std::size_t terms) const;
  std::vector<u64> square(const std::vector<u64>& a, std::size_t terms) const;

  /// Signed integer to Montgomery form.
  u64 from_signed(std::int64_t v) const noexcept;

 private:
  void transform(std::vector<u64>& a, bool inverse) const;

  NttPrime prime_;
  MontgomeryField field_;
};

}  // namespace lfd::detail
