#include "modular_series.hpp"

#include <bit>
#include <stdexcept>

namespace lfd::detail {

MontgomeryField::MontgomeryField(u64 p) : p_(p) {
  u64 inv = p;  // Newton iteration for p^{-1} mod 2^64; p odd
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
  pinv_ = ~inv + 1;
  const u128 minus_p = ~static_cast<u128>(0) - p + 1;  // 2^128 - p
  r2_ = static_cast<u64>(minus_p % p);
  one_ = to_mont(1);
}

u64 MontgomeryField::pow(u64 base_mont, u64 e) const noexcept {
  u64 result = one_;
  while (e != 0) {
    if (e & 1) result = mul(result, base_mont);
    base_mont = mul(base_mont, base_mont);
    e >>= 1;
  }
  return result;
}

ModularSeries::ModularSeries(const NttPrime& prime) : prime_(prime), field_(prime.modulus) {}

u64 ModularSeries::from_signed(std::int64_t v) const noexcept {
  const u64 p = field_.modulus();
  u64 r = v >= 0 ? static_cast<u64>(v) % p
                 : (p - static_cast<u64>(-(v + 1)) % p - 1) % p;
  return field_.to_mont(r);
}

void ModularSeries::transform(std::vector<u64>& a, bool inverse) const {
  const std::size_t n = a.size();
  const int log_n = std::countr_zero(n);
  if (log_n > kNttMaxLog) throw std::length_error("NTT length exceeds prime's 2-adic order");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const u64 p = field_.modulus();
  const u64 g = field_.to_mont(prime_.generator);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = field_.pow(g, (p - 1) / len);
    if (inverse) w = field_.pow(w, p - 2);
    std::vector<u64> roots(len / 2);
    roots[0] = field_.one();
    for (std::size_t k = 1; k < len / 2; ++k) roots[k] = field_.mul(roots[k - 1], w);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const u64 u = a[i + k];
        const u64 v = field_.mul(a[i + k + len / 2], roots[k]);
        a[i + k] = field_.add(u, v);
        a[i + k + len / 2] = field_.sub(u, v);
      }
    }
  }
  if (inverse) {
    const u64 n_inv = field_.pow(field_.to_mont(n % p), p - 2);
    for (auto& x : a) x = field_.mul(x, n_inv);
  }
}

std::vector<u64> ModularSeries::multiply(const std::vector<u64>& a, const std::vector<u64>& b,
                                         std::size_t terms) const {
  const std::size_t la = std::min(a.size(), terms);
  const std::size_t lb = std::min(b.size(), terms);
  if (la == 0 || lb == 0) return std::vector<u64>(terms, 0);
  const std::size_t n = std::bit_ceil(la + lb - 1);
  std::vector<u64> fa(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(la));
  std::vector<u64> fb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(lb));
  fa.resize(n, 0);
  fb.resize(n, 0);
  transform(fa, false);
  transform(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = field_.mul(fa[i], fb[i]);
  transform(fa, true);
  fa.resize(terms, 0);
  return fa;
}

std::vector<u64> ModularSeries::square(const std::vector<u64>& a, std::size_t terms) const {
  const std::size_t la = std::min(a.size(), terms);
  if (la == 0) return std::vector<u64>(terms, 0);
  const std::size_t n = std::bit_ceil(2 * la - 1);
  std::vector<u64> fa(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(la));
  fa.resize(n, 0);
  transform(fa, false);
  for (auto& x : fa) x = field_.mul(x, x);
  transform(fa, true);
  fa.resize(terms, 0);
  return fa;
}

}  // namespace lfd::detail
