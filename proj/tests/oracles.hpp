#pragma once

// Independent reference computations shared by the test binaries. Nothing
// here calls into the library's fast paths.

#include <cstdint>
#include <vector>

namespace lfd::testing {

using u128 = unsigned __int128;
using i128 = __int128;

// prod_{m=1}^{N-1} (1 - q^m)^24 through q^{N-1} by schoolbook updates, in
// Z/2^128. Every a_f(n) we compare against has |a| < 2^127, so the signed
// reinterpretation of the wrapped result is exact.
inline std::vector<u128> naive_eta24(std::size_t terms) {
  std::vector<u128> c(terms, 0);
  c[0] = 1;
  for (std::size_t m = 1; m < terms; ++m)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = terms - 1; i >= m; --i) c[i] -= c[i - m];
  return c;
}

inline std::vector<u128> naive_eisenstein(int j, std::size_t terms) {
  std::vector<u128> e(terms, 0);
  e[0] = 1;
  if (j == 0) return e;
  i128 constant = 0;
  switch (j) {
    case 4: constant = 240; break;
    case 6: constant = -504; break;
    case 8: constant = 480; break;
    case 10: constant = -264; break;
    case 14: constant = -24; break;
  }
  for (std::size_t n = 1; n < terms; ++n) {
    u128 sigma = 0;
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      u128 pw = 1;
      for (int r = 0; r < j - 1; ++r) pw *= static_cast<u128>(d);
      sigma += pw;
    }
    e[n] = sigma * static_cast<u128>(constant);
  }
  return e;
}

// a_f(1..n_max) (index n) for weight k, exact while |a_f(n)| < 2^127.
inline std::vector<i128> naive_eigenform(int k, std::size_t n_max) {
  const auto eta = naive_eta24(n_max);
  const auto e = naive_eisenstein(k - 12, n_max);
  std::vector<i128> out(n_max + 1, 0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    u128 acc = 0;
    // q * eta24 * E: coefficient of q^n is sum_{i+j=n-1} eta[i] e[j].
    for (std::size_t i = 0; i < n; ++i) acc += eta[i] * e[n - 1 - i];
    out[n] = static_cast<i128>(acc);
  }
  return out;
}

}  // namespace lfd::testing
