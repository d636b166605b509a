#include <cmath>

#include "lfd/kernels.hpp"
#include "lfd/summation.hpp"

namespace lfd::kernels {

std::complex<double> dirichlet_sum_scalar(std::span<const double> c, std::span<const double> log_n,
                                          double sigma, double t) {
  CompensatedSum re, im;
  const std::size_t n = std::min(c.size(), log_n.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = c[i] * std::exp(-sigma * log_n[i]);
    const double arg = t * log_n[i];
    re.add(mag * std::cos(arg));
    im.add(-mag * std::sin(arg));
  }
  return {re.value(), im.value()};
}

}  // namespace lfd::kernels
