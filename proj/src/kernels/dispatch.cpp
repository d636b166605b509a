#include <atomic>
#include <stdexcept>

#include "lfd/kernels.hpp"

namespace lfd::kernels {

#ifdef LFD_HAVE_AVX2_KERNEL
namespace detail {
std::complex<double> dirichlet_sum_avx2_impl(std::span<const double> c, std::span<const double> log_n,
                                             double sigma, double t);
}
#endif

namespace {

std::atomic<bool> g_force_scalar{false};

bool cpu_has_avx2() noexcept {
#if defined(LFD_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::scalar: break;
  }
  return "scalar";
}

bool avx2_available() noexcept {
  static const bool ok = cpu_has_avx2();
  return ok;
}

Isa active_isa() noexcept {
  if (g_force_scalar.load(std::memory_order_relaxed)) return Isa::scalar;
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

void force_scalar(bool on) noexcept { g_force_scalar.store(on, std::memory_order_relaxed); }

std::complex<double> dirichlet_sum_avx2(std::span<const double> c, std::span<const double> log_n,
                                        double sigma, double t) {
#ifdef LFD_HAVE_AVX2_KERNEL
  if (avx2_available()) return detail::dirichlet_sum_avx2_impl(c, log_n, sigma, t);
#endif
  (void)c, (void)log_n, (void)sigma, (void)t;
  throw std::logic_error("AVX2 kernel not available on this build or CPU");
}

std::complex<double> dirichlet_sum(std::span<const double> c, std::span<const double> log_n,
                                   double sigma, double t) {
  if (active_isa() == Isa::avx2) return dirichlet_sum_avx2(c, log_n, sigma, t);
  return dirichlet_sum_scalar(c, log_n, sigma, t);
}

}  // namespace lfd::kernels
