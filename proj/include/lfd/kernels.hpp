#pragma once

// Inner loop of every Dirichlet polynomial in the library:
//
//   sum_i c[i] * exp(-sigma * log_n[i]) * exp(-i t log_n[i])
//
// A scalar reference kernel and an AVX2+FMA kernel, chosen at runtime.
// Both use compensated (Neumaier) accumulation; the vector kernel keeps a
// compensation term per lane and folds lanes together at the end.

#include <complex>
#include <span>
#include <string_view>

namespace lfd::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// True when the AVX2 kernel was compiled in and the CPU supports AVX2+FMA.
bool avx2_available() noexcept;

/// ISA used by dirichlet_sum under the current override.
Isa active_isa() noexcept;

/// Pin dispatch to the scalar kernel (for testing and reproducibility
/// comparisons). Thread-safe.
void force_scalar(bool on) noexcept;

/// Precondition for all variants: c.size() == log_n.size(),
/// |sigma * log_n[i]| < 700.
std::complex<double> dirichlet_sum(std::span<const double> c, std::span<const double> log_n,
                                   double sigma, double t);

std::complex<double> dirichlet_sum_scalar(std::span<const double> c, std::span<const double> log_n,
                                          double sigma, double t);

/// Throws std::logic_error if the AVX2 kernel is unavailable.
std::complex<double> dirichlet_sum_avx2(std::span<const double> c, std::span<const double> log_n,
                                        double sigma, double t);

}  // namespace lfd::kernels
