#pragma once

// Mollifier apparatus on a zero window (T1/2, T1]: M_X, the convolution
// coefficients c_f(l), dyadic block sums S_nu(rho), the well-spaced zero
// set, power coefficients A_alpha(l) and the zero-density exponent table.

#include <cstdint>
#include <span>
#include <vector>

#include "lfd/coefficients.hpp"
#include "lfd/lfunction.hpp"
#include "lfd/zeros.hpp"

namespace lfd {

struct MollifierConfig {
  double T1 = 0.0;
  int delta = 1;
  double X = 1.0;  // T1^(1/delta)

  /// Throws DomainError unless T1 >= 4 and delta >= 1.
  static MollifierConfig make(double T1, int delta);
};

enum class BlockKind { c_block, product_block };

std::string_view kind_name(BlockKind k) noexcept;

/// c_block: lo < l <= hi. product_block: lo < m <= hi and n_lo < n <= n_hi.
struct DyadicBlock {
  double lo = 0.0, hi = 0.0;
  BlockKind kind = BlockKind::c_block;
  double n_lo = 0.0, n_hi = 0.0;
};

struct BlockSum {
  DyadicBlock block;
  cplx value;
};

/// sum_{m <= X} mu_f(m) m^{-s}. Throws PreconditionError if the table is
/// shorter than floor(X).
cplx mollifier_eval(const CoefficientTable& table, cplx s, const MollifierConfig& config);

/// c_f(l) = sum_{l = mn, m <= X, n <= y} mu_f(m) lambda_f(n) for
/// l = 0..floor(X y), index 0 unused.
std::vector<double> conv_coeffs(const CoefficientTable& table, const MollifierConfig& config, double y);

/// (Z, min(2Z, b)] for Z = a, 2a, 4a, ... covering (a, b]. Throws
/// DomainError unless 1 <= a < b.
std::vector<DyadicBlock> dyadic_blocks(double a, double b);

inline constexpr double kBlockCountCap = 2.0;  // D <= 2 (log T1)^2

struct BlockDecomposition {
  std::vector<BlockSum> sums;
  std::int64_t D = 0;
  double d_ratio = 0.0;  // D / (log T1)^2
  double abs_sum = 0.0;  // sum |S_nu|
  double margin = 0.0;   // abs_sum - 1/2
  cplx total;            // sum S_nu
  cplx mollifier;        // M_X(rho)
  cplx exact;            // L_f(rho) from exact_eval
  double exact_error = 0.0;
  double afe_error = 0.0;   // |afe - exact| at rho
  double residual = 0.0;    // |1 + total - L M|
  double allowance = 0.0;   // afe_error |M| + rounding slack
};

/// Every S_nu(rho) for rho in (T1/2, T1] with y = gamma / 2 pi: c-blocks
/// tile (X, X y]; product blocks pair the dyadic m-blocks of (1/2, X] with
/// the n-blocks of (1/2, y]. Also records the reconstruction residual
/// against L_f(rho) M_X(rho). Throws PreconditionError for gamma outside
/// the window and NumericError if D exceeds 2 (log T1)^2.
BlockDecomposition block_sums(const LFunction& L, const ZeroRecord& rho, const MollifierConfig& config);

struct SpacedSelection {
  std::vector<ZeroRecord> zeros;
  int n0 = 0;                // rank within each unit interval (1-based)
  int j0 = 0;                // parity of the unit intervals used
  int per_interval_max = 0;  // most zeros in any (T1/2 + m, T1/2 + m + 1]
  int C = 0;                 // 2 * per_interval_max, so |E| >= |input| / C
  bool identity = false;     // input already spaced and returned whole
};

/// Unit-interval and parity construction: for each rank n and parity j
/// take the n-th smallest ordinate in every interval (T1/2 + m, T1/2 + m + 1]
/// with m = j (mod 2), and keep the largest such class. Throws
/// PreconditionError for unsorted input or ordinates outside (T1/2, T1].
SpacedSelection select_spaced_zeros(const std::vector<ZeroRecord>& zeros, const MollifierConfig& config);

inline constexpr std::int64_t kPowerCoeffCap = 10'000'000;

/// A_alpha(l) = sum over l = l_1 ... l_alpha with L < l_i <= L' of
/// c(l_1) ... c(l_alpha), for l = 0..floor(L')^alpha. Throws
/// PreconditionError if c does not cover floor(L') or the output would
/// exceed 1e7 entries.
std::vector<double> power_coeffs(std::span<const double> c, double L, double Lp, int alpha);

/// 4(1 - sigma)/(3 - 2 sigma) for sigma <= 3/4, 2(1 - sigma)/sigma above.
double density_exponent(double sigma);

struct DensityRow {
  double sigma = 0.0;
  std::int64_t count = 0;  // N_f(sigma, T)
  double exponent = 0.0;
  double bound = 0.0;  // T^exponent
  bool consistent = false;
};

/// Rows (sigma, N_f(sigma, T), e(sigma), T^e(sigma), count <= bound).
/// N_f(1, T) = 0 without a contour. Throws DomainError unless every
/// sigma lies in [1/2, 1] and 0 < T <= 100.
std::vector<DensityRow> density_report(const LFunction& L, const std::vector<double>& sigmas, double T);

struct ZeroMargin {
  ZeroRecord rho;
  BlockDecomposition blocks;
  bool residual_ok = false;
  bool in_A = false;  // |S_nu0(rho)| >= 1/(2D)
  bool in_E = false;
};

struct MollifierRun {
  MollifierConfig config;
  std::vector<ZeroMargin> zeros;
  DyadicBlock nu0;  // block that maximizes #A_nu
  std::int64_t a_size = 0;
  SpacedSelection E;
  double min_margin = 0.0;
  double max_d_ratio = 0.0;
  bool all_residuals_ok = true;
};

/// Block sums at every zero of the window, the block nu0 maximizing
/// #{rho : |S_nu(rho)| >= 1/(2D)}, and the spaced subset of that class.
MollifierRun run_mollifier(const LFunction& L, const std::vector<ZeroRecord>& zeros, const MollifierConfig& config);

}  // namespace lfd
