#pragma once

// Zeros of L_f: sign changes of Z_f on the critical line and argument
// principle counts over rectangles in the strip.

#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

#include "lfd/lfunction.hpp"

namespace lfd {

enum class ZeroMethod { sign_change, contour };

std::string_view method_name(ZeroMethod m) noexcept;

struct ZeroRecord {
  double gamma = 0.0;
  double beta = 0.5;
  double radius = 0.0;  // half-width of the final bracket
  ZeroMethod method = ZeroMethod::sign_change;
};

struct RectCount {
  double sigma0 = 0.0;
  double t0 = 0.0, t1 = 0.0;  // t-edges actually used (after any nudge)
  std::int64_t count = 0;
  double winding_residual = 0.0;  // |W - round(W)|, W = total arg change / 2 pi
  double sigma_left = 0.0, sigma_right = 0.0;
  std::int64_t evaluations = 0;
};

inline constexpr double kZeroRadius = 1e-6;
inline constexpr double kWindingResidualCap = 0.1;
inline constexpr double kEdgeNudgeCap = 0.01;
inline constexpr double kEdgeSmallValue = 1e-6;
inline constexpr double kStripLeft = -0.3;
inline constexpr double kStripRight = 1.3;
inline constexpr double kRightEdge = 1.5;
inline constexpr double kLineOffset = 0.01;

/// Largest admissible scan step for a window ending at t1:
/// pi / log(max(t1, 10) / 2 pi).
double max_scan_step(double t1);

/// Sign changes of Z_f on the grid t0, t0 + step, ..., t1, each refined by
/// bisection to radius <= 1e-6. Grid values are evaluated in parallel and
/// the phase is tracked along the grid by theta_f. Throws
/// PreconditionError for a bad range or a step above max_scan_step(t1).
std::vector<ZeroRecord> scan_zeros(const LFunction& L, double t0, double t1, double step);

/// Zeros with Re rho >= sigma0 and t0 < Im rho <= t1 by the argument
/// principle. The rectangle is [-0.3, 1.3] for sigma0 = 0 and
/// [sigma0, 1.5] otherwise. At sigma0 = 1/2, where line zeros sit on the
/// edge, the count is (full strip) - (Re rho >= 1/2 + 0.01), which equals
/// N(1/2) by the symmetry rho -> 1 - conj(rho). Horizontal edges are
/// nudged upward by at most 0.01 if |L| < 1e-6 on them. Throws
/// NumericError if the winding residual exceeds 0.1 or a vertical edge
/// passes through a zero.
RectCount count_zeros_rect(const LFunction& L, double sigma0, double t0, double t1);

/// (T/pi) log(T / (2 pi e)). Throws DomainError for T <= 0.
double nf_main_term(double T);

/// N_f(sigma, T+1) - N_f(sigma, T). Throws DomainError for T < 2.
std::int64_t short_interval_count(const LFunction& L, double sigma, double T);

/// Throws NumericError if a full-strip rectangle count disagrees with the
/// number of line zeros found by scan_zeros over the same window. A
/// surplus on the contour side indicates a missed double or close pair.
void require_line_consistency(std::size_t line_zeros, const RectCount& strip);

/// CSV with header gamma,beta,radius,method.
void write_zeros_csv(std::ostream& os, const std::vector<ZeroRecord>& zeros);

}  // namespace lfd
