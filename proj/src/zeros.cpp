#include "lfd/zeros.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "lfd/errors.hpp"
#include "parallel.hpp"

namespace lfd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEvalTol = 1e-10;
constexpr double kMaxArgStep = kPi / 4.0;
constexpr double kHalvesTol = 1e-3;
constexpr double kInitialPanel = 0.25;
constexpr double kMinPanel = 1e-9;
constexpr double kNudgeStep = 1e-3;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

double z_at(const LFunction& L, double t, double theta) {
  const cplx v = L.exact_eval(cplx(0.5, t), kEvalTol).value;
  return (std::polar(1.0, theta) * v).real();
}

// Thrown internally when a horizontal edge passes too close to a zero.
struct EdgeTooClose {
  bool horizontal;
  cplx where;
};

class Winding {
 public:
  explicit Winding(const LFunction& L) : L_(L) {}

  // Total change of arg L along the segment a -> b.
  double edge(cplx a, cplx b, bool horizontal) {
    const double len = std::abs(b - a);
    const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(len / kInitialPanel)));
    std::vector<cplx> values(panels + 1);
    detail::parallel_for(panels + 1, [&](std::size_t i) {
      values[i] = eval(a + (b - a) * (static_cast<double>(i) / panels), horizontal);
    });
    std::vector<double> delta(panels);
    detail::parallel_for(panels, [&](std::size_t i) {
      delta[i] = refine(a, b, static_cast<double>(i) / panels, values[i], static_cast<double>(i + 1) / panels,
                        values[i + 1], len, horizontal);
    });
    double sum = 0.0;
    for (double d : delta) sum += d;
    return sum;
  }

  std::int64_t evaluations() const { return evals_.load(); }

 private:
  cplx eval(cplx s, bool horizontal) {
    ++evals_;
    const EvalResult r = L_.exact_eval(s, kEvalTol);
    if (std::abs(r.value) < kEdgeSmallValue || std::abs(r.value) <= 10.0 * r.est_error) {
      throw EdgeTooClose{horizontal, s};
    }
    return r.value;
  }

  double refine(cplx a, cplx b, double ua, cplx va, double ub, cplx vb, double len, bool horizontal) {
    const double um = 0.5 * (ua + ub);
    const cplx vm = eval(a + (b - a) * um, horizontal);
    const double whole = std::arg(vb / va);
    const double left = std::arg(vm / va);
    const double right = std::arg(vb / vm);
    if (std::abs(whole) < kMaxArgStep && std::abs(left + right - whole) < kHalvesTol) return left + right;
    if ((ub - ua) * len < kMinPanel) {
      const cplx s = a + (b - a) * um;
      throw NumericError("argument tracking did not resolve near s = " + fmt(s.real()) + "+" + fmt(s.imag()) + "i");
    }
    return refine(a, b, ua, va, um, vm, len, horizontal) + refine(a, b, um, vm, ub, vb, len, horizontal);
  }

  const LFunction& L_;
  std::atomic<std::int64_t> evals_{0};
};

RectCount count_box(const LFunction& L, double sl, double sr, double t0, double t1) {
  RectCount out;
  out.sigma_left = sl;
  out.sigma_right = sr;
  for (int nudge = 0;; ++nudge) {
    const double shift = nudge * kNudgeStep;
    if (shift > kEdgeNudgeCap + 1e-12) {
      throw NumericError("horizontal contour edge stays within 1e-6 of a zero after nudging by 0.01 near t = " +
                         fmt(t0) + ", " + fmt(t1));
    }
    const double a = t0 + shift, b = t1 + shift;
    Winding w(L);
    try {
      double total = 0.0;
      total += w.edge(cplx(sl, a), cplx(sr, a), true);
      total += w.edge(cplx(sr, a), cplx(sr, b), false);
      total += w.edge(cplx(sr, b), cplx(sl, b), true);
      total += w.edge(cplx(sl, b), cplx(sl, a), false);
      const double winding = total / (2.0 * kPi);
      out.t0 = a;
      out.t1 = b;
      out.count = std::llround(winding);
      out.winding_residual = std::abs(winding - static_cast<double>(out.count));
      out.evaluations = w.evaluations();
      break;
    } catch (const EdgeTooClose& e) {
      if (!e.horizontal) {
        throw NumericError("vertical contour edge passes within 1e-6 of a zero at s = " + fmt(e.where.real()) + "+" +
                           fmt(e.where.imag()) + "i");
      }
    }
  }
  if (out.winding_residual > kWindingResidualCap) {
    throw NumericError("winding residual " + fmt(out.winding_residual) + " exceeds 0.1; finer panels needed");
  }
  return out;
}

}  // namespace

std::string_view method_name(ZeroMethod m) noexcept {
  return m == ZeroMethod::contour ? "contour" : "sign_change";
}

double max_scan_step(double t1) { return kPi / std::log(std::max(t1, 10.0) / (2.0 * kPi)); }

std::vector<ZeroRecord> scan_zeros(const LFunction& L, double t0, double t1, double step) {
  if (!(t0 >= 0.0 && t0 < t1 && t1 <= kMaxHeight)) {
    throw PreconditionError("scan_zeros needs 0 <= t0 < t1 <= 200, got (" + fmt(t0) + ", " + fmt(t1) + ")");
  }
  if (!(step > 0.0 && step <= max_scan_step(t1))) {
    throw PreconditionError("scan step " + fmt(step) + " must lie in (0, " + fmt(max_scan_step(t1)) +
                            "], below the mean zero gap");
  }
  const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / step - 1e-12));
  const double h = (t1 - t0) / static_cast<double>(n);
  std::vector<double> ts(n + 1), theta(n + 1), z(n + 1);
  PhaseState state;
  const int sub = static_cast<int>(std::ceil(h / kMaxPhaseStep));
  for (std::size_t i = 0; i <= n; ++i) {
    ts[i] = i == n ? t1 : t0 + h * static_cast<double>(i);
    if (i > 0) {
      for (int j = 1; j < sub; ++j) (void)theta_f(ts[i - 1] + h * j / sub, L.weight(), state);
    }
    theta[i] = theta_f(ts[i], L.weight(), state);
  }
  detail::parallel_for(n + 1, [&](std::size_t i) { z[i] = z_at(L, ts[i], theta[i]); });

  struct Bracket {
    std::size_t i;
  };
  std::vector<ZeroRecord> out;
  std::vector<Bracket> brackets;
  for (std::size_t i = 0; i <= n; ++i) {
    if (z[i] == 0.0) {
      if (ts[i] > 0.0) out.push_back({ts[i], 0.5, 0.0, ZeroMethod::sign_change});
    } else if (i < n && z[i + 1] != 0.0 && std::signbit(z[i]) != std::signbit(z[i + 1])) {
      brackets.push_back({i});
    }
  }
  std::vector<ZeroRecord> refined(brackets.size());
  detail::parallel_for(brackets.size(), [&](std::size_t j) {
    const std::size_t i = brackets[j].i;
    double a = ts[i], b = ts[i + 1];
    const bool neg_a = std::signbit(z[i]);
    while (0.5 * (b - a) > kZeroRadius) {
      const double m = 0.5 * (a + b);
      const double zm = z_at(L, m, theta_direct(m, L.weight()));
      if (zm == 0.0) {
        a = b = m;
        break;
      }
      (std::signbit(zm) == neg_a ? a : b) = m;
    }
    refined[j] = {0.5 * (a + b), 0.5, 0.5 * (b - a), ZeroMethod::sign_change};
  });
  out.insert(out.end(), refined.begin(), refined.end());
  std::sort(out.begin(), out.end(), [](const ZeroRecord& x, const ZeroRecord& y) { return x.gamma < y.gamma; });
  return out;
}

RectCount count_zeros_rect(const LFunction& L, double sigma0, double t0, double t1) {
  if (!(sigma0 >= 0.0 && sigma0 < 1.0)) throw DomainError("count_zeros_rect needs 0 <= sigma0 < 1");
  if (!(t0 >= 0.0 && t0 <= t1 && t1 <= kMaxHeight)) {
    throw DomainError("count_zeros_rect needs 0 <= t0 <= t1 <= 200, got (" + fmt(t0) + ", " + fmt(t1) + ")");
  }
  RectCount out;
  out.sigma0 = sigma0;
  out.t0 = t0;
  out.t1 = t1;
  if (t0 == t1) return out;
  if (sigma0 == 0.0) {
    out = count_box(L, kStripLeft, kStripRight, t0, t1);
  } else if (sigma0 == 0.5) {
    const RectCount strip = count_box(L, kStripLeft, kStripRight, t0, t1);
    const RectCount right = count_box(L, 0.5 + kLineOffset, kRightEdge, strip.t0, strip.t1);
    out = strip;
    out.count = strip.count - right.count;
    out.winding_residual = std::max(strip.winding_residual, right.winding_residual);
    out.evaluations = strip.evaluations + right.evaluations;
    out.sigma_left = 0.5;
  } else {
    out = count_box(L, sigma0, kRightEdge, t0, t1);
  }
  out.sigma0 = sigma0;
  return out;
}

double nf_main_term(double T) {
  if (!(T > 0.0)) throw DomainError("nf_main_term needs T > 0");
  return T / kPi * std::log(T / (2.0 * kPi * std::numbers::e));
}

std::int64_t short_interval_count(const LFunction& L, double sigma, double T) {
  if (!(T >= 2.0)) throw DomainError("short_interval_count needs T >= 2");
  return count_zeros_rect(L, sigma, T, T + 1.0).count;
}

void require_line_consistency(std::size_t line_zeros, const RectCount& strip) {
  const auto line = static_cast<std::int64_t>(line_zeros);
  if (line == strip.count) return;
  const std::string what = line < strip.count ? "contour surplus: possible double zero or unresolved close pair"
                                              : "sign-change surplus over the contour count";
  throw NumericError(what + " (line " + std::to_string(line) + ", contour " + std::to_string(strip.count) +
                     " on (" + fmt(strip.t0) + ", " + fmt(strip.t1) + "])");
}

void write_zeros_csv(std::ostream& os, const std::vector<ZeroRecord>& zeros) {
  os << "gamma,beta,radius,method\n";
  char buf[96];
  for (const auto& z : zeros) {
    std::snprintf(buf, sizeof buf, "%.15g,%.15g,%.15g,", z.gamma, z.beta, z.radius);
    os << buf << method_name(z.method) << '\n';
  }
}

}  // namespace lfd
