#include "lfd/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

#include "lfd/errors.hpp"
#include "lfd/kernels.hpp"
#include "lfd/summation.hpp"
#include "parallel.hpp"

namespace lfd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRoundingSlack = 1e-12;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::int64_t floor_index(double x) { return static_cast<std::int64_t>(std::floor(x)); }

void require_cover(const CoefficientTable& table, double x, const char* what) {
  if (floor_index(x) > table.n_max()) {
    throw PreconditionError(std::string("coefficient table (n_max ") + std::to_string(table.n_max()) +
                            ") does not cover " + what + " = " + fmt(x));
  }
}

// Dyadic cover of (a, b] for any a > 0.
std::vector<DyadicBlock> cover(double a, double b, BlockKind kind) {
  std::vector<DyadicBlock> out;
  for (double z = a; z < b; z *= 2.0) out.push_back({z, std::min(2.0 * z, b), kind});
  return out;
}

// sum_{lo < n <= hi} coef[n] n^{-s}.
cplx partial(std::span<const double> coef, std::span<const double> log_n, double lo, double hi, cplx s) {
  CompensatedComplexSum acc;
  for (std::int64_t n = floor_index(lo) + 1; n <= floor_index(hi); ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (coef[i] != 0.0) acc.add(coef[i] * std::exp(-s * log_n[i]));
  }
  return acc.value();
}

using BlockKey = std::tuple<int, double, double>;

BlockKey key(const DyadicBlock& b) { return {static_cast<int>(b.kind), b.lo, b.n_lo}; }

}  // namespace

MollifierConfig MollifierConfig::make(double T1, int delta) {
  if (!(T1 >= 4.0)) throw DomainError("mollifier window needs T1 >= 4, got " + fmt(T1));
  if (delta < 1) throw DomainError("delta must be a positive integer");
  return {T1, delta, std::pow(T1, 1.0 / delta)};
}

std::string_view kind_name(BlockKind k) noexcept {
  return k == BlockKind::product_block ? "product_block" : "c_block";
}

cplx mollifier_eval(const CoefficientTable& table, cplx s, const MollifierConfig& config) {
  require_cover(table, config.X, "X");
  const auto m = static_cast<std::size_t>(floor_index(config.X));
  return kernels::dirichlet_sum(table.mus().subspan(1, m), table.log_n().subspan(1, m), s.real(), s.imag());
}

std::vector<double> conv_coeffs(const CoefficientTable& table, const MollifierConfig& config, double y) {
  if (!(y > 0.0)) throw DomainError("conv_coeffs needs y > 0");
  const std::int64_t mx = floor_index(config.X), ny = floor_index(y);
  const std::int64_t top = floor_index(config.X * y);
  require_cover(table, config.X, "X");
  require_cover(table, y, "y");
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(top + 1));
  const auto mu = table.mus();
  const auto lam = table.lambdas();
  for (std::int64_t m = 1; m <= mx; ++m) {
    if (mu[static_cast<std::size_t>(m)] == 0.0) continue;
    for (std::int64_t n = 1; n <= ny && m * n <= top; ++n) {
      acc[static_cast<std::size_t>(m * n)].add(mu[static_cast<std::size_t>(m)] * lam[static_cast<std::size_t>(n)]);
    }
  }
  std::vector<double> c(acc.size(), 0.0);
  for (std::size_t l = 1; l < acc.size(); ++l) c[l] = acc[l].value();
  return c;
}

std::vector<DyadicBlock> dyadic_blocks(double a, double b) {
  if (!(a >= 1.0 && a < b)) throw DomainError("dyadic_blocks needs 1 <= a < b, got (" + fmt(a) + ", " + fmt(b) + "]");
  return cover(a, b, BlockKind::c_block);
}

BlockDecomposition block_sums(const LFunction& L, const ZeroRecord& rho, const MollifierConfig& config) {
  const double g = rho.gamma;
  if (!(g > 0.5 * config.T1 && g <= config.T1)) {
    throw PreconditionError("zero ordinate " + fmt(g) + " outside the window (" + fmt(0.5 * config.T1) + ", " +
                            fmt(config.T1) + "]");
  }
  const CoefficientTable& table = L.table();
  const double X = config.X, y = g / (2.0 * kPi);
  require_cover(table, X * y, "X y");
  const cplx s(rho.beta, g);
  const std::vector<double> c = conv_coeffs(table, config, y);
  const auto mu = table.mus(), lam = table.lambdas(), ln = table.log_n();
  const cplx chi = chi_f(s, L.weight());

  BlockDecomposition out;
  if (X * y > X) {
    for (const auto& b : cover(X, X * y, BlockKind::c_block)) out.sums.push_back({b, partial(c, ln, b.lo, b.hi, s)});
  }
  const auto m_blocks = cover(0.5, X, BlockKind::product_block);
  const auto n_blocks = y > 0.5 ? cover(0.5, y, BlockKind::product_block) : std::vector<DyadicBlock>{};
  std::vector<cplx> n_sums;
  for (const auto& nb : n_blocks) n_sums.push_back(partial(lam, ln, nb.lo, nb.hi, 1.0 - s));
  for (const auto& mb : m_blocks) {
    const cplx sm = partial(mu, ln, mb.lo, mb.hi, s);
    for (std::size_t j = 0; j < n_blocks.size(); ++j) {
      DyadicBlock b = mb;
      b.n_lo = n_blocks[j].lo;
      b.n_hi = n_blocks[j].hi;
      out.sums.push_back({b, chi * sm * n_sums[j]});
    }
  }

  CompensatedComplexSum total;
  CompensatedSum abs_sum;
  for (const auto& bs : out.sums) {
    total.add(bs.value);
    abs_sum.add(std::abs(bs.value));
  }
  out.D = static_cast<std::int64_t>(out.sums.size());
  const double logT = std::log(config.T1);
  out.d_ratio = static_cast<double>(out.D) / (logT * logT);
  if (out.d_ratio > kBlockCountCap) {
    throw NumericError("block count D = " + std::to_string(out.D) + " exceeds 2 (log T1)^2");
  }
  out.total = total.value();
  out.abs_sum = abs_sum.value();
  out.margin = out.abs_sum - 0.5;

  const auto ny = static_cast<std::size_t>(floor_index(y));
  const cplx first = partial(lam, ln, 0.0, static_cast<double>(ny), s);
  const cplx dual = partial(lam, ln, 0.0, static_cast<double>(ny), 1.0 - s);
  const cplx afe = first + chi * dual;
  const EvalResult ex = L.exact_eval(s);
  out.mollifier = mollifier_eval(table, s, config);
  out.exact = ex.value;
  out.exact_error = ex.est_error;
  out.afe_error = std::abs(afe - ex.value);
  const double mabs = std::abs(out.mollifier);
  out.residual = std::abs(1.0 + out.total - ex.value * out.mollifier);
  out.allowance = (out.afe_error + ex.est_error) * mabs + kRoundingSlack * (1.0 + out.abs_sum);
  return out;
}

SpacedSelection select_spaced_zeros(const std::vector<ZeroRecord>& zeros, const MollifierConfig& config) {
  SpacedSelection out;
  if (zeros.empty()) return out;
  const double base = 0.5 * config.T1;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    const double g = zeros[i].gamma;
    if (!(g > base && g <= config.T1)) {
      throw PreconditionError("zero ordinate " + fmt(g) + " outside the window (" + fmt(base) + ", " +
                              fmt(config.T1) + "]");
    }
    if (i > 0 && !(g >= zeros[i - 1].gamma)) throw PreconditionError("zeros must be sorted by ordinate");
  }

  std::map<std::int64_t, std::vector<std::size_t>> intervals;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    intervals[static_cast<std::int64_t>(std::ceil(zeros[i].gamma - base)) - 1].push_back(i);
  }
  for (const auto& [m, members] : intervals) {
    out.per_interval_max = std::max(out.per_interval_max, static_cast<int>(members.size()));
  }
  out.C = 2 * out.per_interval_max;

  bool spaced = true;
  for (std::size_t i = 1; i < zeros.size(); ++i) spaced = spaced && zeros[i].gamma - zeros[i - 1].gamma >= 1.0;
  if (spaced) {
    out.zeros = zeros;
    out.identity = true;
    return out;
  }

  std::size_t best = 0;
  for (int n = 1; n <= out.per_interval_max; ++n) {
    for (int j = 0; j < 2; ++j) {
      std::size_t size = 0;
      for (const auto& [m, members] : intervals) {
        size += (m % 2 == j) && members.size() >= static_cast<std::size_t>(n);
      }
      if (size > best) {
        best = size;
        out.n0 = n;
        out.j0 = j;
      }
    }
  }
  for (const auto& [m, members] : intervals) {
    if (m % 2 == out.j0 && members.size() >= static_cast<std::size_t>(out.n0)) {
      out.zeros.push_back(zeros[members[static_cast<std::size_t>(out.n0 - 1)]]);
    }
  }
  return out;
}

std::vector<double> power_coeffs(std::span<const double> c, double L, double Lp, int alpha) {
  if (alpha < 1) throw DomainError("alpha must be a positive integer");
  if (!(L >= 0.0 && L < Lp)) throw DomainError("power_coeffs needs 0 <= L < L'");
  const std::int64_t top = floor_index(Lp);
  if (top >= static_cast<std::int64_t>(c.size())) {
    throw PreconditionError("coefficients cover l <= " + std::to_string(c.size() - 1) + ", need " +
                            std::to_string(top));
  }
  std::int64_t size = 1;
  for (int i = 0; i < alpha; ++i) {
    if (size > kPowerCoeffCap / std::max<std::int64_t>(top, 1)) {
      throw PreconditionError("A_alpha range floor(L')^alpha exceeds 1e7 entries");
    }
    size *= top;
  }
  const std::int64_t lo = floor_index(L) + 1;
  std::vector<double> a(static_cast<std::size_t>(size + 1), 0.0);
  for (std::int64_t l = lo; l <= top; ++l) a[static_cast<std::size_t>(l)] = c[static_cast<std::size_t>(l)];
  for (int step = 1; step < alpha; ++step) {
    std::vector<CompensatedSum> next(a.size());
    for (std::size_t l1 = 1; l1 < a.size(); ++l1) {
      if (a[l1] == 0.0) continue;
      for (std::int64_t l2 = lo; l2 <= top && static_cast<std::int64_t>(l1) * l2 <= size; ++l2) {
        next[l1 * static_cast<std::size_t>(l2)].add(a[l1] * c[static_cast<std::size_t>(l2)]);
      }
    }
    for (std::size_t l = 0; l < a.size(); ++l) a[l] = next[l].value();
  }
  return a;
}

double density_exponent(double sigma) {
  if (!(sigma >= 0.5 && sigma <= 1.0)) throw DomainError("density exponent defined for 1/2 <= sigma <= 1");
  return sigma <= 0.75 ? 4.0 * (1.0 - sigma) / (3.0 - 2.0 * sigma) : 2.0 * (1.0 - sigma) / sigma;
}

std::vector<DensityRow> density_report(const LFunction& L, const std::vector<double>& sigmas, double T) {
  if (!(T > 0.0 && T <= 100.0)) throw DomainError("density_report needs 0 < T <= 100");
  for (double s : sigmas) {
    if (!(s >= 0.5 && s <= 1.0)) throw DomainError("density_report needs 1/2 <= sigma <= 1, got " + fmt(s));
  }
  std::vector<DensityRow> rows;
  for (double s : sigmas) {
    DensityRow r;
    r.sigma = s;
    r.count = s < 1.0 ? count_zeros_rect(L, s, 0.0, T).count : 0;
    r.exponent = density_exponent(s);
    r.bound = std::pow(T, r.exponent);
    r.consistent = static_cast<double>(r.count) <= r.bound;
    rows.push_back(r);
  }
  return rows;
}

MollifierRun run_mollifier(const LFunction& L, const std::vector<ZeroRecord>& zeros, const MollifierConfig& config) {
  MollifierRun run;
  run.config = config;
  run.zeros.resize(zeros.size());
  detail::parallel_for(zeros.size(), [&](std::size_t i) {
    ZeroMargin& z = run.zeros[i];
    z.rho = zeros[i];
    z.blocks = block_sums(L, zeros[i], config);
    z.residual_ok = z.blocks.residual <= z.blocks.allowance;
  });
  if (run.zeros.empty()) return run;

  run.min_margin = std::numeric_limits<double>::infinity();
  std::map<BlockKey, std::pair<DyadicBlock, std::int64_t>> members;
  for (const auto& z : run.zeros) {
    run.min_margin = std::min(run.min_margin, z.blocks.margin);
    run.max_d_ratio = std::max(run.max_d_ratio, z.blocks.d_ratio);
    run.all_residuals_ok = run.all_residuals_ok && z.residual_ok;
    const double cut = 1.0 / (2.0 * static_cast<double>(z.blocks.D));
    for (const auto& bs : z.blocks.sums) {
      auto& slot = members[key(bs.block)];
      slot.first = bs.block;
      slot.second += std::abs(bs.value) >= cut;
    }
  }
  for (const auto& [k, slot] : members) {
    if (slot.second > run.a_size) {
      run.a_size = slot.second;
      run.nu0 = slot.first;
    }
  }
  std::vector<ZeroRecord> a_set;
  for (auto& z : run.zeros) {
    const double cut = 1.0 / (2.0 * static_cast<double>(z.blocks.D));
    for (const auto& bs : z.blocks.sums) {
      if (key(bs.block) == key(run.nu0) && std::abs(bs.value) >= cut) {
        z.in_A = true;
        a_set.push_back(z.rho);
      }
    }
  }
  run.E = select_spaced_zeros(a_set, config);
  for (auto& z : run.zeros) {
    for (const auto& e : run.E.zeros) z.in_E = z.in_E || e.gamma == z.rho.gamma;
  }
  return run;
}

}  // namespace lfd
