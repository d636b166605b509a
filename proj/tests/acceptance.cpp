// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "lfd/coefficients.hpp"
#include "lfd/density.hpp"
#include "lfd/expsum.hpp"
#include "lfd/lfunction.hpp"
#include "lfd/zeros.hpp"
#include "oracles.hpp"

using namespace lfd;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned from tools/lref.py zero 12 9.2224.
constexpr double kFirstZero = 9.22237939992110;

constexpr double kCoeffRuntimeCap = 10.0;
constexpr double kInverseTol = 1e-10;
constexpr double kFunctionalEqFactor = 2.0;
constexpr double kFunctionalEqRuntimeCap = 60.0;
constexpr double kAfeAbsCap = 0.1;
constexpr double kAfeMonotoneFactor = 3.0;
constexpr double kCountSlack = 4.0;  // times log T
constexpr double kFirstZeroTol = 1e-3;
constexpr double kZerosRuntimeCap = 300.0;
constexpr double kMollifierTol = 1e-10;
constexpr double kLemmaRuntimeCap = 60.0;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

const LFunction& delta() {
  static const LFunction L(12);
  return L;
}

const std::vector<ZeroRecord>& zeros_to_100() {
  static const auto z = [] {
    std::vector<ZeroRecord> out;
    for (const auto& r : scan_zeros(delta(), 0.0, 100.0, 0.05)) {
      if (r.gamma > 0.0) out.push_back(r);
    }
    return out;
  }();
  return z;
}

Verdict coefficient_exactness() {
  const auto oracle = testing::naive_eta24(1000);
  const CoefficientTable delta_table(EigenformSpec(12), 1000);
  std::int64_t mismatches = 0;
  for (std::size_t n = 1; n <= 1000; ++n) {
    const auto expected = static_cast<testing::i128>(oracle[n - 1]);
    const auto lo = static_cast<std::int64_t>(expected);
    const bool fits = expected == static_cast<testing::i128>(lo);
    if (!fits || ExactInt(lo) != delta_table.a(static_cast<std::int64_t>(n))) ++mismatches;
  }
  const auto d = divisor_counts(kMaxCoefficients, 2);
  std::int64_t violations = 0;
  double worst = 0.0;
  for (int k : {12, 16, 20}) {
    const CoefficientTable table(EigenformSpec(k), kMaxCoefficients);
    for (std::int64_t n = 1; n <= kMaxCoefficients; ++n) {
      const double ratio = std::abs(table.lambda(n)) / static_cast<double>(d[static_cast<std::size_t>(n)]);
      worst = std::max(worst, ratio);
      if (ratio > 1.0) ++violations;
    }
  }
  return {mismatches == 0 && violations == 0,
          format("a_Delta mismatches %lld against the eta^24 product (n <= 1000), Deligne violations %lld, "
                 "max |lambda|/d = %.6f",
                 static_cast<long long>(mismatches), static_cast<long long>(violations), worst)};
}

Verdict dirichlet_inverse() {
  const auto table = CoefficientTable::get(12, 10000);
  const auto conv = dirichlet_convolve(table->lambdas(), table->mus(), 10000);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 10000; ++n) worst = std::max(worst, std::abs(conv[n] - (n == 1 ? 1.0 : 0.0)));
  return {worst <= kInverseTol, format("max |(lambda*mu)(n) - [n=1]| = %.3e over n <= 1e4", worst)};
}

Verdict functional_equation() {
  std::mt19937_64 rng(20240601);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const cplx s(uniform(), -40.0 + 80.0 * uniform());
    const auto a = delta().completed(s, 1e-10, 1.0);
    const auto b = delta().completed(1.0 - s, 1e-10, 1.2);
    worst = std::max(worst, std::abs(a.value - b.value) / (a.bound + b.bound));
  }
  return {worst <= kFunctionalEqFactor,
          format("max |Lambda(s) - Lambda(1-s)| / bound = %.3f at 50 points", worst)};
}

Verdict afe_fidelity() {
  double worst = 0.0;
  std::vector<double> seq;
  std::ostringstream row;
  for (double sigma : {0.5, 0.75}) {
    for (double t : {20.0, 30.0, 40.0, 50.0, 60.0}) {
      const cplx s(sigma, t);
      const double err = std::abs(delta().afe_eval(s).value - delta().exact_eval(s, 1e-11).value);
      worst = std::max(worst, err);
      if (sigma == 0.75) seq.push_back(err);
      row << format(" %.4g", err);
    }
    row << (sigma == 0.5 ? " |" : "");
  }
  bool monotone = true;
  for (std::size_t i = 1; i < seq.size(); ++i) monotone = monotone && seq[i] <= kAfeMonotoneFactor * seq[i - 1];
  return {worst <= kAfeAbsCap && monotone,
          format("max |afe - exact| = %.4f (cap %.1f), sigma=0.75 decreasing up to x3: %s; errors", worst, kAfeAbsCap,
                 monotone ? "yes" : "no") +
              row.str()};
}

Verdict zero_counting() {
  const auto& zeros = zeros_to_100();
  const RectCount rect = count_zeros_rect(delta(), 0.0, 0.0, 100.0);
  const double main = nf_main_term(100.0);
  const double gap = std::abs(static_cast<double>(rect.count) - main);
  const double first = zeros.empty() ? 0.0 : zeros.front().gamma;
  const bool ok = rect.count == static_cast<std::int64_t>(zeros.size()) && gap <= kCountSlack * std::log(100.0) &&
                  std::abs(first - 9.2224) <= kFirstZeroTol && std::abs(first - kFirstZero) <= 2.0 * kZeroRadius;
  return {ok, format("contour %lld vs sign changes %zu, |N - main| = %.3f <= %.3f, first zero %.8f (pinned %.8f)",
                     static_cast<long long>(rect.count), zeros.size(), gap, kCountSlack * std::log(100.0), first,
                     kFirstZero)};
}

Verdict grh_density() {
  std::ostringstream counts;
  bool zero_off_line = true;
  for (double sigma : {0.6, 0.75, 0.9}) {
    const auto r = count_zeros_rect(delta(), sigma, 0.0, 100.0);
    zero_off_line = zero_off_line && r.count == 0;
    counts << format(" N(%.2f)=%lld", sigma, static_cast<long long>(r.count));
  }
  const auto rows = density_report(delta(), {0.5, 0.6, 0.75, 0.9, 1.0}, 100.0);
  const bool consistent = std::all_of(rows.begin(), rows.end(), [](const DensityRow& r) { return r.consistent; });
  const double left = 4.0 * (1.0 - 0.75) / (3.0 - 2.0 * 0.75), right = 2.0 * (1.0 - 0.75) / 0.75;
  const bool crossover = left == 2.0 / 3.0 && right == 2.0 / 3.0 && density_exponent(0.75) == 2.0 / 3.0;
  return {zero_off_line && consistent && crossover,
          format("%s; rows consistent: %s; e(3/4) = 2/3 from both branches: %s", counts.str().c_str() + 1,
                 consistent ? "yes" : "no", crossover ? "yes" : "no")};
}

Verdict mollifier_identities() {
  double worst = 0.0;
  bool unit = true;
  for (int d = 4; d <= 12; ++d) {
    const auto cfg = MollifierConfig::make(100.0, d);
    const auto c = conv_coeffs(delta().table(), cfg, 100.0 / (2.0 * kPi));
    unit = unit && std::abs(c[1] - 1.0) <= kMollifierTol;
    for (std::int64_t l = 2; l <= static_cast<std::int64_t>(std::floor(cfg.X)); ++l) {
      worst = std::max(worst, std::abs(c[static_cast<std::size_t>(l)]));
    }
  }
  return {unit && worst <= kMollifierTol,
          format("c_f(1) = 1: %s; max_{2<=l<=X} |c_f(l)| = %.3e over delta = 4..12", unit ? "yes" : "no", worst)};
}

const MollifierRun& mollifier_run() {
  static const auto run = [] {
    std::vector<ZeroRecord> window;
    for (const auto& z : zeros_to_100()) {
      if (z.gamma > 50.0) window.push_back(z);
    }
    return run_mollifier(delta(), window, MollifierConfig::make(100.0, 8));
  }();
  return run;
}

Verdict mollifier_inequality() {
  const auto& run = mollifier_run();
  double worst = 0.0;
  for (const auto& z : run.zeros) worst = std::max(worst, z.blocks.residual / z.blocks.allowance);
  return {run.all_residuals_ok && !run.zeros.empty(),
          format("%zu zeros, min margin %.4f, max residual/allowance %.3f, max D/(log T)^2 %.3f", run.zeros.size(),
                 run.min_margin, worst, run.max_d_ratio)};
}

Verdict spaced_selection() {
  const auto& run = mollifier_run();
  const auto& E = run.E;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < E.zeros.size(); ++i) min_gap = std::min(min_gap, E.zeros[i].gamma - E.zeros[i - 1].gamma);
  const auto input = static_cast<double>(run.a_size);
  const double need = input / (2.0 * E.per_interval_max * 2.0);
  const bool ok = !E.zeros.empty() && min_gap >= 1.0 && static_cast<double>(E.zeros.size()) >= need;
  return {ok, format("|E| = %zu from %lld, min gap %.4f, need |E| >= %.2f (max per unit interval %d)", E.zeros.size(),
                     static_cast<long long>(run.a_size), E.zeros.size() > 1 ? min_gap : 0.0, need,
                     E.per_interval_max)};
}

Verdict lemma_validators() {
  std::istringstream in(default_corpus());
  const auto entries = parse_corpus(in);
  const auto results = run_corpus(entries);
  std::set<std::string> checks;
  bool all = true, log_dual = false;
  double quad = 0.0;
  for (const auto& r : results) {
    checks.insert(r.check);
    all = all && r.pass;
    quad = std::max(quad, r.quad_deviation);
    log_dual = log_dual || (r.check == "dual_sum" && r.family == "log");
  }
  const bool span = checks.count("discrete_mean") && checks.count("mean_value") && checks.count("sum_integral") &&
                    checks.count("stationary_phase");
  return {entries.size() >= 12 && span && log_dual && all && quad <= kQuadAgreement,
          format("%zu instances, all four estimate checks covered: %s, log dual instance: %s, all within caps: %s, "
                 "max closed-form deviation %.2e",
                 entries.size(), span ? "yes" : "no", log_dual ? "yes" : "no", all ? "yes" : "no", quad)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
    double runtime_cap;  // seconds, 0 for none
  };
  const Criterion criteria[] = {
      {1, "coefficient exactness", coefficient_exactness, kCoeffRuntimeCap},
      {2, "Dirichlet inverse", dirichlet_inverse, 0.0},
      {3, "functional equation", functional_equation, kFunctionalEqRuntimeCap},
      {4, "AFE fidelity", afe_fidelity, 0.0},
      {5, "zero counting", zero_counting, kZerosRuntimeCap},
      {6, "GRH-consistent density", grh_density, 0.0},
      {7, "mollifier coefficients", mollifier_identities, 0.0},
      {8, "mollifier inequality", mollifier_inequality, 0.0},
      {9, "spaced zero set", spaced_selection, 0.0},
      {10, "lemma validators", lemma_validators, kLemmaRuntimeCap},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.runtime_cap > 0.0 && secs > c.runtime_cap) {
      v.pass = false;
      v.detail += format("; runtime %.1f s over %.0f s", secs, c.runtime_cap);
    }
    if (!v.pass) ++failures;
    std::printf("CRITERION %d %s: %s (%.2f s) %s\n", c.id, v.pass ? "PASS" : "FAIL", c.name, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria pass\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
