#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lfd/density.hpp"
#include "lfd/errors.hpp"

using namespace lfd;

namespace {

constexpr double kPi = std::numbers::pi;

const LFunction& delta() {
  static const LFunction L(12);
  return L;
}

const std::vector<ZeroRecord>& window_zeros() {
  static const auto z = [] {
    std::vector<ZeroRecord> w;
    for (const auto& r : scan_zeros(delta(), 50.0, 100.0, 0.05)) {
      if (r.gamma > 50.0) w.push_back(r);
    }
    return w;
  }();
  return z;
}

// c_f(l) by brute force over all factorizations l = m n.
double c_oracle(const CoefficientTable& t, double X, double y, std::int64_t l) {
  double s = 0.0;
  for (std::int64_t m = 1; m <= l; ++m) {
    if (l % m == 0 && m <= X && l / m <= y) s += t.mu(m) * t.lambda(l / m);
  }
  return s;
}

}  // namespace

TEST_CASE("mollifier_eval") {
  const auto& t = delta().table();
  CHECK(mollifier_eval(t, cplx(0.5, 30.0), MollifierConfig{100.0, 8, 1.9}) == cplx(1.0, 0.0));

  const MollifierConfig big{100.0, 1, 100.0};
  const auto d = divisor_counts(100, 2);
  double bound = 0.0;
  for (int m = 1; m <= 100; ++m) bound += static_cast<double>(d[m]) / (m * m);
  CHECK(bound <= 3.0);
  for (double tt : {0.0, 7.0, 55.0}) CHECK(std::abs(mollifier_eval(t, cplx(2.0, tt), big)) <= bound);

  const cplx rho(0.5, 9.22237939992110);
  cplx naive = 0.0;
  for (int m = 1; m <= 10; ++m) naive += t.mu(m) * std::pow(static_cast<double>(m), -rho);
  CHECK(std::abs(mollifier_eval(t, rho, MollifierConfig{100.0, 2, 10.0}) - naive) <= 1e-12);

  const auto& small = LFunction(12, 5).table();
  CHECK_THROWS_AS(mollifier_eval(small, 0.5, MollifierConfig{100.0, 2, 10.0}), PreconditionError);
  CHECK_THROWS_AS(MollifierConfig::make(3.0, 4), DomainError);
  CHECK_THROWS_AS(MollifierConfig::make(50.0, 0), DomainError);
  CHECK(MollifierConfig::make(100.0, 2).X == doctest::Approx(10.0));
}

TEST_CASE("convolution coefficients vanish on 2 <= l <= X") {
  const auto& t = delta().table();
  const auto d4 = divisor_counts(2000, 4);
  for (double T1 : {50.0, 100.0}) {
    for (int delta_ = 4; delta_ <= 12; ++delta_) {
      const auto cfg = MollifierConfig::make(T1, delta_);
      const double y = T1 / (2.0 * kPi);
      const auto c = conv_coeffs(t, cfg, y);
      CAPTURE(T1);
      CAPTURE(delta_);
      REQUIRE(c.size() == static_cast<std::size_t>(std::floor(cfg.X * y)) + 1);
      CHECK(c[1] == 1.0);
      for (std::size_t l = 2; l <= static_cast<std::size_t>(cfg.X); ++l) CHECK(std::abs(c[l]) <= 1e-10);
      for (std::size_t l = 1; l < c.size(); ++l) {
        CHECK(std::abs(c[l]) <= static_cast<double>(d4[l]) + 1e-12);
        CHECK(std::abs(c[l] - c_oracle(t, cfg.X, y, static_cast<std::int64_t>(l))) <= 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(conv_coeffs(LFunction(12, 5).table(), MollifierConfig::make(100.0, 4), 15.0), PreconditionError);
}

TEST_CASE("dyadic blocks tile the interval") {
  auto b = dyadic_blocks(1.0, 2.0);
  REQUIRE(b.size() == 1);
  CHECK(b[0].hi == 2.0);
  b = dyadic_blocks(1.0, 10.0);
  REQUIRE(b.size() == 4);
  CHECK(b[3].lo == 8.0);
  CHECK(b[3].hi == 10.0);
  const double a = 10.0, e = 10.0 * 15.9;
  b = dyadic_blocks(a, e);
  CHECK(b.front().lo == a);
  CHECK(b.back().hi == e);
  CHECK(static_cast<double>(b.size()) <= std::ceil(std::log2(e / a)));
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(b[i].lo < b[i].hi);
    CHECK(b[i].hi <= 2.0 * b[i].lo);
    if (i > 0) CHECK(b[i].lo == b[i - 1].hi);
  }
  CHECK_THROWS_AS(dyadic_blocks(0.5, 3.0), DomainError);
  CHECK_THROWS_AS(dyadic_blocks(3.0, 3.0), DomainError);
}

TEST_CASE("block sums at the zeros of (50, 100]") {
  const auto cfg = MollifierConfig::make(100.0, 8);
  const auto& t = delta().table();
  REQUIRE(!window_zeros().empty());
  for (const auto& z : window_zeros()) {
    CAPTURE(z.gamma);
    const auto bd = block_sums(delta(), z, cfg);
    const cplx rho(0.5, z.gamma);
    const double y = z.gamma / (2.0 * kPi);
    const auto c = conv_coeffs(t, cfg, y);
    cplx full = 0.0, blocks = 0.0;
    for (std::size_t l = static_cast<std::size_t>(cfg.X) + 1; l < c.size(); ++l) {
      full += c[l] * std::pow(static_cast<double>(l), -rho);
    }
    for (const auto& bs : bd.sums) {
      if (bs.block.kind == BlockKind::c_block) blocks += bs.value;
    }
    CHECK(std::abs(full - blocks) <= 1e-10);
    CHECK(bd.D == static_cast<std::int64_t>(bd.sums.size()));
    CHECK(bd.d_ratio <= kBlockCountCap);
    CHECK(bd.margin == doctest::Approx(bd.abs_sum - 0.5));
    CHECK(bd.residual <= bd.allowance);
  }
  CHECK_THROWS_AS(block_sums(delta(), {40.0}, cfg), PreconditionError);
  CHECK_THROWS_AS(block_sums(delta(), {100.5}, cfg), PreconditionError);
}

TEST_CASE("spaced zero selection") {
  const auto cfg = MollifierConfig::make(100.0, 8);
  CHECK(select_spaced_zeros({}, cfg).zeros.empty());

  const std::vector<ZeroRecord> spaced = {{51.0}, {53.5}, {60.0}, {61.0}};
  const auto id = select_spaced_zeros(spaced, cfg);
  CHECK(id.identity);
  CHECK(id.C == 2);
  CHECK(id.zeros.size() == spaced.size());

  const auto& z = window_zeros();
  const auto sel = select_spaced_zeros(z, cfg);
  CHECK(!sel.identity);
  REQUIRE(!sel.zeros.empty());
  for (std::size_t i = 1; i < sel.zeros.size(); ++i) CHECK(sel.zeros[i].gamma - sel.zeros[i - 1].gamma >= 1.0);
  for (const auto& e : sel.zeros) {
    bool found = false;
    for (const auto& r : z) found = found || r.gamma == e.gamma;
    CHECK(found);
  }
  std::vector<int> per(51, 0);
  for (const auto& r : z) ++per[static_cast<std::size_t>(std::ceil(r.gamma - 50.0)) - 1];
  CHECK(sel.per_interval_max == *std::max_element(per.begin(), per.end()));
  CHECK(sel.C == 2 * sel.per_interval_max);
  CHECK(static_cast<double>(sel.zeros.size()) * sel.C >= static_cast<double>(z.size()));
  CHECK(static_cast<double>(sel.zeros.size()) >= z.size() / (2.0 * sel.per_interval_max * std::log(100.0)));

  // Exhaustive check that (n0, j0) maximizes the class size.
  for (int n = 1; n <= sel.per_interval_max; ++n) {
    for (int j = 0; j < 2; ++j) {
      std::size_t size = 0;
      for (std::size_t m = 0; m < per.size(); ++m) size += static_cast<int>(m % 2) == j && per[m] >= n;
      CHECK(size <= sel.zeros.size());
    }
  }

  CHECK_THROWS_AS(select_spaced_zeros({{60.0}, {55.0}}, cfg), PreconditionError);
  CHECK_THROWS_AS(select_spaced_zeros({{30.0}}, cfg), PreconditionError);
}

TEST_CASE("power coefficients") {
  const auto cfg = MollifierConfig::make(100.0, 4);
  const auto c = conv_coeffs(delta().table(), cfg, 100.0 / (2.0 * kPi));
  const auto a1 = power_coeffs(c, 2.0, 10.0, 1);
  REQUIRE(a1.size() == 11);
  for (std::size_t l = 0; l <= 10; ++l) CHECK(a1[l] == (l > 2 ? c[l] : 0.0));

  const auto a2 = power_coeffs(c, 2.0, 4.0, 2);
  CHECK(a2[9] == doctest::Approx(c[3] * c[3]).epsilon(1e-15));
  CHECK(a2[12] == doctest::Approx(2.0 * c[3] * c[4]).epsilon(1e-15));
  CHECK(a2[6] == 0.0);

  const auto big = power_coeffs(c, 1.0, 32.0, 2);
  const auto d8 = divisor_counts_general(1024, 8);
  for (std::size_t l = 1; l <= 1000; ++l) {
    double oracle = 0.0;
    for (std::size_t l1 = 2; l1 <= 32; ++l1) {
      if (l % l1 == 0 && l / l1 >= 2 && l / l1 <= 32) oracle += c[l1] * c[l / l1];
    }
    CHECK(std::abs(big[l] - oracle) <= 1e-12 * (1.0 + std::abs(oracle)));
    CHECK(std::abs(big[l]) <= static_cast<double>(d8[l]));
  }
  CHECK_THROWS_AS(power_coeffs(c, 2.0, 60.0, 2), PreconditionError);
  CHECK_THROWS_AS(power_coeffs(c, 1.0, 40.0, 6), PreconditionError);
}

TEST_CASE("density exponent") {
  CHECK(density_exponent(1.0) == 0.0);
  CHECK(4.0 * (1.0 - 0.75) / (3.0 - 2.0 * 0.75) == 2.0 * (1.0 - 0.75) / 0.75);
  CHECK(density_exponent(0.75) == 2.0 / 3.0);
  double prev = density_exponent(0.5);
  for (int i = 501; i <= 1000; ++i) {
    const double e = density_exponent(i * 1e-3);
    CHECK(e <= prev);
    CHECK(prev - e <= 4e-3);
    prev = e;
  }
  CHECK_THROWS_AS(density_exponent(0.4), DomainError);
}

TEST_CASE("density report") {
  const auto rows = density_report(delta(), {1.0, 0.6}, 100.0);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].count == 0);
  CHECK(rows[0].bound == 1.0);
  CHECK(rows[0].consistent);
  CHECK(rows[1].count == 0);
  CHECK(rows[1].exponent == doctest::Approx(1.6 / 1.8));
  CHECK(rows[1].bound == doctest::Approx(std::pow(100.0, 1.6 / 1.8)));
  CHECK(rows[1].consistent);
  CHECK_THROWS_AS(density_report(delta(), {0.4}, 100.0), DomainError);
  CHECK_THROWS_AS(density_report(delta(), {0.6}, 150.0), DomainError);
}

TEST_CASE("mollifier pipeline over the window") {
  const auto cfg = MollifierConfig::make(100.0, 8);
  const auto run = run_mollifier(delta(), window_zeros(), cfg);
  REQUIRE(run.zeros.size() == window_zeros().size());
  CHECK(run.all_residuals_ok);
  CHECK(run.max_d_ratio <= kBlockCountCap);
  MESSAGE("min margin sum|S_nu| - 1/2 = " << run.min_margin << ", #A = " << run.a_size
                                          << ", #E = " << run.E.zeros.size());
  std::int64_t in_a = 0;
  for (const auto& z : run.zeros) {
    in_a += z.in_A;
    if (z.in_E) CHECK(z.in_A);
  }
  CHECK(in_a == run.a_size);
  for (std::size_t i = 1; i < run.E.zeros.size(); ++i) CHECK(run.E.zeros[i].gamma - run.E.zeros[i - 1].gamma >= 1.0);
}
