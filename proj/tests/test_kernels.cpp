#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lfd/kernels.hpp"

using namespace lfd::kernels;

namespace {

// Plain long-double loop, no compensation tricks.
std::complex<long double> reference(const std::vector<double>& c, const std::vector<double>& ln, double sigma,
                                    double t) {
  std::complex<long double> s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const long double l = ln[i];
    const long double arg = static_cast<long double>(t * ln[i]);
    s += std::polar(static_cast<long double>(c[i]) * std::exp(-static_cast<long double>(sigma) * l), -arg);
  }
  return s;
}

double abs_sum(const std::vector<double>& c, const std::vector<double>& ln, double sigma) {
  double a = 0;
  for (std::size_t i = 0; i < c.size(); ++i) a += std::abs(c[i]) * std::exp(-sigma * ln[i]);
  return a;
}

}  // namespace

TEST_CASE("scalar kernel against an extended-precision loop") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  for (std::size_t n : {1u, 7u, 100u, 5000u}) {
    std::vector<double> c(n), ln(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = gauss(rng);
      ln[i] = std::log(static_cast<double>(i + 1));
    }
    for (double sigma : {-0.5, 0.5, 1.5}) {
      for (double t : {0.0, 14.1, 199.9, -60.0}) {
        const auto ref = reference(c, ln, sigma, t);
        const auto got = dirichlet_sum_scalar(c, ln, sigma, t);
        const double scale = abs_sum(c, ln, sigma);
        REQUIRE(std::abs(got.real() - static_cast<double>(ref.real())) <= 1e-14 * scale);
        REQUIRE(std::abs(got.imag() - static_cast<double>(ref.imag())) <= 1e-14 * scale);
      }
    }
  }
}

TEST_CASE("vector kernel is equivalent to the scalar reference") {
  if (!avx2_available()) {
    MESSAGE("AVX2 kernel unavailable; equivalence test skipped");
    CHECK_THROWS(dirichlet_sum_avx2({}, {}, 0.0, 0.0));
    return;
  }
  std::mt19937_64 rng(9);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> tdist(-200.0, 200.0), sdist(-1.5, 2.5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 20000;
    std::vector<double> c(n), ln(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = gauss(rng);
      ln[i] = std::log(static_cast<double>(i + 1));
    }
    const double sigma = sdist(rng), t = tdist(rng);
    const auto a = dirichlet_sum_scalar(c, ln, sigma, t);
    const auto b = dirichlet_sum_avx2(c, ln, sigma, t);
    const double scale = abs_sum(c, ln, sigma);
    REQUIRE(std::abs(a - b) <= 1e-14 * scale);
  }
}

TEST_CASE("dispatch override") {
  force_scalar(true);
  CHECK(active_isa() == Isa::scalar);
  const std::vector<double> c{1.0, -0.5, 0.25}, ln{0.0, std::log(2.0), std::log(3.0)};
  const auto forced = dirichlet_sum(c, ln, 0.5, 3.0);
  CHECK(forced == dirichlet_sum_scalar(c, ln, 0.5, 3.0));
  force_scalar(false);
  CHECK(active_isa() == (avx2_available() ? Isa::avx2 : Isa::scalar));
  CHECK(std::abs(dirichlet_sum(c, ln, 0.5, 3.0) - forced) <= 1e-15);
  CHECK(isa_name(Isa::scalar) == "scalar");
}
