#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lfd/quadrature.hpp"

using namespace lfd;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Gauss-Kronrod integrates closed forms") {
  SUBCASE("e^{ix} on [0, pi] is 2i") {
    const auto r = integrate([](double x) { return std::exp(cplx(0, x)); }, 0, kPi, 1e-14);
    CHECK(r.converged);
    CHECK(std::abs(r.value - cplx(0, 2)) <= 1e-14);
  }
  SUBCASE("polynomials of degree <= 22 on a single panel") {
    const auto r = integrate([](double x) { return cplx(std::pow(x, 22), 0); }, 0, 1, 1.0);
    CHECK(r.panels == 1);
    CHECK(r.value.real() == doctest::Approx(1.0 / 23).epsilon(1e-14));
  }
  SUBCASE("endpoint singularity of sqrt x") {
    const auto r = integrate([](double x) { return cplx(std::sqrt(x), 0); }, 0, 4, 1e-12);
    CHECK(r.converged);
    CHECK(std::abs(r.value.real() - 16.0 / 3.0) <= 1e-11);
    CHECK(r.panels > 1);
  }
  SUBCASE("oscillatory e^{i w x} for w up to 200") {
    for (double w : {1.0, 17.0, 200.0}) {
      const cplx ref = (std::exp(cplx(0, 3 * w)) - std::exp(cplx(0, -w))) / cplx(0, w);
      const auto r = integrate([w](double x) { return std::exp(cplx(0, w * x)); }, -1, 3, 1e-12);
      CHECK(r.converged);
      CHECK(std::abs(r.value - ref) <= 1e-11);
    }
  }
  SUBCASE("reversed and empty intervals") {
    const auto f = [](double x) { return cplx(x * x, 0); };
    CHECK(integrate(f, 2, 0, 1e-14).value.real() == doctest::Approx(-8.0 / 3.0));
    const auto e = integrate(f, 1, 1, 1e-14);
    CHECK(e.converged);
    CHECK(e.value == cplx(0, 0));
  }
  SUBCASE("panel cap reports non-convergence") {
    const auto r = integrate([](double x) { return cplx(std::sin(1.0 / x), 0); }, 1e-6, 1, 1e-15, 0.0, 8);
    CHECK_FALSE(r.converged);
    CHECK(r.panels <= 8);
    CHECK(r.error > 1e-15);
  }
}
