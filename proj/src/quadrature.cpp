#include "lfd/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "lfd/summation.hpp"

namespace lfd {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<std::complex<double>(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const std::complex<double> fc = f(c);
  std::complex<double> kron = fc * kWgk[7];
  std::complex<double> gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const std::complex<double> pair = f(c - dx) + f(c + dx);
    kron += pair * kWgk[j];
    if (j % 2 == 1) gauss += pair * kWg[j / 2];
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadResult integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_panels) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Panel> heap;
  heap.push(gk15(f, a, b));
  int panels = 1;
  auto totals = [&]() {
    CompensatedComplexSum v;
    double e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      v.add(copy.top().value);
      e += copy.top().error;
      copy.pop();
    }
    return std::pair{v.value(), e};
  };
  auto [value, error] = totals();
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) && panels < max_panels) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid), right = gk15(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    ++panels;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    if (panels % 64 == 0) std::tie(value, error) = totals();
  }
  std::tie(value, error) = totals();
  out.value = value;
  out.error = error;
  out.panels = panels;
  out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
  return out;
}

}  // namespace lfd
