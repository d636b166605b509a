#include "lfd/expsum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "lfd/density.hpp"
#include "lfd/errors.hpp"
#include "lfd/quadrature.hpp"
#include "lfd/summation.hpp"
#include "lfd/zeros.hpp"
#include "parallel.hpp"

namespace lfd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kSamples = 200;
constexpr double kQuadTol = 1e-10;
constexpr const char* kLinearKeys[] = {"slope", "offset", "h", "exponent"};

cplx eval_poly(std::int64_t first, const std::vector<cplx>& a, double t) {
  CompensatedComplexSum s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ln = std::log(static_cast<double>(first + static_cast<std::int64_t>(i)));
    s.add(a[i] * std::polar(1.0, t * ln));
  }
  return s.value();
}

// int_{t0}^{t1} |sum b(n) n^{it}|^2 dt. Off-diagonal pairs use
// int e^{i w t} = e^{i w (t0+t1)/2} 2 sin(w (t1-t0)/2) / w.
double closed_mean_square(std::int64_t first, const std::vector<cplx>& b, double t0, double t1) {
  CompensatedSum acc;
  const double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
  std::vector<double> ln(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    ln[i] = std::log(static_cast<double>(first + static_cast<std::int64_t>(i)));
  }
  for (std::size_t m = 0; m < b.size(); ++m) {
    acc.add(std::norm(b[m]) * (t1 - t0));
    for (std::size_t n = m + 1; n < b.size(); ++n) {
      const double w = ln[m] - ln[n];
      const cplx kernel = std::polar(2.0 * std::sin(w * half) / w, w * mid);
      acc.add(2.0 * (b[m] * std::conj(b[n]) * kernel).real());
    }
  }
  return acc.value();
}

std::vector<cplx> derivative_coeffs(const DirichletPoly& S) {
  std::vector<cplx> d(S.a.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = S.a[i] * cplx(0.0, std::log(static_cast<double>(S.first + static_cast<std::int64_t>(i))));
  }
  return d;
}

double quad_real(const std::function<double(double)>& g, double a, double b) {
  const QuadResult r = integrate([&](double x) { return cplx(g(x), 0.0); }, a, b, 1e-13, 1e-13, 20000);
  return r.value.real();
}

double rel_gap(double x, double ref) { return std::abs(x - ref) / std::max(1.0, std::abs(ref)); }

std::vector<double> samples(double a, double b, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return xs;
}

cplx direct_sum(const PhaseInstance& inst) {
  CompensatedComplexSum s;
  for (auto x = static_cast<std::int64_t>(std::floor(inst.a)) + 1; x <= static_cast<std::int64_t>(std::floor(inst.b));
       ++x) {
    const double xd = static_cast<double>(x);
    s.add(inst.phi(xd) * std::polar(1.0, kTwoPi * inst.f[0](xd)));
  }
  return s.value();
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double distance_to_integer(double v) {
  const double frac = v - std::floor(v);
  return std::min(frac, 1.0 - frac);
}

std::optional<double> cap_of(const PhaseInstance& inst) {
  const auto it = inst.params.find("kappa_cap");
  if (it == inst.params.end()) return std::nullopt;
  return it->second;
}

}  // namespace

cplx DirichletPoly::operator()(double t) const { return eval_poly(first, a, t); }

cplx DirichletPoly::derivative(double t) const { return eval_poly(first, derivative_coeffs(*this), t); }

double DirichletPoly::mean_square(double t0, double t1) const { return closed_mean_square(first, a, t0, t1); }

double DirichletPoly::mean_square_derivative(double t0, double t1) const {
  return closed_mean_square(first, derivative_coeffs(*this), t0, t1);
}

double DirichletPoly::coefficient_energy() const {
  CompensatedSum s;
  for (const cplx& c : a) s.add(std::norm(c));
  return s.value();
}

DirichletPoly make_poly(double N, double N1, const std::function<cplx(std::int64_t)>& a) {
  DirichletPoly p;
  p.first = static_cast<std::int64_t>(std::floor(N)) + 1;
  for (std::int64_t n = p.first; n <= static_cast<std::int64_t>(std::floor(N1)); ++n) p.a.push_back(a(n));
  return p;
}

DiscreteMeanReport discrete_mean_check(const std::vector<double>& points, const DirichletPoly& S) {
  if (points.empty()) throw PreconditionError("discrete_mean_check needs at least one point");
  DiscreteMeanReport r;
  r.d = points.size() == 1 ? 1.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) throw PreconditionError("points must be strictly increasing");
    r.d = std::min(r.d, points[i] - points[i - 1]);
  }
  r.window_lo = points.front() - 0.5 * r.d;
  r.window_hi = points.back() + 0.5 * r.d;
  CompensatedSum lhs;
  for (double t : points) lhs.add(std::norm(S(t)));
  r.lhs = lhs.value();
  r.integral = S.mean_square(r.window_lo, r.window_hi);
  r.integral_derivative = S.mean_square_derivative(r.window_lo, r.window_hi);
  r.rhs = r.integral / r.d + 2.0 * std::sqrt(std::max(0.0, r.integral) * std::max(0.0, r.integral_derivative));
  const double q0 = quad_real([&](double t) { return std::norm(S(t)); }, r.window_lo, r.window_hi);
  const double q1 = quad_real([&](double t) { return std::norm(S.derivative(t)); }, r.window_lo, r.window_hi);
  r.quad_deviation = std::max(rel_gap(q0, r.integral), rel_gap(q1, r.integral_derivative));
  r.pass = r.lhs <= r.rhs;
  return r;
}

MeanValueReport mean_value_check(const DirichletPoly& S, double N, double N1, double X, double X1) {
  if (!(X > 0.0 && X < X1 && X1 <= 2.0 * X)) throw DomainError("mean_value_check needs 0 < X < X1 <= 2X");
  if (!(N >= 3.0 && N < N1 && N1 <= 2.0 * N)) throw DomainError("mean_value_check needs 3 <= N < N1 <= 2N");
  MeanValueReport r;
  r.integral = S.mean_square(X, X1);
  r.quadrature = quad_real([&](double t) { return std::norm(S(t)); }, X, X1);
  r.scale = (X + N * std::log(N)) * S.coefficient_energy();
  r.ratio = r.scale > 0.0 ? r.integral / r.scale : 0.0;
  r.pass = r.ratio <= kMeanValueCap;
  return r;
}

double mean_value_sweep(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double N = 3.0 + std::floor(uniform01(rng) * 126.0);
    const double N1 = N + 1.0 + std::floor(uniform01(rng) * N);
    const double X = 1.0 + uniform01(rng) * 255.0;
    const double X1 = X * (1.0 + std::max(1e-3, uniform01(rng)));
    const DirichletPoly S = make_poly(N, std::min(N1, 2.0 * N), [&](std::int64_t) {
      return std::polar(1.0, kTwoPi * uniform01(rng));
    });
    const double scale = (X + N * std::log(N)) * S.coefficient_energy();
    worst = std::max(worst, S.mean_square(X, X1) / scale);
  }
  return worst;
}

double PhaseInstance::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw PreconditionError("instance " + name + " lacks parameter " + key);
  return it->second;
}

PhaseInstance linear_phase(double slope, double offset) {
  PhaseInstance p;
  p.f = {[=](double x) { return slope * x + offset; }, [=](double) { return slope; }, [](double) { return 0.0; },
         [](double) { return 0.0; }, [](double) { return 0.0; }};
  set_amplitude(p, 1.0);
  return p;
}

PhaseInstance log_phase(double c) {
  PhaseInstance p;
  p.f = {[=](double x) { return c * std::log(x); }, [=](double x) { return c / x; },
         [=](double x) { return -c / (x * x); }, [=](double x) { return 2.0 * c / (x * x * x); },
         [=](double x) { return -6.0 * c / (x * x * x * x); }};
  set_amplitude(p, 1.0);
  return p;
}

PhaseInstance quadratic_phase(double A, double slope) {
  PhaseInstance p;
  p.f = {[=](double x) { return x * x / (2.0 * A) + slope * x; }, [=](double x) { return x / A + slope; },
         [=](double) { return 1.0 / A; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
  set_amplitude(p, 1.0);
  return p;
}

void set_amplitude(PhaseInstance& inst, double h, double exponent) {
  if (exponent == 0.0) {
    inst.phi = [=](double) { return h; };
    inst.dphi = [](double) { return 0.0; };
  } else {
    inst.phi = [=](double x) { return h * std::pow(x, exponent); };
    inst.dphi = [=](double x) { return h * exponent * std::pow(x, exponent - 1.0); };
  }
}

double derivative_consistency(const PhaseInstance& inst) {
  double worst = 0.0;
  auto check = [&](const std::function<double(double)>& g, const std::function<double(double)>& dg) {
    for (double x : samples(inst.a, inst.b, 20)) {
      const double h = 1e-4 * std::max(1.0, std::abs(x));
      const double cd = (g(x + h) - g(x - h)) / (2.0 * h);
      const double ref = dg(x);
      if (cd == ref) continue;
      worst = std::max(worst, std::abs(cd - ref) / std::max(std::abs(ref), 1e-300));
    }
  };
  for (std::size_t j = 0; j + 1 < inst.f.size(); ++j) check(inst.f[j], inst.f[j + 1]);
  check(inst.phi, inst.dphi);
  return worst;
}

SumIntegralReport sum_vs_integral_check(const PhaseInstance& inst) {
  const double H = inst.param("H"), U = inst.param("U"), C = inst.param("C");
  if (!(C < 1.0)) throw PreconditionError(inst.name + ": C must be < 1");
  if (!(inst.b > inst.a && inst.b - inst.a <= U)) throw PreconditionError(inst.name + ": need 0 < b - a <= U");
  SumIntegralReport r;
  bool pos = true, neg = true;
  for (double x : samples(inst.a, inst.b, kSamples)) {
    r.max_fprime = std::max(r.max_fprime, std::abs(inst.f[1](x)));
    const double f2 = inst.f[2](x);
    pos = pos && f2 >= 0.0;
    neg = neg && f2 <= 0.0;
    if (std::abs(inst.phi(x)) > H * (1.0 + 1e-12)) throw PreconditionError(inst.name + ": |phi| exceeds H");
    r.amplitude_slope = std::max(r.amplitude_slope, std::abs(inst.dphi(x)) * U / H);
  }
  if (!(r.max_fprime < C)) throw PreconditionError(inst.name + ": |f'| reaches C on the sample grid");
  if (!pos && !neg) throw PreconditionError(inst.name + ": f'' changes sign");

  r.sum = direct_sum(inst);
  const QuadResult q = integrate(
      [&](double x) { return inst.phi(x) * std::polar(1.0, kTwoPi * inst.f[0](x)); }, inst.a, inst.b, kQuadTol,
      0.0, 20000);
  if (!q.converged) throw NumericError(inst.name + ": quadrature did not converge", q.value, q.error);
  r.integral = q.value;
  r.quad_error = q.error;
  r.difference = std::abs(r.sum - r.integral);
  r.kappa = r.difference / H;
  const bool closed_form = std::all_of(std::begin(kLinearKeys), std::end(kLinearKeys),
                                       [&](const char* k) { return inst.params.count(k) > 0; });
  if (closed_form && inst.param("exponent") == 0.0) {
    const double p = inst.param("slope"), h = inst.param("h");
    const cplx closed = p == 0.0 ? cplx(h * (inst.b - inst.a), 0.0) * std::polar(1.0, kTwoPi * inst.f[0](inst.a))
                                 : h * (std::polar(1.0, kTwoPi * inst.f[0](inst.b)) -
                                        std::polar(1.0, kTwoPi * inst.f[0](inst.a))) /
                                       cplx(0.0, kTwoPi * p);
    r.closed_form_deviation = std::abs(closed - r.integral) / std::max(1.0, std::abs(closed));
  }
  const auto cap = cap_of(inst);
  r.pass = !cap || r.kappa <= *cap;
  return r;
}

StationaryPhaseReport stationary_phase_check(const PhaseInstance& inst) {
  const double H = inst.param("H"), A = inst.param("A");
  if (!(A >= 1.0)) throw PreconditionError(inst.name + ": need A >= 1");
  if (!(inst.b > inst.a)) throw PreconditionError(inst.name + ": need a < b");
  for (double x : samples(inst.a, inst.b, kSamples)) {
    const double af2 = A * inst.f[2](x);
    if (!(af2 >= 0.1 && af2 <= 10.0)) throw PreconditionError(inst.name + ": A f'' leaves [0.1, 10]");
    if (std::abs(inst.phi(x)) > H * (1.0 + 1e-12)) throw PreconditionError(inst.name + ": |phi| exceeds H");
  }
  const auto& fp = inst.f[1];
  const auto& f2 = inst.f[2];
  const double fa = fp(inst.a), fb = fp(inst.b);
  StationaryPhaseReport r;
  r.n_lo = static_cast<std::int64_t>(std::ceil(fa - kIntegerGuard));
  r.n_hi = static_cast<std::int64_t>(std::floor(fb + kIntegerGuard));
  CompensatedComplexSum transformed;
  for (std::int64_t n = r.n_lo; n <= r.n_hi; ++n) {
    const double nd = static_cast<double>(n);
    const bool at_a = std::abs(nd - fa) < kIntegerGuard, at_b = std::abs(nd - fb) < kIntegerGuard;
    double x;
    if (at_a) {
      x = inst.a;
    } else if (at_b) {
      x = inst.b;
    } else {
      double lo = inst.a, hi = inst.b;
      x = 0.5 * (lo + hi);
      for (int it = 0; it < 200; ++it) {
        const double g = fp(x) - nd;
        if (std::abs(g) <= 1e-14 * std::max(1.0, std::abs(nd))) break;
        (g < 0.0 ? lo : hi) = x;
        const double next = x - g / f2(x);
        x = next > lo && next < hi ? next : 0.5 * (lo + hi);
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(x))) break;
      }
    }
    const double resid = std::abs(fp(x) - nd);
    r.newton_residual = std::max(r.newton_residual, resid);
    if (!(resid <= 1e-12)) {
      throw NumericError(inst.name + ": Newton did not converge for n = " + std::to_string(n));
    }
    const double weight = at_a || at_b ? 0.5 : 1.0;
    const cplx z = std::polar(inst.phi(x) / std::sqrt(f2(x)), kPi / 4.0 + kTwoPi * (inst.f[0](x) - nd * x));
    transformed.add(weight * z);
  }
  r.direct = direct_sum(inst);
  r.transformed = transformed.value();
  r.residual = std::abs(r.direct - r.transformed);
  auto T = [&](double v) {
    const double dist = distance_to_integer(v);
    return dist < kIntegerGuard ? 0.0 : std::min(1.0 / dist, std::sqrt(A));
  };
  r.scale = H * (T(fa) + T(fb) + std::log(fb - fa + 2.0));
  r.kappa = r.residual / r.scale;
  const auto cap = cap_of(inst);
  r.pass = !cap || r.kappa <= *cap;
  return r;
}

DualSumReport dual_sum_check(double V, double L1, double L0, std::optional<double> kappa_cap) {
  if (!(V > 0.0 && L1 > 0.0 && L1 < L0)) throw DomainError("dual_sum_check needs V > 0 and 0 < L1 < L0");
  if (!(2.0 * V > kPi * L1)) throw DomainError("dual_sum_check needs 2V > pi L1");
  DualSumReport r;
  CompensatedComplexSum direct;
  for (auto l = static_cast<std::int64_t>(std::floor(L1)) + 1; l <= static_cast<std::int64_t>(std::floor(L0)); ++l) {
    direct.add(std::polar(1.0, -V * std::log(static_cast<double>(l))));
  }
  r.direct = direct.value();
  const double N1 = V / (kTwoPi * L0), N2 = V / (kTwoPi * L1);
  r.n_lo = static_cast<std::int64_t>(std::ceil(N1));
  r.n_hi = static_cast<std::int64_t>(std::floor(N2));
  CompensatedComplexSum dual;
  for (std::int64_t n = r.n_lo; n <= r.n_hi; ++n) {
    const double nd = static_cast<double>(n);
    dual.add(std::polar(1.0 / nd, V * std::log(nd)));
  }
  const double phase = kPi / 4.0 - V * std::log(V / (kTwoPi * std::numbers::e));
  r.transformed = std::polar(std::sqrt(V / kTwoPi), phase) * dual.value();

  PhaseInstance inst = log_phase(-V / kTwoPi);
  inst.name = "dual";
  inst.a = L1;
  inst.b = L0;
  inst.params = {{"H", 1.0}, {"A", kTwoPi * L1 * L0 / V}};
  r.lemma_sum = stationary_phase_check(inst).transformed;

  r.residual = std::abs(r.direct - r.transformed);
  r.scale = L1 / std::sqrt(V);
  r.kappa = r.residual / r.scale;
  r.pass = !kappa_cap || r.kappa <= *kappa_cap;
  return r;
}

std::vector<CorpusEntry> parse_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    CorpusEntry e;
    while (tokens >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size()) {
        throw PreconditionError("corpus line " + std::to_string(line_no) + ": expected key=value, got '" + tok + "'");
      }
      e.fields[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    if (e.fields.empty()) continue;
    if (!e.fields.count("name") || !e.fields.count("check")) {
      throw PreconditionError("corpus line " + std::to_string(line_no) + ": name and check are required");
    }
    e.name = e.fields.at("name");
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

double number(const CorpusEntry& e, const std::string& key) {
  const auto it = e.fields.find(key);
  if (it == e.fields.end()) throw PreconditionError(e.name + ": missing field " + key);
  double v = 0.0;
  const auto& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw PreconditionError(e.name + ": field " + key + " is not a number: '" + s + "'");
  }
  return v;
}

double number_or(const CorpusEntry& e, const std::string& key, double fallback) {
  return e.fields.count(key) ? number(e, key) : fallback;
}

std::string text(const CorpusEntry& e, const std::string& key) {
  const auto it = e.fields.find(key);
  if (it == e.fields.end()) throw PreconditionError(e.name + ": missing field " + key);
  return it->second;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) parts.push_back(cur);
  return parts;
}

DirichletPoly corpus_poly(const CorpusEntry& e) {
  const double N = number(e, "N"), N1 = number(e, "N1");
  const std::string kind = text(e, "coeffs");
  if (kind == "ones") return make_poly(N, N1, [](std::int64_t) { return cplx(1.0, 0.0); });
  if (kind == "pm1") {
    std::mt19937_64 rng(static_cast<std::uint64_t>(number(e, "seed")));
    return make_poly(N, N1, [&](std::int64_t) { return cplx((rng() & 1) ? 1.0 : -1.0, 0.0); });
  }
  if (kind == "unit") {
    std::mt19937_64 rng(static_cast<std::uint64_t>(number(e, "seed")));
    return make_poly(N, N1, [&](std::int64_t) { return std::polar(1.0, kTwoPi * uniform01(rng)); });
  }
  if (kind == "cf") {
    const LFunction L(12);
    const auto cfg = MollifierConfig::make(number(e, "T1"), static_cast<int>(number(e, "delta")));
    const auto c = conv_coeffs(L.table(), cfg, cfg.T1 / kTwoPi);
    if (std::floor(N1) >= static_cast<double>(c.size())) throw PreconditionError(e.name + ": N1 beyond X y");
    return make_poly(N, N1, [&](std::int64_t n) { return cplx(c[static_cast<std::size_t>(n)], 0.0); });
  }
  throw PreconditionError(e.name + ": unknown coefficient family '" + kind + "'");
}

std::vector<double> corpus_points(const CorpusEntry& e) {
  const auto parts = split(text(e, "points"), ':');
  auto part = [&](std::size_t i) {
    if (i >= parts.size()) throw PreconditionError(e.name + ": malformed points field");
    CorpusEntry tmp{e.name, {{"v", parts[i]}}};
    return number(tmp, "v");
  };
  std::vector<double> pts;
  if (parts[0] == "single") {
    pts.push_back(part(1));
  } else if (parts[0] == "unit") {
    const auto count = static_cast<int>(part(1));
    for (int i = 0; i < count; ++i) pts.push_back(part(2) + i);
  } else if (parts[0] == "zeros") {
    const LFunction L(12);
    const double t0 = part(1), t1 = part(2);
    for (const auto& z : scan_zeros(L, t0, t1, 0.05)) {
      if (z.gamma > t0) pts.push_back(z.gamma);
    }
  } else {
    throw PreconditionError(e.name + ": unknown points kind '" + parts[0] + "'");
  }
  return pts;
}

PhaseInstance corpus_phase(const CorpusEntry& e) {
  const std::string kind = text(e, "phase");
  PhaseInstance p;
  if (kind == "linear") {
    p = linear_phase(number(e, "slope"), number_or(e, "offset", 0.0));
    p.params["slope"] = number(e, "slope");
    p.params["offset"] = number_or(e, "offset", 0.0);
  } else if (kind == "log") {
    p = log_phase(number(e, "c"));
  } else if (kind == "quadratic") {
    p = quadratic_phase(number(e, "A"), number_or(e, "slope", 0.0));
  } else {
    throw PreconditionError(e.name + ": unknown phase family '" + kind + "'");
  }
  const double h = number_or(e, "h", 1.0), ex = number_or(e, "exponent", 0.0);
  set_amplitude(p, h, ex);
  p.params["h"] = h;
  p.params["exponent"] = ex;
  p.name = e.name;
  p.a = number(e, "a");
  p.b = number(e, "b");
  for (const char* key : {"H", "U", "C", "A", "kappa_cap"}) {
    if (e.fields.count(key)) p.params[key] = number(e, key);
  }
  return p;
}

}  // namespace

LemmaResult run_entry(const CorpusEntry& e) {
  LemmaResult r;
  r.name = e.name;
  r.check = text(e, "check");
  if (r.check == "discrete_mean") {
    r.family = text(e, "coeffs");
    const auto rep = discrete_mean_check(corpus_points(e), corpus_poly(e));
    r.lhs = rep.lhs;
    r.rhs = rep.rhs;
    r.measured = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
    r.cap = 1.0;
    r.capped = true;
    r.quad_deviation = rep.quad_deviation;
    r.pass = rep.pass && rep.quad_deviation <= kQuadAgreement;
  } else if (r.check == "mean_value") {
    r.family = text(e, "coeffs");
    r.cap = kMeanValueCap;
    r.capped = true;
    if (r.family == "sweep") {
      r.measured =
          mean_value_sweep(static_cast<int>(number(e, "trials")), static_cast<std::uint64_t>(number(e, "seed")));
      r.pass = r.measured <= kMeanValueCap;
    } else {
      const auto rep =
          mean_value_check(corpus_poly(e), number(e, "N"), number(e, "N1"), number(e, "X"), number(e, "X1"));
      r.lhs = rep.integral;
      r.rhs = rep.scale;
      r.measured = rep.ratio;
      r.quad_deviation = rel_gap(rep.quadrature, rep.integral);
      r.pass = rep.pass && r.quad_deviation <= kQuadAgreement;
    }
  } else if (r.check == "sum_integral" || r.check == "stationary_phase") {
    const PhaseInstance p = corpus_phase(e);
    r.family = text(e, "phase");
    r.cap = cap_of(p);
    r.capped = r.cap.has_value();
    if (derivative_consistency(p) > 1e-6) throw PreconditionError(e.name + ": derivative callables inconsistent");
    if (r.check == "sum_integral") {
      const auto rep = sum_vs_integral_check(p);
      r.lhs = rep.difference;
      r.rhs = p.param("H");
      r.measured = rep.kappa;
      r.quad_deviation = rep.closed_form_deviation.value_or(0.0);
      r.pass = rep.pass && r.quad_deviation <= kQuadAgreement;
    } else {
      const auto rep = stationary_phase_check(p);
      r.lhs = rep.residual;
      r.rhs = rep.scale;
      r.measured = rep.kappa;
      r.pass = rep.pass;
    }
  } else if (r.check == "dual_sum") {
    r.family = "log";
    if (e.fields.count("kappa_cap")) r.cap = number(e, "kappa_cap");
    r.capped = r.cap.has_value();
    const auto rep = dual_sum_check(number(e, "V"), number(e, "L1"), number(e, "L0"), r.cap);
    r.lhs = rep.residual;
    r.rhs = rep.scale;
    r.measured = rep.kappa;
    r.quad_deviation = std::abs(rep.lemma_sum - rep.transformed);
    r.pass = rep.pass && r.quad_deviation <= kQuadAgreement;
  } else {
    throw PreconditionError(e.name + ": unknown check '" + r.check + "'");
  }
  return r;
}

std::vector<LemmaResult> run_corpus(const std::vector<CorpusEntry>& entries) {
  std::vector<LemmaResult> out(entries.size());
  detail::parallel_for(entries.size(), [&](std::size_t i) { out[i] = run_entry(entries[i]); });
  return out;
}

}  // namespace lfd
