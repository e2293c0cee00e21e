#include "torus_cauchy/symbol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "torus_cauchy/error.hpp"
#include "torus_cauchy/quadrature.hpp"

namespace torus {
namespace {

using quadrature::GaussKronrod15;

struct Panel {
  double a = 0.0;
  double b = 0.0;
  LogComplex kronrod;
  double err_log = 0.0;
  double abs_log = 0.0;
};

/// Log of a sum of nonnegative reals given by their logs.
double log_sum_abs(const std::vector<double>& logs) {
  LogSum s;
  for (double l : logs) s.add(LogComplex{l, 0.0});
  return s.value().logmag;
}

template <class Integrand>
Panel gauss_kronrod_panel(const Integrand& h, double a, double b) {
  const auto x = GaussKronrod15::nodes(a, b);
  const double half = 0.5 * (b - a);
  LogSum kronrod;
  LogSum gauss;
  LogSum abs_sum;
  for (int i = 0; i < 15; ++i) {
    const LogComplex v = h(x[static_cast<std::size_t>(i)]);
    if (v.is_zero()) continue;
    const double wk = std::log(half * GaussKronrod15::kronrod_weight(i));
    kronrod.add(LogComplex{v.logmag + wk, v.phase});
    abs_sum.add(LogComplex{v.logmag + wk, 0.0});
    const double wg = GaussKronrod15::gauss_weight(i);
    if (wg > 0.0) gauss.add(LogComplex{v.logmag + std::log(half * wg), v.phase});
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.kronrod = kronrod.value();
  p.err_log = (p.kronrod - gauss.value()).logmag;
  p.abs_log = abs_sum.value().logmag;
  return p;
}

template <class Integrand>
LogComplex fixed_gauss_legendre(const Integrand& h, double t, int panels) {
  LogSum total;
  for (int k = 0; k < panels; ++k) {
    const double a = t * k / panels;
    const double b = t * (k + 1) / panels;
    const auto x = GaussKronrod15::nodes(a, b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < 15; ++i) {
      const double wg = GaussKronrod15::gauss_weight(i);
      if (wg == 0.0) continue;
      const LogComplex v = h(x[static_cast<std::size_t>(i)]);
      if (v.is_zero()) continue;
      total.add(LogComplex{v.logmag + std::log(half * wg), v.phase});
    }
  }
  return total.value();
}

template <class Integrand>
LogComplex adaptive_gauss_kronrod(const Integrand& h, double t, const QuadratureOptions& opt, double noise) {
  const auto initial =
      static_cast<std::size_t>(std::max(1.0, std::ceil(opt.nodes_per_unit * t / 15.0)));
  std::vector<Panel> panels;
  panels.reserve(initial);
  for (std::size_t k = 0; k < initial; ++k) {
    panels.push_back(gauss_kronrod_panel(h, t * static_cast<double>(k) / static_cast<double>(initial),
                                         t * static_cast<double>(k + 1) / static_cast<double>(initial)));
  }
  const double log_rel = std::log(opt.rel_tol);
  // Below the evaluation noise of the integrand no amount of splitting helps.
  const double log_abs_share = std::log(std::max(1e-4 * opt.rel_tol, noise));
  std::vector<double> errs;
  std::vector<double> abss;
  while (true) {
    LogSum total;
    errs.clear();
    abss.clear();
    for (const auto& p : panels) {
      total.add(p.kronrod);
      errs.push_back(p.err_log);
      abss.push_back(p.abs_log);
    }
    const LogComplex value = total.value();
    const double err = log_sum_abs(errs);
    const double scale = log_sum_abs(abss);
    if (scale == -std::numeric_limits<double>::infinity()) return LogComplex::zero();
    const double target = log_sum_abs({log_rel + value.logmag, log_abs_share + scale});
    if (err <= target) return value;

    const double per_panel = target - std::log(static_cast<double>(panels.size()));
    std::vector<Panel> next;
    next.reserve(2 * panels.size());
    bool split = false;
    for (const auto& p : panels) {
      if (p.err_log > per_panel) {
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {
          throw Error(ErrorCode::QuadratureFailure, "Duhamel panel width reached machine resolution");
        }
        next.push_back(gauss_kronrod_panel(h, p.a, m));
        next.push_back(gauss_kronrod_panel(h, m, p.b));
        split = true;
      } else {
        next.push_back(p);
      }
    }
    if (!split) {
      // The error sum is above target although no single panel is: refine the worst.
      auto worst = std::max_element(next.begin(), next.end(),
                                    [](const Panel& x, const Panel& y) { return x.err_log < y.err_log; });
      const Panel p = *worst;
      const double m = 0.5 * (p.a + p.b);
      *worst = gauss_kronrod_panel(h, p.a, m);
      next.push_back(gauss_kronrod_panel(h, m, p.b));
    }
    panels = std::move(next);
    if (panels.size() > opt.max_panels) {
      throw Error(ErrorCode::QuadratureFailure,
                  "Duhamel quadrature exceeded " + std::to_string(opt.max_panels) + " panels");
    }
  }
}

}  // namespace

double norm_squared(const Frequency& xi) {
  double s = 0.0;
  for (int v : xi) s += static_cast<double>(v) * static_cast<double>(v);
  return s;
}

double norm(const Frequency& xi) { return std::sqrt(norm_squared(xi)); }

void SymbolSpec::validate() const {
  const auto fail = [](const std::string& m) { throw Error(ErrorCode::MalformedStructure, m); };
  if (dimension < 1) fail("dimension must be positive");
  if (static_cast<int>(a1.size()) != dimension) fail("a1 must have one coefficient per dimension");
  const auto same = [this](const TimeCoefficient& c) { return c.horizon() == horizon; };
  if (!same(a2) || !same(a0) || !std::all_of(a1.begin(), a1.end(), same)) {
    fail("all coefficients must share the horizon");
  }
  if (!extra_monomials.empty() && dimension != 1) fail("extra monomials require dimension 1");
  for (const auto& m : extra_monomials) {
    if (m.degree < 3) fail("extra monomial degree must be >= 3");
    if (!same(m.coefficient)) fail("all coefficients must share the horizon");
  }
}

Complex symbol_value(const SymbolSpec& spec, double t, const Frequency& xi) {
  Complex q = spec.a2.eval(t) * norm_squared(xi) + spec.a0.eval(t);
  for (std::size_t j = 0; j < spec.a1.size(); ++j) {
    if (xi[j] != 0) q += spec.a1[j].eval(t) * static_cast<double>(xi[j]);
  }
  for (const auto& m : spec.extra_monomials) {
    q += m.coefficient.eval(t) * std::pow(static_cast<double>(xi[0]), m.degree);
  }
  return q;
}

Complex exponent_increment(const SymbolSpec& spec, double s, double t, const Frequency& xi) {
  Complex e = spec.a2.primitive_diff(s, t) * norm_squared(xi) + spec.a0.primitive_diff(s, t);
  for (std::size_t j = 0; j < spec.a1.size(); ++j) {
    if (xi[j] != 0) e += spec.a1[j].primitive_diff(s, t) * static_cast<double>(xi[j]);
  }
  for (const auto& m : spec.extra_monomials) {
    e += m.coefficient.primitive_diff(s, t) * std::pow(static_cast<double>(xi[0]), m.degree);
  }
  return e;
}

LogComplex homogeneous_exponent(const SymbolSpec& spec, double t, const Frequency& xi) {
  if (t == 0.0) return LogComplex::one();
  const Complex e = exponent_increment(spec, 0.0, t, xi);
  return LogComplex::polar(e.imag(), -e.real());
}

LogComplex duhamel_coefficient(const SymbolSpec& spec, const LogComplex& g, const Forcing& f, double t,
                               const Frequency& xi, const QuadratureOptions& options) {
  if (options.nodes_per_unit < 1) throw Error(ErrorCode::InvalidArgument, "nodes_per_unit must be >= 1");
  if (t == 0.0) return g;
  const LogComplex homogeneous = g.is_zero() ? LogComplex::zero() : g * homogeneous_exponent(spec, t, xi);
  if (!f) return homogeneous;

  const auto integrand = [&](double s) {
    const LogComplex fs = f(s);
    if (fs.is_zero()) return fs;
    const Complex e = exponent_increment(spec, s, t, xi);
    return LogComplex::polar(fs.logmag + e.imag(), fs.phase - e.real());
  };
  LogComplex integral;
  if (options.adaptive) {
    // The phase -Re E(s, t) is accurate to about eps times the size of the
    // terms it is assembled from, which sets the attainable absolute accuracy
    // relative to the integral of |integrand|.
    double phase_scale = 0.0;
    for (int k = 0; k <= 8; ++k) {
      const double s = t * k / 8.0;
      double size = std::abs(spec.a2.primitive_diff(s, t)) * norm_squared(xi) + std::abs(spec.a0.primitive_diff(s, t));
      for (std::size_t j = 0; j < spec.a1.size(); ++j) {
        size += std::abs(spec.a1[j].primitive_diff(s, t)) * std::abs(static_cast<double>(xi[j]));
      }
      for (const auto& m : spec.extra_monomials) {
        size += std::abs(m.coefficient.primitive_diff(s, t)) * std::pow(std::abs(static_cast<double>(xi[0])), m.degree);
      }
      phase_scale = std::max(phase_scale, size);
    }
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() * phase_scale;
    integral = adaptive_gauss_kronrod(integrand, t, options, noise);
  } else {
    const int panels = std::max(1, static_cast<int>(std::ceil(options.nodes_per_unit * t / 7.0)));
    integral = fixed_gauss_legendre(integrand, t, panels);
  }
  const LogComplex i_unit{0.0, 0.5 * std::numbers::pi};
  return homogeneous + i_unit * integral;
}

namespace {

Complex rk4_run(const SymbolSpec& spec, Complex g, const std::function<Complex(double)>& f, double t,
                const Frequency& xi, int steps) {
  const double h = t / steps;
  const double limit = std::exp(kOverflowGuard);
  const Complex i_unit{0.0, 1.0};
  const auto rhs = [&](double s, Complex u) {
    Complex d = -i_unit * symbol_value(spec, s, xi) * u;
    if (f) d += i_unit * f(s);
    return d;
  };
  Complex u = g;
  for (int k = 0; k < steps; ++k) {
    const double s = t * k / steps;
    const Complex k1 = rhs(s, u);
    const Complex k2 = rhs(s + 0.5 * h, u + 0.5 * h * k1);
    const Complex k3 = rhs(s + 0.5 * h, u + 0.5 * h * k2);
    const Complex k4 = rhs(std::min(s + h, t), u + h * k3);
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(std::abs(u) < limit)) {
      throw Error(ErrorCode::OverflowGuard, "RK4 trajectory left the representable range");
    }
  }
  return u;
}

}  // namespace

Rk4Result rk4_oracle(const SymbolSpec& spec, Complex g, const std::function<Complex(double)>& f, double t,
                     const Frequency& xi, int steps) {
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "rk4_oracle needs at least two steps");
  if (t == 0.0) return {g, false};
  Rk4Result r;
  r.value = rk4_run(spec, g, f, t, xi, steps);
  const Complex coarse = rk4_run(spec, g, f, t, xi, steps / 2);
  r.steps_too_coarse = std::abs(coarse - r.value) > 1e-6 * std::abs(r.value);
  return r;
}

}  // namespace torus
