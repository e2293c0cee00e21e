#include "torus_cauchy/time_coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "torus_cauchy/error.hpp"
#include "torus_cauchy/quadrature.hpp"

namespace torus {
namespace {

constexpr int kTableCells = 256;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Complex horner(const std::vector<Complex>& c, double t) {
  Complex acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Complex poly_antiderivative(const std::vector<Complex>& c, double t) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k] / static_cast<double>(k + 1);
  return acc * t;
}

/// int_s^t p via the Taylor expansion of p at s, so that close s, t do not
/// cancel.
Complex poly_integral(const std::vector<Complex>& c, double s, double t) {
  if (c.empty()) return {0.0, 0.0};
  std::vector<Complex> taylor = c;
  const std::size_t n = taylor.size();
  // Repeated synthetic division turns coefficients in t into coefficients in (t - s).
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t j = n - 1; j > k; --j) taylor[j - 1] += s * taylor[j];
  }
  return poly_antiderivative(taylor, t - s);
}

Complex flat_exp_derivative_value(const coeff::Named& p, double t) {
  if (t <= 0.0) return {0.0, 0.0};
  const double logv = -p.rate / (t * t) + std::log(2.0 * p.rate) - 3.0 * std::log(t);
  return p.amplitude * std::exp(logv);
}

Complex flat_exp_value(const coeff::Named& p, double t) {
  if (t <= 0.0) return {0.0, 0.0};
  return p.amplitude * std::exp(-p.rate / (t * t));
}

/// int_0^t exp(-k/s^2) ds = t exp(-k/t^2) - sqrt(pi k) erfc(sqrt(k)/t).
double flat_exp_primitive_unit(double k, double t) {
  if (t <= 0.0) return 0.0;
  return t * std::exp(-k / (t * t)) - std::sqrt(std::numbers::pi * k) * std::erfc(std::sqrt(k) / t);
}

/// exp(-k/t^2) - exp(-k/s^2) without cancellation.
double flat_exp_difference(double k, double s, double t) {
  if (s <= 0.0 && t <= 0.0) return 0.0;
  if (s <= 0.0) return std::exp(-k / (t * t));
  if (t <= 0.0) return -std::exp(-k / (s * s));
  const double arg = k * (t - s) * (t + s) / (s * s * t * t);
  // Far from cancellation the plain difference is accurate, and the product
  // form would hit 0 * inf once exp(-k/s^2) underflows.
  if (std::abs(arg) > 1.0) return std::exp(-k / (t * t)) - std::exp(-k / (s * s));
  return std::exp(-k / (s * s)) * std::expm1(arg);
}

Complex factored_value(const coeff::Factored& f, double t) {
  Complex r = horner(f.remainder, t);
  if (r == Complex{0.0, 0.0}) return r;
  double factor = 1.0;
  for (const auto& z : f.zeros) factor *= std::pow(std::abs(t - z.zero), z.order);
  return r * factor;
}

/// Index of the grid cell containing t for a uniform grid with `cells` cells.
std::size_t cell_of(double t, double h, std::size_t cells) {
  auto i = static_cast<std::size_t>(std::max(0.0, std::floor(t / h)));
  return std::min(i, cells - 1);
}

Complex sampled_value(const coeff::Sampled& smp, double horizon, double t) {
  const std::size_t m = smp.values.size();
  const std::size_t cells = m - 1;
  const double h = horizon / static_cast<double>(cells);
  const std::size_t i = cell_of(t, h, cells);
  // Stencil of up to four nodes around cell i, shifted to stay inside the grid.
  const std::size_t width = std::min<std::size_t>(4, m);
  std::size_t first = i > 0 ? i - 1 : 0;
  if (first + width > m) first = m - width;
  Complex acc{0.0, 0.0};
  for (std::size_t a = first; a < first + width; ++a) {
    double w = 1.0;
    const double xa = static_cast<double>(a) * h;
    for (std::size_t b = first; b < first + width; ++b) {
      if (b == a) continue;
      const double xb = static_cast<double>(b) * h;
      w *= (t - xb) / (xa - xb);
    }
    acc += w * smp.values[a];
  }
  return acc;
}

void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

}  // namespace

void VanishingProfile::validate(bool leading) const {
  require(std::isfinite(zero), ErrorCode::MalformedStructure, "zero location must be finite");
  if (leading) {
    require(order > 0.0, ErrorCode::MalformedStructure, "leading vanishing order must be > 0");
  } else {
    require(order >= 0.0, ErrorCode::MalformedStructure, "drift vanishing order must be >= 0");
  }
  require(factor_lower > 0.0 && factor_lower <= factor_upper, ErrorCode::MalformedStructure,
          "factor bounds must satisfy 0 < lower <= upper");
}

TimeCoefficient::TimeCoefficient(double horizon, Form form) : horizon_(horizon), form_(std::move(form)) {
  require(std::isfinite(horizon_) && horizon_ > 0.0, ErrorCode::InvalidArgument,
          "horizon must be positive and finite");

  std::visit(Overloaded{
                 [](const coeff::Polynomial& p) {
                   for (const auto& c : p.coefficients)
                     require(std::isfinite(c.real()) && std::isfinite(c.imag()),
                             ErrorCode::InvalidArgument, "polynomial coefficients must be finite");
                 },
                 [this](coeff::Factored& f) {
                   for (const auto& z : f.zeros) {
                     z.validate(true);
                     require(z.zero >= 0.0 && z.zero <= horizon_, ErrorCode::MalformedStructure,
                             "declared zero outside [0, T]");
                   }
                   std::sort(f.zeros.begin(), f.zeros.end(),
                             [](const auto& a, const auto& b) { return a.zero < b.zero; });
                   for (std::size_t k = 1; k < f.zeros.size(); ++k)
                     require(f.zeros[k].zero > f.zeros[k - 1].zero, ErrorCode::MalformedStructure,
                             "declared zeros must be pairwise distinct");
                 },
                 [](const coeff::Named& n) {
                   require(n.rate > 0.0 && std::isfinite(n.rate), ErrorCode::InvalidArgument,
                           "named profile rate must be positive");
                 },
                 [](const coeff::Sampled& s) {
                   require(s.values.size() >= 2, ErrorCode::InvalidArgument,
                           "sampled coefficient needs at least two values");
                 },
             },
             form_);

  if (const auto* f = std::get_if<coeff::Factored>(&form_)) {
    auto table = std::make_shared<PrimitiveTable>();
    table->rule = "adaptive-simpson";
    table->tolerance = quadrature::kPrimitiveTolerance;
    std::vector<double> nodes;
    for (int i = 0; i <= kTableCells; ++i) nodes.push_back(horizon_ * i / kTableCells);
    for (const auto& z : f->zeros) nodes.push_back(z.zero);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    table->nodes = nodes;
    table->cumulative.assign(nodes.size(), Complex{0.0, 0.0});
    const auto fn = [f](double t) { return factored_value(*f, t); };
    const double cell_tol = quadrature::kPrimitiveTolerance / static_cast<double>(nodes.size());
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      table->cumulative[i] =
          table->cumulative[i - 1] + quadrature::adaptive_simpson(fn, nodes[i - 1], nodes[i], cell_tol);
    }
    table_ = std::move(table);
  } else if (const auto* s = std::get_if<coeff::Sampled>(&form_)) {
    auto table = std::make_shared<PrimitiveTable>();
    table->rule = "piecewise-cubic-exact";
    table->tolerance = 0.0;
    const std::size_t cells = s->values.size() - 1;
    const double h = horizon_ / static_cast<double>(cells);
    table->nodes.resize(cells + 1);
    table->cumulative.assign(cells + 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i <= cells; ++i) table->nodes[i] = h * static_cast<double>(i);
    table->nodes.back() = horizon_;
    for (std::size_t i = 1; i <= cells; ++i)
      table->cumulative[i] = table->cumulative[i - 1] + integrate_direct(table->nodes[i - 1], table->nodes[i]);
    table_ = std::move(table);
  }
}

TimeCoefficient TimeCoefficient::zero(double horizon) { return polynomial(horizon, {}); }

TimeCoefficient TimeCoefficient::constant(double horizon, Complex value) {
  return polynomial(horizon, {value});
}

TimeCoefficient TimeCoefficient::polynomial(double horizon, std::vector<Complex> coefficients) {
  return TimeCoefficient(horizon, coeff::Polynomial{std::move(coefficients)});
}

TimeCoefficient TimeCoefficient::factored(double horizon, std::vector<VanishingProfile> zeros,
                                          std::vector<Complex> remainder) {
  return TimeCoefficient(horizon, coeff::Factored{std::move(zeros), std::move(remainder)});
}

TimeCoefficient TimeCoefficient::named(double horizon, coeff::NamedProfile profile, Complex amplitude,
                                       double rate) {
  return TimeCoefficient(horizon, coeff::Named{profile, amplitude, rate});
}

TimeCoefficient TimeCoefficient::sampled(double horizon, std::vector<Complex> values) {
  return TimeCoefficient(horizon, coeff::Sampled{std::move(values)});
}

double TimeCoefficient::checked_time(double t) const {
  const double slack = 1e-12 * std::max(1.0, horizon_);
  if (!(t >= -slack && t <= horizon_ + slack)) {
    throw Error(ErrorCode::OutOfHorizon,
                "t = " + std::to_string(t) + " outside [0, " + std::to_string(horizon_) + "]");
  }
  return std::clamp(t, 0.0, horizon_);
}

Complex TimeCoefficient::eval(double t) const {
  t = checked_time(t);
  return std::visit(Overloaded{
                        [t](const coeff::Polynomial& p) { return horner(p.coefficients, t); },
                        [t](const coeff::Factored& f) { return factored_value(f, t); },
                        [t](const coeff::Named& n) {
                          return n.profile == coeff::NamedProfile::FlatExpDerivative
                                     ? flat_exp_derivative_value(n, t)
                                     : flat_exp_value(n, t);
                        },
                        [this, t](const coeff::Sampled& s) { return sampled_value(s, horizon_, t); },
                    },
                    form_);
}

Complex TimeCoefficient::integrate_direct(double a, double b) const {
  return std::visit(
      Overloaded{
          [a, b](const coeff::Polynomial& p) { return poly_integral(p.coefficients, a, b); },
          [a, b](const coeff::Factored& f) {
            if (f.remainder.empty()) return Complex{0.0, 0.0};
            return quadrature::adaptive_simpson([&f](double t) { return factored_value(f, t); }, a, b);
          },
          [a, b](const coeff::Named& n) {
            if (n.profile == coeff::NamedProfile::FlatExpDerivative)
              return n.amplitude * flat_exp_difference(n.rate, a, b);
            return n.amplitude * (flat_exp_primitive_unit(n.rate, b) - flat_exp_primitive_unit(n.rate, a));
          },
          [this, a, b](const coeff::Sampled& s) {
            // Within a single cell the interpolant is one cubic, so Simpson is exact.
            const auto fn = [&](double t) { return sampled_value(s, horizon_, t); };
            const double m = 0.5 * (a + b);
            return (b - a) / 6.0 * (fn(a) + 4.0 * fn(m) + fn(b));
          },
      },
      form_);
}

Complex TimeCoefficient::primitive(double t) const {
  t = checked_time(t);
  if (t == 0.0) return {0.0, 0.0};
  return primitive_diff(0.0, t);
}

Complex TimeCoefficient::primitive_diff(double s, double t) const {
  s = checked_time(s);
  t = checked_time(t);
  if (s == t) return {0.0, 0.0};
  double sign = 1.0;
  if (s > t) {
    std::swap(s, t);
    sign = -1.0;
  }
  if (!table_) return sign * integrate_direct(s, t);

  // Table-backed: direct quadrature on the partial cells at both ends plus
  // whole cells from the table.
  const auto& nodes = table_->nodes;
  const auto& cum = table_->cumulative;
  // First node strictly greater than s, last node not greater than t.
  const auto is = static_cast<std::size_t>(std::upper_bound(nodes.begin(), nodes.end(), s) - nodes.begin());
  const auto it_ = static_cast<std::size_t>(std::upper_bound(nodes.begin(), nodes.end(), t) - nodes.begin()) - 1;
  if (is > it_ || is >= nodes.size()) return sign * integrate_direct(s, t);
  Complex acc = integrate_direct(s, nodes[is]);
  acc += cum[it_] - cum[is];
  if (t > nodes[it_]) acc += integrate_direct(nodes[it_], t);
  return sign * acc;
}

bool TimeCoefficient::real_part_is_zero() const {
  const auto zero_re = [](const std::vector<Complex>& v) {
    return std::all_of(v.begin(), v.end(), [](Complex c) { return c.real() == 0.0; });
  };
  return std::visit(Overloaded{
                        [&](const coeff::Polynomial& p) { return zero_re(p.coefficients); },
                        [&](const coeff::Factored& f) { return zero_re(f.remainder); },
                        [](const coeff::Named& n) { return n.amplitude.real() == 0.0; },
                        [&](const coeff::Sampled& s) { return zero_re(s.values); },
                    },
                    form_);
}

bool TimeCoefficient::imag_part_is_zero() const {
  const auto zero_im = [](const std::vector<Complex>& v) {
    return std::all_of(v.begin(), v.end(), [](Complex c) { return c.imag() == 0.0; });
  };
  return std::visit(Overloaded{
                        [&](const coeff::Polynomial& p) { return zero_im(p.coefficients); },
                        [&](const coeff::Factored& f) { return zero_im(f.remainder); },
                        [](const coeff::Named& n) { return n.amplitude.imag() == 0.0; },
                        [&](const coeff::Sampled& s) { return zero_im(s.values); },
                    },
                    form_);
}

TimeCoefficient TimeCoefficient::imaginary_only() const {
  const auto im_only = [](std::vector<Complex> v) {
    for (auto& c : v) c = Complex{0.0, c.imag()};
    return v;
  };
  Form f = std::visit(Overloaded{
                          [&](const coeff::Polynomial& p) -> Form {
                            return coeff::Polynomial{im_only(p.coefficients)};
                          },
                          [&](const coeff::Factored& x) -> Form {
                            return coeff::Factored{x.zeros, im_only(x.remainder)};
                          },
                          [](const coeff::Named& n) -> Form {
                            return coeff::Named{n.profile, Complex{0.0, n.amplitude.imag()}, n.rate};
                          },
                          [&](const coeff::Sampled& s) -> Form { return coeff::Sampled{im_only(s.values)}; },
                      },
                      form_);
  return TimeCoefficient(horizon_, std::move(f));
}

OrderEstimate estimate_order(const TimeCoefficient& coef, double zero) {
  const double T = coef.horizon();
  if (!(zero >= 0.0 && zero <= T)) throw Error(ErrorCode::OutOfHorizon, "zero outside [0, T]");

  double sup = 0.0;
  constexpr int kScan = 2048;
  for (int i = 0; i <= kScan; ++i) sup = std::max(sup, std::abs(coef.eval(T * i / kScan)));
  if (sup == 0.0) throw Error(ErrorCode::IllConditioned, "coefficient vanishes identically on the scan grid");
  const double at_zero = std::abs(coef.eval(zero));
  if (at_zero >= 1e-9 * sup) {
    throw Error(ErrorCode::NonVanishing, "|a(zero)| = " + std::to_string(at_zero) + " exceeds 1e-9 sup|a|");
  }

  // Approach from the side with more room.
  const double room_right = T - zero;
  const double room_left = zero;
  const double dir = room_right >= room_left ? 1.0 : -1.0;
  const double h0 = 0.25 * std::max(room_right, room_left);

  constexpr int kLadder = 24;
  std::vector<double> xs;
  std::vector<double> ys;
  bool underflow = false;
  for (int i = 0; i < kLadder; ++i) {
    const double h = h0 * std::ldexp(1.0, -i);
    const double v = std::abs(coef.eval(zero + dir * h));
    if (!(v >= std::numeric_limits<double>::min())) {
      underflow = true;
      break;
    }
    xs.push_back(std::log(h));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 3) {
    throw Error(ErrorCode::IllConditioned, "ladder values underflow before three samples");
  }

  const auto n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  OrderEstimate out;
  out.order = sxy / sxx;
  out.confidence = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  out.samples = static_cast<int>(xs.size());

  // Local slopes of a finite-order zero settle; flat zeros keep steepening.
  const auto slope = [&](std::size_t i) { return (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]); };
  const double first = slope(0);
  const double last = slope(xs.size() - 2);
  const bool steepening = last > 1.5 * first && last - first > 1.0;
  out.infinite_order_suspect = underflow || steepening;
  return out;
}

}  // namespace torus
