#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <variant>

#include "torus_cauchy/classifier.hpp"
#include "torus_cauchy/error.hpp"

namespace torus {
namespace {

constexpr int kGrid = 4096;
constexpr double kZeroTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double im_at(const TimeCoefficient& c, double t) { return c.eval(t).imag(); }

struct Samples {
  std::vector<double> t;
  std::vector<double> c;
  double sup = 0.0;
};

Samples sample_imag(const TimeCoefficient& c) {
  Samples s;
  const double T = c.horizon();
  for (int i = 0; i <= kGrid; ++i) {
    const double t = T * i / kGrid;
    const double v = im_at(c, t);
    s.t.push_back(t);
    s.c.push_back(v);
    s.sup = std::max(s.sup, std::abs(v));
  }
  return s;
}

/// Imaginary parts of the polynomial coefficients, expanded at t0.
std::vector<double> imag_taylor(const std::vector<Complex>& coeffs, double t0) {
  std::vector<double> a;
  for (const auto& c : coeffs) a.push_back(c.imag());
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t j = n - 1; j > k; --j) a[j - 1] += t0 * a[j];
  }
  return a;
}

/// Vanishing order at a point with the size and sign of the factor next to it.
struct LocalOrder {
  double order = 0.0;
  double factor = 0.0;
  double sign = 1.0;
  bool flat = false;
};

/// First nonvanishing Taylor coefficient of Im p at t0.
LocalOrder polynomial_order(const std::vector<Complex>& coeffs, double t0) {
  const auto a = imag_taylor(coeffs, t0);
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  LocalOrder out;
  if (scale == 0.0) {
    out.flat = true;
    return out;
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k]) > kZeroTol * scale) {
      out.order = static_cast<double>(k);
      out.factor = std::abs(a[k]);
      out.sign = a[k] > 0.0 ? 1.0 : -1.0;
      return out;
    }
  }
  out.flat = true;
  return out;
}

/// Order of the imaginary part of c at t0 for any representation.
LocalOrder local_order(const TimeCoefficient& c, double t0, double sup) {
  LocalOrder out;
  const double v = im_at(c, t0);
  if (std::abs(v) > kZeroTol * sup) {
    out.factor = std::abs(v);
    out.sign = v > 0.0 ? 1.0 : -1.0;
    return out;
  }
  if (const auto* p = std::get_if<coeff::Polynomial>(&c.form())) return polynomial_order(p->coefficients, t0);
  if (const auto* f = std::get_if<coeff::Factored>(&c.form())) {
    for (const auto& z : f->zeros) {
      if (z.zero == t0) {
        out.order = z.order;
        out.factor = z.factor_lower;
        out.sign = z.factor_sign == FactorSign::Positive ? 1.0 : -1.0;
        return out;
      }
    }
  }
  if (std::holds_alternative<coeff::Named>(c.form())) {
    out.flat = true;
    return out;
  }
  const OrderEstimate e = estimate_order(c, t0);
  if (e.infinite_order_suspect) {
    out.flat = true;
    return out;
  }
  out.order = e.order;
  if (std::holds_alternative<coeff::Polynomial>(c.form())) out.order = std::round(e.order);
  const double h = 1e-3 * c.horizon();
  const double side = t0 + h <= c.horizon() ? t0 + h : t0 - h;
  const double w = im_at(c, side);
  out.factor = std::abs(w) / std::pow(h, out.order);
  out.sign = w > 0.0 ? 1.0 : -1.0;
  return out;
}

/// Location of the minimum of |Im c| on [a, b].
double refine_zero(const TimeCoefficient& c, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = std::abs(im_at(c, x1));
  double f2 = std::abs(im_at(c, x2));
  for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = std::abs(im_at(c, x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = std::abs(im_at(c, x2));
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> derivative(const std::vector<double>& a) {
  std::vector<double> d;
  for (std::size_t k = 1; k < a.size(); ++k) d.push_back(static_cast<double>(k) * a[k]);
  return d;
}

double horner(const std::vector<double>& a, double t) {
  double v = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * t + *it;
  return v;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

/// Locates the zero of a real polynomial inside [a, b]. A zero of
/// multiplicity m is a simple zero of the (m-1)-th derivative, so the lowest
/// derivative with a sign change and a simple root there pins it down to
/// rounding; golden search on |p| alone is only good to eps^{1/m}.
std::optional<double> polynomial_zero(const std::vector<double>& p, double a, double b, double sup) {
  std::vector<double> d = p;
  constexpr int kScan = 64;
  while (d.size() >= 2) {
    const auto next = derivative(d);
    for (int i = 0; i < kScan; ++i) {
      double lo = a + (b - a) * i / kScan;
      double hi = a + (b - a) * (i + 1) / kScan;
      double flo = horner(d, lo);
      const double fhi = horner(d, hi);
      if (!(flo * fhi < 0.0 || flo == 0.0)) continue;
      if (flo != 0.0) {
        for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          const double fm = horner(d, mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
      }
      const double r = 0.5 * (lo + hi);
      const bool simple = std::abs(horner(next, r)) > kZeroTol * std::max(max_abs(next), 1e-300);
      if (simple && std::abs(horner(p, r)) <= kZeroTol * sup) return r;
    }
    d = next;
  }
  return std::nullopt;
}

/// Real roots of a polynomial in [lo, hi], by bisection between the roots of
/// its derivative. Roots of even multiplicity show up as critical points
/// where the value is within rounding of zero.
std::vector<double> real_roots(std::vector<double> a, double lo, double hi) {
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  if (a.size() <= 1) return {};
  std::vector<double> grid{lo};
  for (double c : real_roots(derivative(a), lo, hi)) grid.push_back(c);
  grid.push_back(hi);
  const double tiny = 1e-13 * max_abs(a);
  std::vector<double> roots;
  auto push = [&](double r) {
    if (roots.empty() || r - roots.back() > 1e-12) roots.push_back(r);
  };
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double x = grid[k], y = grid[k + 1];
    double fx = horner(a, x);
    const double fy = horner(a, y);
    if (std::abs(fx) <= tiny) {
      push(x);
      continue;
    }
    if (!(fx * fy < 0.0)) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (x + y);
      if (mid <= x || mid >= y) break;
      const double fm = horner(a, mid);
      if ((fm < 0.0) == (fx < 0.0)) {
        x = mid;
        fx = fm;
      } else {
        y = mid;
      }
    }
    push(0.5 * (x + y));
  }
  if (std::abs(horner(a, hi)) <= tiny) push(hi);
  return roots;
}

struct ZeroSet {
  std::vector<double> points;
  std::optional<Interval> interval;
};

ZeroSet find_zeros(const TimeCoefficient& c, const Samples& s) {
  ZeroSet out;
  const double tol = kZeroTol * s.sup;
  std::size_t i = 0;
  const std::size_t n = s.c.size();
  while (i < n) {
    if (std::abs(s.c[i]) > tol) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && std::abs(s.c[j + 1]) <= tol) ++j;
    const auto* poly = std::get_if<coeff::Polynomial>(&c.form());
    if (poly && i > 0 && j < n - 1) {
      // A polynomial that is not identically zero has isolated zeros only.
      std::vector<double> im;
      for (const auto& v : poly->coefficients) im.push_back(v.imag());
      const auto r = polynomial_zero(im, s.t[i - 1], s.t[j + 1], s.sup);
      out.points.push_back(r ? *r : refine_zero(c, s.t[i - 1], s.t[j + 1]));
    } else if (j - i >= 2 && !poly) {
      if (!out.interval) out.interval = Interval{s.t[i], s.t[j]};
    } else if (i == 0) {
      out.points.push_back(0.0);
    } else if (j == n - 1) {
      out.points.push_back(c.horizon());
    } else {
      out.points.push_back(refine_zero(c, s.t[i - 1], s.t[j + 1]));
    }
    i = j + 1;
  }
  return out;
}

}  // namespace

ImaginaryStructure derive_structure(const SymbolSpec& spec, const DeriveOptions& options) {
  spec.validate();
  if (!spec.extra_monomials.empty()) {
    throw Error(ErrorCode::Unclassifiable, "symbols of order above two are outside the classifier");
  }
  ImaginaryStructure st;
  st.dimension = spec.dimension;
  const double T = spec.horizon;
  auto& L = st.leading;

  std::vector<Samples> drift_samples;
  for (const auto& a : spec.a1) drift_samples.push_back(a.imag_part_is_zero() ? Samples{} : sample_imag(a));
  for (std::size_t j = 0; j < spec.a1.size(); ++j) {
    DriftStructure d;
    if (spec.a1[j].imag_part_is_zero() || drift_samples[j].sup == 0.0) {
      d.kind = DriftKind::IdenticallyZero;
    } else {
      const auto& s = drift_samples[j];
      const double tol = kZeroTol * s.sup;
      std::size_t first = 0, last = s.c.size() - 1;
      while (std::abs(s.c[first]) <= tol) ++first;
      while (std::abs(s.c[last]) <= tol) --last;
      d.kind = DriftKind::NonzeroOnInterval;
      d.interval = Interval{first > 0 ? s.t[first - 1] : 0.0, last + 1 < s.c.size() ? s.t[last + 1] : T};
    }
    st.drifts.push_back(d);
  }

  const TimeCoefficient& a2 = spec.a2;
  if (a2.imag_part_is_zero()) {
    L.kind = LeadingKind::IdenticallyZero;
    return st;
  }
  if (const auto* n = std::get_if<coeff::Named>(&a2.form())) {
    const double im = n->amplitude.imag();
    if (im > 0.0) {
      L.kind = LeadingKind::SomewherePositive;
      L.t_star = T;
    } else {
      L.kind = LeadingKind::InfiniteOrderSuspect;
    }
    return st;
  }

  const Samples s = sample_imag(a2);
  if (s.sup == 0.0) {
    L.kind = LeadingKind::IdenticallyZero;
    return st;
  }
  const auto peak = std::max_element(s.c.begin(), s.c.end());
  if (*peak > 1e-13 * s.sup) {
    L.kind = LeadingKind::SomewherePositive;
    L.t_star = s.t[static_cast<std::size_t>(peak - s.c.begin())];
    return st;
  }

  ZeroSet zs;
  const auto* fac = std::get_if<coeff::Factored>(&a2.form());
  bool declared = false;
  if (fac) {
    // Declared zeros are authoritative when the remainder keeps a strict sign.
    double worst = -kInf;
    for (int i = 0; i <= kGrid; ++i) {
      const double t = T * i / kGrid;
      Complex r{0.0, 0.0};
      for (auto it = fac->remainder.rbegin(); it != fac->remainder.rend(); ++it) r = r * t + *it;
      worst = std::max(worst, r.imag());
    }
    if (worst < 0.0) {
      declared = true;
      for (const auto& z : fac->zeros) zs.points.push_back(z.zero);
    }
  }
  if (!declared) zs = find_zeros(a2, s);
  if (const auto* poly = std::get_if<coeff::Polynomial>(&a2.form()); poly && !declared) {
    // Im a2 <= 0 here, so its interior zeros are local maxima and need not
    // come near any grid point; look for them among the critical points.
    std::vector<double> im;
    for (const auto& v : poly->coefficients) im.push_back(v.imag());
    for (double c : real_roots(derivative(im), 0.0, T)) {
      if (std::abs(horner(im, c)) > kZeroTol * s.sup) continue;
      const bool known = std::any_of(zs.points.begin(), zs.points.end(),
                                     [&](double z) { return std::abs(z - c) <= 1e-6 * T; });
      if (!known) zs.points.push_back(c);
    }
  }

  if (zs.interval) {
    L.kind = LeadingKind::ZeroOnInterval;
    L.interval = *zs.interval;
    return st;
  }
  if (zs.points.empty()) {
    L.kind = LeadingKind::StrictlyNegative;
    return st;
  }

  std::sort(zs.points.begin(), zs.points.end());
  double gap = T;
  for (std::size_t k = 1; k < zs.points.size(); ++k) gap = std::min(gap, zs.points[k] - zs.points[k - 1]);
  const double radius = options.neighborhood > 0.0 ? options.neighborhood : 0.5 * gap;

  L.kind = LeadingKind::DegenerateNonpositive;
  for (double t0 : zs.points) {
    DegeneratePoint pt;
    pt.t_k = t0;
    pt.neighborhood = radius;
    const LocalOrder lo = local_order(a2, t0, s.sup);
    if (lo.flat) {
      L.kind = LeadingKind::InfiniteOrderSuspect;
      L.zeros.clear();
      return st;
    }
    pt.p = lo.order;
    pt.leading_factor_upper = lo.factor;
    if (fac && declared) {
      for (const auto& z : fac->zeros) {
        if (z.zero == t0) pt.leading_factor_upper = z.factor_upper;
      }
    }
    for (std::size_t j = 0; j < spec.a1.size(); ++j) {
      if (st.drifts[j].kind == DriftKind::IdenticallyZero) {
        pt.q_j.push_back(kInf);
        pt.drift_factor_lower.push_back(0.0);
        pt.drift_sign.push_back(FactorSign::Positive);
        continue;
      }
      const LocalOrder d = local_order(spec.a1[j], t0, drift_samples[j].sup);
      pt.q_j.push_back(d.flat ? kInf : d.order);
      pt.drift_factor_lower.push_back(d.factor);
      pt.drift_sign.push_back(d.sign > 0.0 ? FactorSign::Positive : FactorSign::Negative);
    }
    L.zeros.push_back(pt);
  }
  for (auto& d : st.drifts) {
    if (d.kind == DriftKind::NonzeroOnInterval) d.kind = DriftKind::DegenerateOrders;
  }
  return st;
}

}  // namespace torus
