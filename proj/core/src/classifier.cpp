#include "torus_cauchy/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <variant>

#include "torus_cauchy/error.hpp"

namespace torus {
namespace {

__extension__ typedef __int128 i128;

std::optional<Rational> narrow(i128 num, i128 den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    const i128 r = a % b;
    a = b;
    b = r;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
  if (num > kMax || num < -kMax || den > kMax) return std::nullopt;
  return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

[[noreturn]] void malformed(const std::string& m) { throw Error(ErrorCode::MalformedStructure, m); }

Verdict uniform(Posedness p, std::string provenance) {
  Verdict v;
  v.sobolev = p;
  v.smooth = p;
  v.analytic = p;
  v.gevrey_threshold =
      p == Posedness::IllPosed ? GevreyThreshold::finite(1.0, Rational{1, 1}) : GevreyThreshold::inf();
  v.provenance = std::move(provenance);
  return v;
}

bool overlaps(const Interval& a, const Interval& b) { return std::min(a.hi, b.hi) > std::max(a.lo, b.lo); }

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  auto r = narrow(num, den);
  if (!r) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  return *r;
}

std::optional<Rational> Rational::from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x) || std::abs(x) > 1e15) return std::nullopt;
  // Continued-fraction convergents until the value round-trips.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_d = std::floor(rest);
    const auto a = static_cast<std::int64_t>(a_d);
    const i128 h2 = static_cast<i128>(a) * h1 + h0;
    const i128 k2 = static_cast<i128>(a) * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    k0 = k1;
    h1 = static_cast<std::int64_t>(h2);
    k1 = static_cast<std::int64_t>(k2);
    if (static_cast<double>(h1) / static_cast<double>(k1) == x) return narrow(h1, k1);
    const double frac = rest - a_d;
    if (frac == 0.0) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<i128>(a.num) * b.den < static_cast<i128>(b.num) * a.den;
}

std::optional<Rational> add(const Rational& a, const Rational& b) {
  return narrow(static_cast<i128>(a.num) * b.den + static_cast<i128>(b.num) * a.den,
                static_cast<i128>(a.den) * b.den);
}

std::optional<Rational> sub(const Rational& a, const Rational& b) { return add(a, Rational{-b.num, b.den}); }

std::optional<Rational> mul(const Rational& a, const Rational& b) {
  return narrow(static_cast<i128>(a.num) * b.num, static_cast<i128>(a.den) * b.den);
}

std::optional<Rational> div(const Rational& a, const Rational& b) {
  if (b.num == 0) return std::nullopt;
  return narrow(static_cast<i128>(a.num) * b.den, static_cast<i128>(a.den) * b.num);
}

double DegeneratePoint::q() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : q_j) m = std::min(m, v);
  return m;
}

std::size_t DegeneratePoint::argmin_axis() const {
  return static_cast<std::size_t>(std::min_element(q_j.begin(), q_j.end()) - q_j.begin());
}

bool DegeneratePoint::in_K() const {
  const double qk = q();
  return std::isfinite(qk) && p > 2.0 * qk + 1.0;
}

GevreyThreshold GevreyThreshold::finite(double v, std::optional<Rational> exact) {
  GevreyThreshold g;
  g.infinite = false;
  g.value = exact ? exact->value() : v;
  g.exact = exact;
  return g;
}

void ImaginaryStructure::validate() const {
  if (dimension < 1) malformed("dimension must be positive");
  if (static_cast<int>(drifts.size()) != dimension) malformed("one drift structure per dimension required");
  for (const auto& d : drifts) {
    if (d.kind == DriftKind::NonzeroOnInterval && !(d.interval.lo < d.interval.hi)) {
      malformed("drift interval must have positive length");
    }
  }
  const auto& L = leading;
  if (L.kind == LeadingKind::ZeroOnInterval && !(L.interval.lo < L.interval.hi)) {
    malformed("leading zero interval must have positive length");
  }
  if (L.kind != LeadingKind::DegenerateNonpositive) {
    if (!L.zeros.empty()) malformed("zero list only allowed for degenerate leading coefficients");
    return;
  }
  if (L.zeros.empty()) malformed("degenerate leading coefficient needs at least one zero");
  for (std::size_t k = 0; k < L.zeros.size(); ++k) {
    const auto& z = L.zeros[k];
    if (k > 0 && !(z.t_k > L.zeros[k - 1].t_k)) malformed("zeros must be strictly increasing");
    if (!(z.p > 0.0) || !std::isfinite(z.p)) malformed("leading vanishing order must be finite and > 0");
    if (static_cast<int>(z.q_j.size()) != dimension) malformed("each zero needs one drift order per dimension");
    for (std::size_t j = 0; j < z.q_j.size(); ++j) {
      if (!(z.q_j[j] >= 0.0)) malformed("drift vanishing orders must be >= 0");
      if (drifts[j].kind == DriftKind::IdenticallyZero && std::isfinite(z.q_j[j])) {
        malformed("identically vanishing drift must carry order +inf");
      }
    }
  }
}

GevreyThreshold gevrey_threshold(const std::vector<DegeneratePoint>& points) {
  GevreyThreshold best = GevreyThreshold::inf();
  bool all_exact = true;
  std::optional<Rational> best_exact;
  for (const auto& pt : points) {
    if (!pt.in_K()) continue;
    const double p = pt.p;
    const double q = pt.q();
    const double v = (p - q) / (p - 2.0 * q - 1.0);
    std::optional<Rational> r;
    const auto rp = Rational::from_double(p);
    const auto rq = Rational::from_double(q);
    if (rp && rq) {
      const auto num = sub(*rp, *rq);
      const auto twoq = mul(Rational{2, 1}, *rq);
      const auto den0 = twoq ? sub(*rp, *twoq) : std::nullopt;
      const auto den = den0 ? sub(*den0, Rational{1, 1}) : std::nullopt;
      if (num && den) r = div(*num, *den);
    }
    if (!r) all_exact = false;
    if (best.infinite || (r && best_exact ? *r < *best_exact : v < best.value)) {
      best = GevreyThreshold::finite(v, r);
      best_exact = r;
    }
  }
  if (!best.infinite && !all_exact) best.exact.reset();
  return best;
}

Verdict classify(const ImaginaryStructure& structure) {
  structure.validate();
  const auto& L = structure.leading;
  const auto& drifts = structure.drifts;
  const bool drifts_vanish = std::all_of(drifts.begin(), drifts.end(),
                                         [](const DriftStructure& d) { return d.kind == DriftKind::IdenticallyZero; });

  if (L.kind == LeadingKind::SomewherePositive) return uniform(Posedness::IllPosed, "parabolic-violation");
  if (L.kind == LeadingKind::StrictlyNegative) return uniform(Posedness::WellPosed, "parabolic");
  if (drifts_vanish) return uniform(Posedness::WellPosed, "vanishing-drift");

  if (L.kind == LeadingKind::IdenticallyZero) return uniform(Posedness::IllPosed, "drift-violation");
  if (L.kind == LeadingKind::ZeroOnInterval) {
    const bool live = std::any_of(drifts.begin(), drifts.end(), [&](const DriftStructure& d) {
      return d.kind == DriftKind::DegenerateOrders ||
             (d.kind == DriftKind::NonzeroOnInterval && overlaps(d.interval, L.interval));
    });
    if (live) return uniform(Posedness::IllPosed, "drift-violation");
    throw Error(ErrorCode::Unclassifiable,
                "leading coefficient vanishes on an interval where every drift vanishes; no criterion applies");
  }
  if (L.kind == LeadingKind::InfiniteOrderSuspect) {
    throw Error(ErrorCode::Unclassifiable,
                "leading coefficient vanishes to infinite order with a nonvanishing drift; well-posedness then "
                "depends on more than vanishing orders");
  }

  const GevreyThreshold rho = gevrey_threshold(L.zeros);
  if (rho.infinite) return uniform(Posedness::WellPosed, "degenerate-wellposed");
  Verdict v;
  v.sobolev = Posedness::IllPosed;
  v.smooth = Posedness::IllPosed;
  v.gevrey_threshold = rho;
  v.analytic = Posedness::WellPosed;
  v.provenance = "degenerate-threshold";
  return v;
}

bool hierarchy_check(const Verdict& v) {
  const bool sobolev_ok = v.sobolev != Posedness::IllPosed;
  const bool smooth_ok = v.smooth != Posedness::IllPosed;
  const bool analytic_ok = v.analytic != Posedness::IllPosed;
  const auto& rho = v.gevrey_threshold;
  if (v.smooth == Posedness::WellPosedFiniteLoss || v.analytic == Posedness::WellPosedFiniteLoss) return false;
  if (!rho.infinite && !(rho.value >= 1.0)) return false;
  if (sobolev_ok && !smooth_ok) return false;
  if (smooth_ok && (!rho.infinite || !analytic_ok)) return false;
  if (!analytic_ok) return !sobolev_ok && !smooth_ok && !rho.infinite && rho.value == 1.0;
  // Analytic well-posed: G^tau well-posed for some tau >= 1 requires rho > 1.
  return rho.infinite || rho.value > 1.0;
}

std::string to_string(Posedness p) {
  switch (p) {
    case Posedness::WellPosed: return "well-posed";
    case Posedness::WellPosedFiniteLoss: return "well-posed-finite-loss";
    case Posedness::IllPosed: return "ill-posed";
  }
  return "unknown";
}

std::string to_string(LeadingKind k) {
  switch (k) {
    case LeadingKind::SomewherePositive: return "somewhere_positive";
    case LeadingKind::StrictlyNegative: return "strictly_negative";
    case LeadingKind::IdenticallyZero: return "identically_zero";
    case LeadingKind::ZeroOnInterval: return "zero_on_interval";
    case LeadingKind::DegenerateNonpositive: return "degenerate_nonpositive";
    case LeadingKind::InfiniteOrderSuspect: return "infinite_order_suspect";
  }
  return "unknown";
}

}  // namespace torus
