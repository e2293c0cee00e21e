#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "torus_cauchy/symbol.hpp"
#include "torus_cauchy/time_coeffs.hpp"

namespace torus {

/// Exact fraction num/den with den > 0 and gcd(num, den) = 1.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  /// Exact conversion when x equals a fraction with denominator <= max_den
  /// (checked by converting back); nullopt otherwise.
  static std::optional<Rational> from_double(double x, std::int64_t max_den = 1000000);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(const Rational& a, const Rational& b);
};

/// Checked arithmetic; nullopt on int64 overflow or division by zero.
std::optional<Rational> add(const Rational& a, const Rational& b);
std::optional<Rational> sub(const Rational& a, const Rational& b);
std::optional<Rational> mul(const Rational& a, const Rational& b);
std::optional<Rational> div(const Rational& a, const Rational& b);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// A zero t_k of Im a2 of order p, with drift orders q_j (+inf when Im a1j
/// vanishes identically near t_k) and the factor bounds next to it.
struct DegeneratePoint {
  double t_k = 0.0;
  double p = 1.0;
  std::vector<double> q_j;
  /// Upper bound Gamma of |Im a2| / |t - t_k|^p near t_k.
  double leading_factor_upper = 1.0;
  /// Lower bounds gamma_j of |Im a1j| / |t - t_k|^{q_j} near t_k.
  std::vector<double> drift_factor_lower;
  /// Sign of Im a1j next to t_k.
  std::vector<FactorSign> drift_sign;
  /// Radius of the neighborhood where the local description holds.
  double neighborhood = 0.0;

  /// min_j q_j.
  double q() const;
  /// Axis attaining the minimum (first one on ties).
  std::size_t argmin_axis() const;
  /// p > 2 q + 1.
  bool in_K() const;
};

enum class LeadingKind {
  SomewherePositive,
  StrictlyNegative,
  IdenticallyZero,
  ZeroOnInterval,
  DegenerateNonpositive,
  InfiniteOrderSuspect,
};

struct LeadingStructure {
  LeadingKind kind = LeadingKind::StrictlyNegative;
  /// SomewherePositive: a time where Im a2 > 0.
  double t_star = 0.0;
  /// ZeroOnInterval: Im a2 vanishes on this interval.
  Interval interval;
  /// DegenerateNonpositive: strictly increasing zero list.
  std::vector<DegeneratePoint> zeros;
};

enum class DriftKind { IdenticallyZero, NonzeroOnInterval, DegenerateOrders };

struct DriftStructure {
  DriftKind kind = DriftKind::IdenticallyZero;
  /// NonzeroOnInterval: Im a1j does not vanish identically on this interval.
  Interval interval;
};

/// Sign data of the imaginary parts of a2 and a1j; the only input of classify.
struct ImaginaryStructure {
  int dimension = 1;
  LeadingStructure leading;
  std::vector<DriftStructure> drifts;

  /// Throws MalformedStructure.
  void validate() const;
};

enum class Posedness { WellPosed, WellPosedFiniteLoss, IllPosed };

/// G^tau well-posed iff tau < value.
struct GevreyThreshold {
  bool infinite = true;
  double value = std::numeric_limits<double>::infinity();
  std::optional<Rational> exact;

  static GevreyThreshold inf() { return {}; }
  static GevreyThreshold finite(double v, std::optional<Rational> exact = std::nullopt);

  friend bool operator==(const GevreyThreshold& a, const GevreyThreshold& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

struct Verdict {
  Posedness sobolev = Posedness::WellPosed;
  Posedness smooth = Posedness::WellPosed;
  GevreyThreshold gevrey_threshold;
  Posedness analytic = Posedness::WellPosed;
  /// Which criterion fired: parabolic, parabolic-violation, vanishing-drift,
  /// drift-violation, degenerate-wellposed or degenerate-threshold.
  std::string provenance;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Throws Unclassifiable (infinite-order vanishing with a live drift, or a
/// leading zero interval the drifts do not meet) and MalformedStructure.
Verdict classify(const ImaginaryStructure& structure);

/// min over the points in K of (p - q) / (p - 2q - 1); infinite when K is
/// empty. Exact when every order is a fraction with a small denominator.
GevreyThreshold gevrey_threshold(const std::vector<DegeneratePoint>& points);

/// Consistency of a verdict with the inclusions
/// H^r => C^inf => G^s1 => G^s2 (s2 <= s1) => analytic.
bool hierarchy_check(const Verdict& v);

struct DeriveOptions {
  /// Neighborhood radius for degenerate points; 0 means half the minimal gap
  /// between zeros (T/2 for a single zero).
  double neighborhood = 0.0;
};

/// Reads the structure off the coefficients: declared vanishing profiles are
/// used as given, polynomial zeros get exact or rounded orders, sampled
/// coefficients fall back on estimate_order. Throws Unclassifiable for
/// symbols with extra monomials.
ImaginaryStructure derive_structure(const SymbolSpec& spec, const DeriveOptions& options = {});

std::string to_string(Posedness p);
std::string to_string(LeadingKind k);

}  // namespace torus
