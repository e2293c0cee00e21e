#pragma once

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace torus {

using Complex = std::complex<double>;

enum class FactorSign { Positive, Negative };

/// A declared zero t_k of a coefficient, of order p (leading coefficient) or
/// q (drift coefficient), with bounds on the bounded factor next to it:
/// factor_lower <= |factor| <= factor_upper.
struct VanishingProfile {
  double zero = 0.0;
  double order = 0.0;
  double factor_lower = 1.0;
  double factor_upper = 1.0;
  FactorSign factor_sign = FactorSign::Negative;

  /// Throws MalformedStructure. Leading profiles need order > 0, drift
  /// profiles order >= 0.
  void validate(bool leading) const;
};

namespace coeff {

/// a(t) = sum_k coefficients[k] t^k.
struct Polynomial {
  std::vector<Complex> coefficients;
};

/// a(t) = R(t) * prod_k |t - zeros[k].zero|^{zeros[k].order}, R a polynomial.
struct Factored {
  std::vector<VanishingProfile> zeros;
  std::vector<Complex> remainder;
};

enum class NamedProfile {
  /// amplitude * (2 rate / t^3) exp(-rate / t^2); primitive amplitude * exp(-rate / t^2).
  FlatExpDerivative,
  /// amplitude * exp(-rate / t^2).
  FlatExp,
};

struct Named {
  NamedProfile profile = NamedProfile::FlatExpDerivative;
  Complex amplitude{1.0, 0.0};
  double rate = 1.0;
};

/// Values on the uniform grid t_m = m T / (M - 1), m = 0..M-1, interpolated by
/// local cubics (lower degree when M < 4). No extrapolation.
struct Sampled {
  std::vector<Complex> values;
};

}  // namespace coeff

/// Cumulative integrals of a coefficient at fixed nodes. Built once for the
/// representations without a closed-form primitive; read-only afterwards.
struct PrimitiveTable {
  std::vector<double> nodes;
  std::vector<Complex> cumulative;
  std::string rule;
  double tolerance = 0.0;
};

class TimeCoefficient {
 public:
  using Form = std::variant<coeff::Polynomial, coeff::Factored, coeff::Named, coeff::Sampled>;

  TimeCoefficient(double horizon, Form form);

  static TimeCoefficient zero(double horizon);
  static TimeCoefficient constant(double horizon, Complex value);
  static TimeCoefficient polynomial(double horizon, std::vector<Complex> coefficients);
  static TimeCoefficient factored(double horizon, std::vector<VanishingProfile> zeros,
                                  std::vector<Complex> remainder);
  static TimeCoefficient named(double horizon, coeff::NamedProfile profile, Complex amplitude,
                               double rate);
  static TimeCoefficient sampled(double horizon, std::vector<Complex> values);

  double horizon() const noexcept { return horizon_; }
  const Form& form() const noexcept { return form_; }
  const PrimitiveTable* table() const noexcept { return table_.get(); }

  /// a(t). Throws OutOfHorizon outside [0, T].
  Complex eval(double t) const;
  /// A(t) = int_0^t a. Exactly zero at t = 0.
  Complex primitive(double t) const;
  /// int_s^t a, evaluated directly over [min(s,t), max(s,t)] with orientation sign.
  Complex primitive_diff(double s, double t) const;

  /// Structural tests (no sampling): the real / imaginary part vanishes identically.
  bool real_part_is_zero() const;
  bool imag_part_is_zero() const;

  /// t -> i Im a(t), same representation.
  TimeCoefficient imaginary_only() const;

 private:
  double checked_time(double t) const;
  Complex integrate_direct(double a, double b) const;

  double horizon_;
  Form form_;
  std::shared_ptr<const PrimitiveTable> table_;
};

inline Complex eval(const TimeCoefficient& c, double t) { return c.eval(t); }
inline Complex primitive(const TimeCoefficient& c, double t) { return c.primitive(t); }
inline Complex primitive_diff(const TimeCoefficient& c, double s, double t) {
  return c.primitive_diff(s, t);
}

/// Local power-law fit |a(t)| ~ C |t - zero|^order.
struct OrderEstimate {
  double order = 0.0;
  /// R^2 of the log-log regression.
  double confidence = 0.0;
  /// Set when the ladder hit underflow or local slopes keep growing
  /// (exp(-1/t^2)-type flatness).
  bool infinite_order_suspect = false;
  int samples = 0;
};

/// Advisory estimator; declared VanishingProfile orders always take precedence.
/// Throws NonVanishing if |a(zero)| >= 1e-9 sup|a|, IllConditioned if fewer
/// than three ladder samples are representable.
OrderEstimate estimate_order(const TimeCoefficient& coef, double zero);

}  // namespace torus
