#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace torus {

using Complex = std::complex<double>;

/// log(DBL_MAX) - 2. Values with logmag above this stay in log form.
inline const double kOverflowGuard = std::log(std::numeric_limits<double>::max()) - 2.0;

/// Terms more than this many natural-log units below the running maximum are
/// dropped from sums.
inline constexpr double kLogSumDrop = 60.0;

/// Maps any finite angle into (-pi, pi].
double reduce_phase(double phase);

/// z = exp(logmag) * exp(i phase). Zero is logmag = -inf with phase 0.
struct LogComplex {
  double logmag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;

  static LogComplex zero() { return {}; }
  static LogComplex one() { return {0.0, 0.0}; }
  /// Normalizes the phase; a -inf logmag forces phase 0.
  static LogComplex polar(double logmag, double phase);
  static LogComplex from_complex(Complex z);

  bool is_zero() const { return logmag == -std::numeric_limits<double>::infinity(); }
  /// Throws OverflowGuard when logmag exceeds kOverflowGuard.
  Complex to_complex() const;

  friend bool operator==(const LogComplex&, const LogComplex&) = default;
};

LogComplex operator*(const LogComplex& a, const LogComplex& b);
LogComplex operator/(const LogComplex& a, const LogComplex& b);
LogComplex operator+(const LogComplex& a, const LogComplex& b);
LogComplex operator-(const LogComplex& a);
LogComplex operator-(const LogComplex& a, const LogComplex& b);

/// exp(w) for complex w, without ever forming exp(Re w) in linear form.
LogComplex exp_log(Complex w);

/// Rescaled running sum: holds S * exp(ref) with |S| of order one, so terms
/// of any magnitude can be accumulated without overflow.
class LogSum {
 public:
  void add(const LogComplex& term) { accumulate(term, 1.0); }
  /// Equal terms cancel exactly.
  void subtract(const LogComplex& term) { accumulate(term, -1.0); }
  LogComplex value() const;

 private:
  void accumulate(const LogComplex& term, double sign);

  double ref_ = -std::numeric_limits<double>::infinity();
  Complex scaled_{0.0, 0.0};
};

}  // namespace torus
