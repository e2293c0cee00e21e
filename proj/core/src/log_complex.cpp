#include "torus_cauchy/log_complex.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "torus_cauchy/error.hpp"

namespace torus {

double reduce_phase(double phase) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (phase > -std::numbers::pi && phase <= std::numbers::pi) return phase;
  double r = std::remainder(phase, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

LogComplex LogComplex::polar(double logmag, double phase) {
  if (logmag == -std::numeric_limits<double>::infinity()) return zero();
  return {logmag, reduce_phase(phase)};
}

LogComplex LogComplex::from_complex(Complex z) {
  if (z == Complex{0.0, 0.0}) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

Complex LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  if (logmag > kOverflowGuard) {
    throw Error(ErrorCode::OverflowGuard, "log-magnitude = " + std::to_string(logmag));
  }
  return std::polar(std::exp(logmag), phase);
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero()) return LogComplex::zero();
  return LogComplex::polar(a.logmag + b.logmag, a.phase + b.phase);
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero LogComplex");
  if (a.is_zero()) return LogComplex::zero();
  return LogComplex::polar(a.logmag - b.logmag, a.phase - b.phase);
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) {
  LogSum s;
  s.add(a);
  s.add(b);
  return s.value();
}

LogComplex operator-(const LogComplex& a) {
  if (a.is_zero()) return a;
  return LogComplex::polar(a.logmag, a.phase + std::numbers::pi);
}

LogComplex operator-(const LogComplex& a, const LogComplex& b) {
  LogSum s;
  s.add(a);
  s.subtract(b);
  return s.value();
}

LogComplex exp_log(Complex w) { return LogComplex::polar(w.real(), w.imag()); }

void LogSum::accumulate(const LogComplex& term, double sign) {
  if (term.is_zero()) return;
  if (term.logmag > ref_) {
    // New maximum: rescale what we have, dropping it if it fell out of range.
    const double shift = ref_ - term.logmag;
    scaled_ = shift < -kLogSumDrop ? Complex{0.0, 0.0} : scaled_ * std::exp(shift);
    ref_ = term.logmag;
    scaled_ += sign * std::polar(1.0, term.phase);
    return;
  }
  const double shift = term.logmag - ref_;
  if (shift < -kLogSumDrop) return;
  scaled_ += sign * std::polar(std::exp(shift), term.phase);
}

LogComplex LogSum::value() const {
  if (ref_ == -std::numeric_limits<double>::infinity() || scaled_ == Complex{0.0, 0.0}) {
    return LogComplex::zero();
  }
  return LogComplex::polar(ref_ + std::log(std::abs(scaled_)), std::arg(scaled_));
}

}  // namespace torus
