#pragma once

#include <map>
#include <vector>

#include "torus_cauchy/log_complex.hpp"
#include "torus_cauchy/symbol.hpp"

namespace torus {

/// Truncated Fourier coefficients at one time. Frequencies are kept in
/// lexicographic order; absent frequencies are exact zeros.
struct SpectralField {
  int dimension = 1;
  int truncation = 1;
  double time = 0.0;
  std::map<Frequency, LogComplex> coefficients;

  LogComplex at(const Frequency& xi) const;
};

/// Which frequencies a generator populates.
struct Support {
  enum class Kind { All, Axis, PositiveAxis, NegativeAxis };
  Kind kind = Kind::All;
  /// Zero-based axis for the axis kinds.
  int axis = 0;

  bool contains(const Frequency& xi) const;
};

/// Spectral data generator: value(xi) = scale * shape(xi) on its support.
struct Generator {
  enum class Kind { Zero, GevreyDecay, ExponentialDecay, SingleMode, Table };
  Kind kind = Kind::Zero;
  /// GevreyDecay: exp(-delta |xi|^{1/s}).
  double delta = 1.0;
  double s = 1.0;
  /// ExponentialDecay: exp(-rate |xi|); rate = 0 gives the all-ones datum.
  double rate = 1.0;
  /// SingleMode: amplitude at mode, zero elsewhere.
  Frequency mode;
  std::map<Frequency, Complex> table;
  Complex scale{1.0, 0.0};
  Support support;

  static Generator zero() { return {}; }
  static Generator gevrey(double delta, double s, Complex scale = 1.0, Support support = {});
  static Generator exponential(double rate, Complex scale = 1.0, Support support = {});
  static Generator single_mode(Frequency mode, Complex amplitude);

  LogComplex value(const Frequency& xi) const;
  bool is_zero() const { return kind == Kind::Zero || scale == Complex{0.0, 0.0}; }
};

/// Initial datum g and forcing f; the forcing does not depend on time.
struct DataSpec {
  Generator initial;
  Generator forcing;
};

/// All frequencies with |xi|_inf <= truncation, lexicographic.
std::vector<Frequency> frequency_box(int dimension, int truncation);

/// Field of a single generator at time 0.
SpectralField sample_generator(const Generator& gen, int dimension, int truncation);

/// One field per requested time, each coefficient from duhamel_coefficient.
/// Frequencies where both data vanish are left out. Work is split over
/// worker_count() threads; the output does not depend on the split.
std::vector<SpectralField> solve_cauchy(const SymbolSpec& spec, const DataSpec& data,
                                        const std::vector<double>& times, int truncation,
                                        const QuadratureOptions& options = {});

/// (sum |u|^2 (1 + |xi|)^{2r})^{1/2}, accumulated in log form. +inf when the
/// result is not representable.
double sobolev_norm(const SpectralField& field, double r);

struct DecayFit {
  double s_hat = 1.0;
  double delta_hat = 0.0;
  double log_c = 0.0;
  /// RMS residual of the linear regression at s_hat.
  double residual = 0.0;
  int samples = 0;
  bool admissible = false;
  /// The best linear model grows with |xi|: the data are not decaying.
  bool positive_slope = false;
};

/// Fit logmag ~ log C - delta r^{1/s} over s in [1, 10] for samples (r, logmag).
/// Throws InsufficientData below 8 samples.
DecayFit fit_decay(const std::vector<double>& radius, const std::vector<double>& logmag);

/// Runs fit_decay along the rays +-e_j (and the diagonal when N >= 2) and
/// returns the worst ray (largest s_hat). Throws InsufficientData when no ray
/// has 8 nonzero samples.
DecayFit gevrey_fit(const SpectralField& field);

/// u(x_m) on the uniform grid x_m = 2 pi m / points in every dimension,
/// row-major with the last dimension fastest. Throws OverflowGuard.
std::vector<Complex> synthesize(const SpectralField& field, int points);

}  // namespace torus
