#include "torus_cauchy/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "torus_cauchy/error.hpp"
#include "torus_cauchy/parallel.hpp"

namespace torus {

LogComplex SpectralField::at(const Frequency& xi) const {
  const auto it = coefficients.find(xi);
  return it == coefficients.end() ? LogComplex::zero() : it->second;
}

bool Support::contains(const Frequency& xi) const {
  if (kind == Kind::All) return true;
  for (std::size_t j = 0; j < xi.size(); ++j) {
    if (static_cast<int>(j) != axis && xi[j] != 0) return false;
  }
  const int v = xi[static_cast<std::size_t>(axis)];
  switch (kind) {
    case Kind::Axis: return true;
    case Kind::PositiveAxis: return v > 0;
    case Kind::NegativeAxis: return v < 0;
    case Kind::All: break;
  }
  return true;
}

Generator Generator::gevrey(double delta, double s, Complex scale, Support support) {
  if (!(delta > 0.0) || !(s >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "GevreyDecay needs delta > 0 and s >= 1");
  }
  Generator g;
  g.kind = Kind::GevreyDecay;
  g.delta = delta;
  g.s = s;
  g.scale = scale;
  g.support = support;
  return g;
}

Generator Generator::exponential(double rate, Complex scale, Support support) {
  if (!(rate >= 0.0)) throw Error(ErrorCode::InvalidArgument, "ExponentialDecay needs rate >= 0");
  Generator g;
  g.kind = Kind::ExponentialDecay;
  g.rate = rate;
  g.scale = scale;
  g.support = support;
  return g;
}

Generator Generator::single_mode(Frequency mode, Complex amplitude) {
  Generator g;
  g.kind = Kind::SingleMode;
  g.mode = std::move(mode);
  g.scale = amplitude;
  return g;
}

LogComplex Generator::value(const Frequency& xi) const {
  if (is_zero() || !support.contains(xi)) return LogComplex::zero();
  const LogComplex sc = LogComplex::from_complex(scale);
  switch (kind) {
    case Kind::Zero: return LogComplex::zero();
    case Kind::GevreyDecay: return sc * LogComplex{-delta * std::pow(norm(xi), 1.0 / s), 0.0};
    case Kind::ExponentialDecay: return sc * LogComplex{-rate * norm(xi), 0.0};
    case Kind::SingleMode: return xi == mode ? sc : LogComplex::zero();
    case Kind::Table: {
      const auto it = table.find(xi);
      return it == table.end() ? LogComplex::zero() : sc * LogComplex::from_complex(it->second);
    }
  }
  return LogComplex::zero();
}

std::vector<Frequency> frequency_box(int dimension, int truncation) {
  if (dimension < 1 || truncation < 0) throw Error(ErrorCode::InvalidArgument, "bad frequency box");
  std::vector<Frequency> out;
  Frequency xi(static_cast<std::size_t>(dimension), -truncation);
  while (true) {
    out.push_back(xi);
    int j = dimension - 1;
    while (j >= 0 && xi[static_cast<std::size_t>(j)] == truncation) {
      xi[static_cast<std::size_t>(j)] = -truncation;
      --j;
    }
    if (j < 0) break;
    ++xi[static_cast<std::size_t>(j)];
  }
  return out;
}

SpectralField sample_generator(const Generator& gen, int dimension, int truncation) {
  SpectralField field;
  field.dimension = dimension;
  field.truncation = truncation;
  if (gen.is_zero()) return field;
  for (const auto& xi : frequency_box(dimension, truncation)) {
    const LogComplex v = gen.value(xi);
    if (!v.is_zero()) field.coefficients.emplace(xi, v);
  }
  return field;
}

std::vector<SpectralField> solve_cauchy(const SymbolSpec& spec, const DataSpec& data,
                                        const std::vector<double>& times, int truncation,
                                        const QuadratureOptions& options) {
  spec.validate();
  if (truncation < 1) throw Error(ErrorCode::InvalidArgument, "truncation must be >= 1");
  if (!std::is_sorted(times.begin(), times.end())) {
    throw Error(ErrorCode::InvalidArgument, "times must be sorted");
  }
  for (double t : times) {
    if (!(t >= 0.0 && t <= spec.horizon)) throw Error(ErrorCode::OutOfHorizon, "solve time outside [0, T]");
  }

  std::vector<Frequency> active;
  for (auto& xi : frequency_box(spec.dimension, truncation)) {
    if (!data.initial.value(xi).is_zero() || !data.forcing.value(xi).is_zero()) active.push_back(std::move(xi));
  }

  std::vector<std::vector<LogComplex>> values(active.size());
  parallel_for(active.size(), [&](std::size_t i) {
    const Frequency& xi = active[i];
    const LogComplex g = data.initial.value(xi);
    const LogComplex fv = data.forcing.value(xi);
    Forcing f;
    if (!fv.is_zero()) f = [fv](double) { return fv; };
    auto& row = values[i];
    row.reserve(times.size());
    for (double t : times) row.push_back(duhamel_coefficient(spec, g, f, t, xi, options));
  });

  std::vector<SpectralField> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    out[k].dimension = spec.dimension;
    out[k].truncation = truncation;
    out[k].time = times[k];
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (!values[i][k].is_zero()) out[k].coefficients.emplace(active[i], values[i][k]);
    }
  }
  return out;
}

double sobolev_norm(const SpectralField& field, double r) {
  LogSum sum;
  for (const auto& [xi, v] : field.coefficients) {
    if (v.is_zero()) continue;
    const double term = v.logmag + r * std::log1p(norm(xi));
    if (term > kOverflowGuard) return std::numeric_limits<double>::infinity();
    sum.add(LogComplex{2.0 * term, 0.0});
  }
  const LogComplex total = sum.value();
  if (total.is_zero()) return 0.0;
  const double half = 0.5 * total.logmag;
  if (half > kOverflowGuard) return std::numeric_limits<double>::infinity();
  return std::exp(half);
}

namespace {

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - f.intercept - f.slope * x[i];
    ss += e * e;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

LineFit fit_at(double s, const std::vector<double>& radius, const std::vector<double>& logmag) {
  std::vector<double> x(radius.size());
  for (std::size_t i = 0; i < radius.size(); ++i) x[i] = std::pow(radius[i], 1.0 / s);
  return fit_line(x, logmag);
}

}  // namespace

DecayFit fit_decay(const std::vector<double>& radius, const std::vector<double>& logmag) {
  constexpr std::size_t kMinSamples = 8;
  if (radius.size() != logmag.size() || radius.size() < kMinSamples) {
    throw Error(ErrorCode::InsufficientData, "decay fit needs at least 8 samples");
  }
  constexpr double kLo = 1.0;
  constexpr double kHi = 10.0;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = kLo, b = kHi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fit_at(c, radius, logmag).rms;
  double fd = fit_at(d, radius, logmag).rms;
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fit_at(c, radius, logmag).rms;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fit_at(d, radius, logmag).rms;
    }
  }
  double best_s = 0.5 * (a + b);
  LineFit best = fit_at(best_s, radius, logmag);
  // The search interval is closed; a minimum on the boundary is a clamp.
  for (double edge : {kLo, kHi}) {
    const LineFit e = fit_at(edge, radius, logmag);
    if (e.rms < best.rms) {
      best = e;
      best_s = edge;
    }
  }

  DecayFit out;
  out.s_hat = best_s;
  out.delta_hat = -best.slope;
  out.log_c = best.intercept;
  out.residual = best.rms;
  out.samples = static_cast<int>(radius.size());
  out.positive_slope = best.slope > 0.0;
  const auto [lo, hi] = std::minmax_element(logmag.begin(), logmag.end());
  const double range = *hi - *lo;
  out.admissible = out.residual <= 1e-3 * std::max(1.0, range) && out.delta_hat > 0.0;
  return out;
}

DecayFit gevrey_fit(const SpectralField& field) {
  const auto n = static_cast<std::size_t>(field.dimension);
  std::vector<Frequency> directions;
  for (std::size_t j = 0; j < n; ++j) {
    Frequency e(n, 0);
    e[j] = 1;
    directions.push_back(e);
    e[j] = -1;
    directions.push_back(e);
  }
  if (n >= 2) directions.emplace_back(n, 1);

  bool have = false;
  DecayFit worst;
  for (const auto& dir : directions) {
    std::vector<double> radius;
    std::vector<double> logmag;
    for (int k = 1; k <= field.truncation; ++k) {
      Frequency xi(n);
      for (std::size_t j = 0; j < n; ++j) xi[j] = k * dir[j];
      const LogComplex v = field.at(xi);
      if (v.is_zero()) continue;
      radius.push_back(norm(xi));
      logmag.push_back(v.logmag);
    }
    if (radius.size() < 8) continue;
    const DecayFit f = fit_decay(radius, logmag);
    if (!have || f.s_hat > worst.s_hat) worst = f;
    have = true;
  }
  if (!have) throw Error(ErrorCode::InsufficientData, "no ray carries 8 nonzero coefficients");
  return worst;
}

std::vector<Complex> synthesize(const SpectralField& field, int points) {
  if (points < 1) throw Error(ErrorCode::InvalidArgument, "points must be >= 1");
  const auto n = static_cast<std::size_t>(field.dimension);
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= static_cast<std::size_t>(points);

  std::vector<std::pair<Frequency, Complex>> modes;
  for (const auto& [xi, v] : field.coefficients) modes.emplace_back(xi, v.to_complex());

  // exp(2 pi i k / points) for every residue k, so phases never grow with |xi|.
  std::vector<Complex> roots(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) roots[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / points);

  std::vector<Complex> out(total, Complex{0.0, 0.0});
  std::vector<int> m(n, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t j = n; j-- > 0;) {
      m[j] = static_cast<int>(rest % static_cast<std::size_t>(points));
      rest /= static_cast<std::size_t>(points);
    }
    Complex acc{0.0, 0.0};
    for (const auto& [xi, c] : modes) {
      long long k = 0;
      for (std::size_t j = 0; j < n; ++j) k += static_cast<long long>(xi[j]) * m[j];
      k %= points;
      if (k < 0) k += points;
      acc += c * roots[static_cast<std::size_t>(k)];
    }
    out[idx] = acc;
  }
  return out;
}

}  // namespace torus
