#include "torus_cauchy/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "torus_cauchy/error.hpp"
#include "torus_cauchy/parallel.hpp"

namespace torus {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void ProbeSequence::validate(double horizon) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && !(entries[i].n > entries[i - 1].n)) {
      throw Error(ErrorCode::InvalidArgument, "probe indices must be strictly increasing");
    }
    if (!(entries[i].t >= 0.0 && entries[i].t <= horizon)) {
      throw Error(ErrorCode::OutOfHorizon, "probe time outside [0, T] at n = " + std::to_string(entries[i].n));
    }
  }
  if (!expected_logmag.empty() && expected_logmag.size() != entries.size()) {
    throw Error(ErrorCode::InvalidArgument, "expected_logmag must match the probe entries");
  }
}

ProbeSequence axis_sequence(std::string label, const std::vector<int>& ns,
                            const std::function<double(int)>& time_of_n, int dimension, int axis, int sign) {
  if (axis < 0 || axis >= dimension) throw Error(ErrorCode::InvalidArgument, "probe axis out of range");
  ProbeSequence seq;
  seq.label = std::move(label);
  for (int n : ns) {
    Frequency xi(static_cast<std::size_t>(dimension), 0);
    xi[static_cast<std::size_t>(axis)] = sign * n;
    seq.entries.push_back({n, time_of_n(n), std::move(xi)});
  }
  return seq;
}

std::string to_string(Growth g) {
  switch (g) {
    case Growth::Diverging: return "Diverging";
    case Growth::Bounded: return "Bounded";
    case Growth::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

ProbeReport probe(const SymbolSpec& spec, const DataSpec& data, const ProbeSequence& seq,
                  const ProbeOptions& options) {
  spec.validate();
  seq.validate(spec.horizon);
  ProbeReport report;
  report.label = seq.label;
  report.rows.resize(seq.entries.size());

  parallel_for(seq.entries.size(), [&](std::size_t i) {
    const auto& e = seq.entries[i];
    if (static_cast<int>(e.xi.size()) != spec.dimension) {
      throw Error(ErrorCode::InvalidArgument, "probe frequency has the wrong dimension");
    }
    const LogComplex g = data.initial.value(e.xi);
    const LogComplex fv = data.forcing.value(e.xi);
    Forcing f;
    if (!fv.is_zero()) f = [fv](double) { return fv; };
    const LogComplex u = duhamel_coefficient(spec, g, f, e.t, e.xi, options.quadrature);
    ProbeRow& row = report.rows[i];
    row.n = e.n;
    row.t = e.t;
    row.xi_norm = norm(e.xi);
    row.logmag = u.logmag;
    row.expected_logmag = seq.expected_logmag.empty() ? kNaN : seq.expected_logmag[i];
    row.deviation = seq.expected_logmag.empty() ? kNaN : std::abs(row.logmag - row.expected_logmag);
  });

  report.max_deviation = seq.expected_logmag.empty() ? kNaN : 0.0;
  for (const auto& r : report.rows) {
    if (!seq.expected_logmag.empty()) report.max_deviation = std::max(report.max_deviation, r.deviation);
  }

  const std::size_t m = report.rows.size();
  const std::size_t start = m / 2;
  bool increasing = m - start >= 2;
  double tail_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = start; i < m; ++i) {
    tail_max = std::max(tail_max, report.rows[i].logmag);
    if (i > start && !(report.rows[i].logmag > report.rows[i - 1].logmag)) increasing = false;
  }
  if (m == 0) {
    report.growth = Growth::Inconclusive;
  } else if (increasing && report.rows.back().logmag > options.divergence_floor) {
    report.growth = Growth::Diverging;
  } else if (tail_max < options.divergence_floor && !increasing) {
    report.growth = Growth::Bounded;
  } else {
    report.growth = Growth::Inconclusive;
  }

  // log(logmag) = log a + nu log|xi| over the positive tail rows.
  std::vector<double> x, y;
  for (std::size_t i = start; i < m; ++i) {
    const auto& r = report.rows[i];
    if (r.logmag > 0.0 && r.xi_norm > 0.0 && std::isfinite(r.logmag)) {
      x.push_back(std::log(r.xi_norm));
      y.push_back(std::log(r.logmag));
    }
  }
  report.nu_hat = kNaN;
  report.nu_stderr = kNaN;
  report.amplitude = kNaN;
  if (x.size() >= 2) {
    const auto k = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx > 0.0) {
      report.nu_hat = sxy / sxx;
      report.amplitude = std::exp(my - report.nu_hat * mx);
      if (x.size() > 2) {
        double ss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const double e = y[i] - (my + report.nu_hat * (x[i] - mx));
          ss += e * e;
        }
        report.nu_stderr = std::sqrt(ss / (k - 2.0) / sxx);
      }
    }
  }
  return report;
}

DataSpec parabolic_violation_data() {
  DataSpec d;
  d.initial = Generator::zero();
  d.forcing = Generator::exponential(1.0);
  return d;
}

DataSpec drift_violation_data(int axis, double varsigma, double delta) {
  if (!(varsigma > 0.0 && delta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "varsigma and delta must be positive");
  }
  if (axis < 0) throw Error(ErrorCode::InvalidArgument, "axis must be nonnegative");
  DataSpec d;
  d.initial = Generator::zero();
  d.forcing = Generator::exponential(delta * varsigma / 4.0, Complex{0.0, -1.0},
                                     Support{Support::Kind::PositiveAxis, axis});
  return d;
}

double extremal_profile(double x, double p, double q, double Gamma, double gamma) {
  return -Gamma * std::pow(x, p + 1.0) / (p + 1.0) + gamma * std::pow(x, q + 1.0) / (q + 1.0);
}

DegenerateWitness degenerate_witness(const DegeneratePoint& point, int dimension, double horizon,
                                     const std::vector<int>& ns, double Gamma, double gamma, int ell) {
  if (!point.in_K()) {
    throw Error(ErrorCode::NotInK, "p = " + std::to_string(point.p) + " <= 2q + 1 = " +
                                       std::to_string(2.0 * point.q() + 1.0));
  }
  if (static_cast<int>(point.q_j.size()) != dimension) {
    throw Error(ErrorCode::InvalidArgument, "drift orders must match the dimension");
  }
  DegenerateWitness w;
  w.axis = point.argmin_axis();
  const double p = point.p;
  const double q = point.q();
  if (Gamma <= 0.0) Gamma = point.leading_factor_upper;
  if (gamma <= 0.0) {
    gamma = w.axis < point.drift_factor_lower.size() ? point.drift_factor_lower[w.axis] : 1.0;
  }
  if (!(Gamma > 0.0 && gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "Gamma and gamma must be positive");
  w.negative_axis = w.axis < point.drift_sign.size() && point.drift_sign[w.axis] == FactorSign::Negative;
  w.initial_variant = point.t_k == 0.0;
  w.rho = (p - q) / (p - 2.0 * q - 1.0);
  w.nu = 1.0 / w.rho;

  const double window = std::pow(gamma / Gamma, 1.0 / (p - q));
  // Probe times must stay in [t_k - radius, t_k] (or [0, radius] at t_k = 0).
  const double reach = w.initial_variant ? horizon : point.t_k;
  const double radius = point.neighborhood > 0.0 ? std::min(point.neighborhood, reach) : reach;
  if (ell == 0) {
    ell = static_cast<int>(std::floor(1.0 / window)) + 1;
    ell = std::max(ell, static_cast<int>(std::ceil(1.0 / radius)));
  }
  if (ell < 1 || !(1.0 / ell < window)) {
    throw Error(ErrorCode::BadLadder, "1/ell = " + std::to_string(1.0 / ell) +
                                          " outside the increasing window (0, " + std::to_string(window) + ")");
  }
  if (1.0 / ell > radius) {
    throw Error(ErrorCode::BadLadder, "probe times leave the neighborhood of the zero for ell = " +
                                          std::to_string(ell));
  }
  w.ell = ell;

  const Support support{Support::Kind::Axis, static_cast<int>(w.axis)};
  const double expo = 1.0 / (p - q);
  const double L = static_cast<double>(ell);
  std::function<double(int)> time_of_n;
  if (w.initial_variant) {
    w.varsigma = extremal_profile(1.0 / L, p, q, Gamma, gamma);
    w.vartheta = 0.5 * w.varsigma;
    w.data.initial = Generator::gevrey(w.vartheta, w.rho, 1.0, support);
    w.data.forcing = Generator::zero();
    time_of_n = [=](int n) { return 1.0 / (L * std::pow(static_cast<double>(n), expo)); };
  } else {
    w.varsigma = extremal_profile(1.0 / (2.0 * L), p, q, Gamma, gamma) -
                 extremal_profile(1.0 / (3.0 * L), p, q, Gamma, gamma);
    w.vartheta = 0.5 * w.varsigma;
    w.data.initial = Generator::zero();
    w.data.forcing = Generator::gevrey(w.vartheta, w.rho, Complex{0.0, -1.0}, support);
    const double tk = point.t_k;
    time_of_n = [=](int n) { return tk - 1.0 / (3.0 * L * std::pow(static_cast<double>(n), expo)); };
  }
  w.sequence = axis_sequence(w.initial_variant ? "degenerate-initial" : "degenerate-interior", ns, time_of_n,
                             dimension, static_cast<int>(w.axis), w.negative_axis ? -1 : 1);
  w.sequence.validate(horizon);
  return w;
}

}  // namespace torus
