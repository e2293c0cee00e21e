#pragma once

#include <functional>
#include <string>
#include <vector>

#include "torus_cauchy/classifier.hpp"
#include "torus_cauchy/spectral_field.hpp"
#include "torus_cauchy/symbol.hpp"

namespace torus {

struct ProbeEntry {
  int n = 0;
  double t = 0.0;
  Frequency xi;
};

struct ProbeSequence {
  std::string label;
  std::vector<ProbeEntry> entries;
  /// Closed-form log-magnitudes, one per entry, or empty.
  std::vector<double> expected_logmag;

  /// Throws InvalidArgument unless n is strictly increasing and every t lies
  /// in [0, horizon].
  void validate(double horizon) const;
};

/// xi_n = sign * n * e_axis at time time_of_n(n).
ProbeSequence axis_sequence(std::string label, const std::vector<int>& ns,
                            const std::function<double(int)>& time_of_n, int dimension, int axis,
                            int sign = 1);

enum class Growth { Diverging, Bounded, Inconclusive };
std::string to_string(Growth g);

struct ProbeRow {
  int n = 0;
  double t = 0.0;
  double xi_norm = 0.0;
  double logmag = 0.0;
  /// NaN when the sequence carries no closed form.
  double expected_logmag = 0.0;
  double deviation = 0.0;
};

struct ProbeReport {
  std::string label;
  std::vector<ProbeRow> rows;
  Growth growth = Growth::Inconclusive;
  /// Fit logmag ~ a |xi|^nu over the positive rows of the final half; NaN
  /// when fewer than two such rows exist.
  double nu_hat = 0.0;
  double nu_stderr = 0.0;
  double amplitude = 0.0;
  /// Max |logmag - expected| (NaN without closed form).
  double max_deviation = 0.0;
};

struct ProbeOptions {
  /// Diverging needs the final logmag above this many natural-log units.
  double divergence_floor = 50.0;
  QuadratureOptions quadrature;
};

/// Evaluates u(t_n, xi_n) for every entry and classifies the growth:
/// Diverging when logmag strictly increases over the final half of the rows
/// and ends above the floor, Bounded when the final half stays below the
/// floor without strictly increasing, Inconclusive otherwise.
ProbeReport probe(const SymbolSpec& spec, const DataSpec& data, const ProbeSequence& seq,
                  const ProbeOptions& options = {});

/// g = 0, f(xi) = exp(-|xi|), constant in time.
DataSpec parabolic_violation_data();

/// g = 0, f(eta e_axis) = -i exp(-(delta varsigma / 4) eta) for eta > 0 only.
DataSpec drift_violation_data(int axis, double varsigma, double delta);

/// x -> -Gamma x^{p+1}/(p+1) + gamma x^{q+1}/(q+1), increasing on
/// (0, (gamma/Gamma)^{1/(p-q)}).
double extremal_profile(double x, double p, double q, double Gamma, double gamma);

struct DegenerateWitness {
  DataSpec data;
  ProbeSequence sequence;
  int ell = 0;
  double varsigma = 0.0;
  double vartheta = 0.0;
  double rho = 0.0;
  /// Expected growth exponent 1 / rho.
  double nu = 0.0;
  std::size_t axis = 0;
  /// The probe runs along -e_axis because the drift factor is negative there.
  bool negative_axis = false;
  /// Zero at t = 0: the datum carries the growth instead of the forcing.
  bool initial_variant = false;
};

/// Data and probe sequence that blow up at the threshold rho of `point`.
/// ell = 0 picks the smallest admissible integer. Gamma and gamma default to
/// the point's factor bounds when <= 0. Throws NotInK and BadLadder.
DegenerateWitness degenerate_witness(const DegeneratePoint& point, int dimension, double horizon,
                                     const std::vector<int>& ns, double Gamma = 0.0, double gamma = 0.0,
                                     int ell = 0);

}  // namespace torus
