#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "torus_cauchy/classifier.hpp"
#include "torus_cauchy/error.hpp"
#include "torus_cauchy/presets.hpp"
#include "torus_cauchy/witness.hpp"

using namespace torus;

namespace {

const Complex I{0.0, 1.0};

ProbeSequence fixed_time(int dimension, int axis, double t, const std::vector<int>& ns) {
  return axis_sequence("fixed", ns, [t](int) { return t; }, dimension, axis);
}

ProbeSequence super_mario_sequence(const std::vector<int>& ns) {
  auto seq = axis_sequence("super-mario", ns, [](int n) { return 1.0 / std::sqrt(2.0 * std::log(double(n))); }, 1, 0);
  for (int n : ns) seq.expected_logmag.push_back(std::pow(n, 0.6) - std::sqrt(double(n)) - 1.0);
  return seq;
}

DataSpec initial_data(Generator g) {
  DataSpec d;
  d.initial = std::move(g);
  return d;
}

SymbolSpec with_coefficients(int dimension, TimeCoefficient a2, std::vector<TimeCoefficient> a1,
                             TimeCoefficient a0 = TimeCoefficient::zero(1.0)) {
  SymbolSpec s;
  s.dimension = dimension;
  s.a2 = std::move(a2);
  s.a1 = std::move(a1);
  s.a0 = std::move(a0);
  return s;
}

std::vector<TimeCoefficient> zeros(int n) { return std::vector<TimeCoefficient>(n, TimeCoefficient::zero(1.0)); }

struct ConsistencyCase {
  std::string name;
  SymbolSpec spec;
  DataSpec data;
  ProbeSequence sequence;
  /// Gevrey index of the data; 1 for analytic data.
  double data_class = 1.0;
};

DegenerateWitness p4_witness(const SymbolSpec& spec, std::size_t zero = 0) {
  const auto st = derive_structure(spec);
  return degenerate_witness(st.leading.zeros.at(zero), spec.dimension, spec.horizon, {256, 512, 1024, 2048, 4096});
}

std::vector<ConsistencyCase> consistency_suite() {
  std::vector<ConsistencyCase> out;
  const std::vector<int> small{4, 8, 16, 32};
  const std::vector<int> drift_ns{16, 32, 64, 128};

  out.push_back({"positive leading", with_coefficients(1, TimeCoefficient::constant(1.0, I), zeros(1)),
                 parabolic_violation_data(), fixed_time(1, 0, 0.5, small)});
  out.push_back({"positive after t = 1/2",
                 with_coefficients(2, TimeCoefficient::polynomial(1.0, {-I, 2.0 * I}), zeros(2)),
                 parabolic_violation_data(), fixed_time(2, 0, 1.0, small)});
  out.push_back({"heat 1d", presets::heat(1), parabolic_violation_data(), fixed_time(1, 0, 0.5, small)});
  out.push_back({"heat 3d", presets::heat(3), parabolic_violation_data(), fixed_time(3, 2, 0.5, small)});
  out.push_back({"parabolic with real parts",
                 with_coefficients(1, TimeCoefficient::constant(1.0, {2.0, -1.0}),
                                   {TimeCoefficient::constant(1.0, {1.0, 0.5})}),
                 parabolic_violation_data(), fixed_time(1, 0, 1.0, small)});
  out.push_back({"real symbol",
                 with_coefficients(1, TimeCoefficient::constant(1.0, 1.0), {TimeCoefficient::constant(1.0, 1.0)}),
                 drift_violation_data(0, 1.0, 1.0), fixed_time(1, 0, 1.0, drift_ns)});
  out.push_back({"real drifts 2d",
                 with_coefficients(2, TimeCoefficient::zero(1.0),
                                   {TimeCoefficient::constant(1.0, 0.5), TimeCoefficient::constant(1.0, -1.0)},
                                   TimeCoefficient::constant(1.0, 0.3)),
                 drift_violation_data(1, 1.0, 1.0), fixed_time(2, 1, 1.0, drift_ns)});
  out.push_back({"pure imaginary drift", with_coefficients(1, TimeCoefficient::zero(1.0), {TimeCoefficient::constant(1.0, I)}),
                 drift_violation_data(0, 1.0, 1.0), fixed_time(1, 0, 1.0, drift_ns)});
  out.push_back({"imaginary drift on the second axis",
                 with_coefficients(2, TimeCoefficient::zero(1.0), {TimeCoefficient::zero(1.0), TimeCoefficient::constant(1.0, I)}),
                 drift_violation_data(1, 1.0, 1.0), fixed_time(2, 1, 1.0, drift_ns)});
  out.push_back({"growing imaginary drift",
                 with_coefficients(1, TimeCoefficient::zero(1.0), {TimeCoefficient::polynomial(1.0, {0.0, I})}),
                 drift_violation_data(0, 1.0, 1.0), fixed_time(1, 0, 1.0, {64, 128, 256, 512})});

  const auto p4 = presets::degenerate_single_zero(4.0, 0.0, 0.5, 1.0, 1.0);
  const auto w = p4_witness(p4);
  out.push_back({"interior zero p = 4, q = 0, witness data", p4, w.data, w.sequence, w.rho});
  DataSpec mild;
  mild.forcing = Generator::gevrey(1.0, 1.2, -I, Support{Support::Kind::Axis, 0});
  out.push_back({"interior zero p = 4, q = 0, G^1.2 data", p4, mild, w.sequence, 1.2});

  out.push_back({"interior zero p = 3, q = 1",
                 presets::degenerate_single_zero(3.0, 1.0, 0.5, 1.0, 1.0),
                 initial_data(Generator::exponential(1.0)), fixed_time(1, 0, 1.0, {16, 32, 64, 128, 256})});

  const auto k4 = presets::intro_example(4, 0);
  const auto wk = p4_witness(k4);
  out.push_back({"intro k = 4, l = 0, witness data", k4, wk.data, wk.sequence, wk.rho});
  out.push_back({"intro k = 3, l = 1", presets::intro_example(3, 1), initial_data(Generator::exponential(1.0)),
                 fixed_time(1, 0, 1.0, {16, 32, 64, 128, 256})});
  return out;
}

}  // namespace

TEST_SUITE("witness") {
  TEST_CASE("parabolic_violation_data") {
    const auto d = parabolic_violation_data();
    CHECK(d.initial.is_zero());
    CHECK(d.forcing.value({3, 0}).logmag == doctest::Approx(-3.0));
  }

  TEST_CASE("drift_violation_data") {
    const auto d = drift_violation_data(0, 1.0, 1.0);
    CHECK(d.initial.is_zero());
    CHECK(d.forcing.value({4, 0}).logmag == doctest::Approx(-1.0));
    CHECK(d.forcing.value({-4, 0}).is_zero());
    CHECK_THROWS_AS(drift_violation_data(0, 0.0, 1.0), Error);
  }

  TEST_CASE("drift violation meets its lower bound") {
    // |u(1, eta)| >= (delta / 2) exp(delta varsigma eta / 4) with delta = varsigma = 1.
    const auto s = with_coefficients(1, TimeCoefficient::zero(1.0), {TimeCoefficient::constant(1.0, I)});
    const auto r = probe(s, drift_violation_data(0, 1.0, 1.0), fixed_time(1, 0, 1.0, {16, 32, 64, 128}));
    for (const auto& row : r.rows) CHECK(row.logmag >= std::log(0.5) + row.n / 4.0);
    CHECK(r.growth == Growth::Diverging);
  }

  TEST_CASE("Super Mario ill-posed variant reproduces its closed form") {
    const auto r = probe(presets::flat_profile(0.2), initial_data(Generator::gevrey(1.0, 2.0)),
                         super_mario_sequence({64, 256, 1024, 4096}));
    REQUIRE(r.rows.size() == 4);
    CHECK(r.rows[2].logmag == doctest::Approx(31.0).epsilon(1e-9));
    for (const auto& row : r.rows) CHECK(std::abs(row.deviation) <= 1e-9 * std::abs(row.expected_logmag));
    CHECK(r.growth == Growth::Diverging);
  }

  TEST_CASE("Super Mario well-posed variant stays bounded") {
    const auto r = probe(presets::flat_profile(1.0), initial_data(Generator::gevrey(1.0, 2.0)),
                         super_mario_sequence({64, 256, 1024, 4096}));
    CHECK(r.growth == Growth::Bounded);
    for (const auto& row : r.rows) CHECK(row.logmag <= -std::sqrt(double(row.n)) + 1e-9);
  }

  TEST_CASE("fourth-order example reproduces its closed form") {
    auto seq = axis_sequence("fourth-order", {64, 256, 1024}, [](int n) { return std::pow(double(n), -0.8); }, 1, 0);
    const auto r = probe(presets::fourth_order_remark(), initial_data(Generator::exponential(1.0)), seq);
    const double n = 1024.0;
    const double exact = -1.0 + std::pow(n, 0.6) + std::pow(n, 1.2) + std::pow(n, -0.6) - n;
    CHECK(exact == doctest::Approx(3135.015625).epsilon(1e-13));
    CHECK(r.rows[2].logmag == doctest::Approx(exact).epsilon(1e-9));
    CHECK(r.growth == Growth::Diverging);
  }

  TEST_CASE("probe rejects bad sequences") {
    ProbeSequence seq;
    seq.entries = {{2, 0.5, {2}}, {1, 0.5, {1}}};
    CHECK_THROWS_AS(probe(presets::heat(1), parabolic_violation_data(), seq), Error);
    ProbeSequence late;
    late.entries = {{1, 1.5, {1}}};
    CHECK_THROWS_AS(probe(presets::heat(1), parabolic_violation_data(), late), Error);
  }

  TEST_CASE("extremal profile") {
    CHECK(extremal_profile(1.0, 4.0, 0.0, 1.0, 1.0) == doctest::Approx(0.8));
    CHECK(extremal_profile(0.5, 4.0, 0.0, 1.0, 1.0) == doctest::Approx(0.5 - 1.0 / 160.0));
  }

  TEST_CASE("degenerate witness constants for p = 4, q = 0") {
    const auto w = p4_witness(presets::degenerate_single_zero(4.0, 0.0, 0.5, 1.0, 1.0));
    CHECK(w.ell == 2);
    // varsigma = f(1/4) - f(1/6) with f(x) = x - x^5/5.
    const double varsigma = (0.25 - std::pow(0.25, 5) / 5.0) - (1.0 / 6.0 - std::pow(1.0 / 6.0, 5) / 5.0);
    CHECK(w.varsigma == doctest::Approx(varsigma).epsilon(1e-15));
    CHECK(w.varsigma == doctest::Approx(0.083163740997942386831).epsilon(1e-14));
    CHECK(w.vartheta == doctest::Approx(varsigma / 2.0).epsilon(1e-15));
    CHECK(w.rho == doctest::Approx(4.0 / 3.0));
    CHECK(w.nu == doctest::Approx(0.75));
    CHECK_FALSE(w.initial_variant);
    CHECK(w.sequence.entries[0].t == doctest::Approx(0.5 - 1.0 / (6.0 * 4.0)));
  }

  TEST_CASE("degenerate dichotomy for p = 4, q = 0") {
    const auto spec = presets::degenerate_single_zero(4.0, 0.0, 0.5, 1.0, 1.0);
    const auto w = degenerate_witness(derive_structure(spec).leading.zeros[0], 1, 1.0,
                                      {16, 32, 64, 128, 256, 512, 1024, 2048, 4096});
    const auto r = probe(spec, w.data, w.sequence);
    CHECK(r.growth == Growth::Diverging);
    CHECK(r.nu_hat == doctest::Approx(0.75).epsilon(0.10));
    for (const auto& row : r.rows) {
      const double bound = 0.5 * w.varsigma * std::pow(row.n, w.nu) - std::log(2.0 * w.ell * std::pow(row.n, 0.25));
      CHECK(row.logmag >= bound);
    }

    DataSpec mild;
    mild.forcing = Generator::gevrey(1.0, 1.2, -I, Support{Support::Kind::Axis, 0});
    CHECK(probe(spec, mild, w.sequence).growth == Growth::Bounded);
  }

  TEST_CASE("negative drift sign flips the probe axis") {
    auto z = derive_structure(presets::degenerate_single_zero(4.0, 0.0, 0.5, 1.0, 1.0)).leading.zeros[0];
    z.drift_sign = {FactorSign::Negative};
    const auto w = degenerate_witness(z, 1, 1.0, {16, 32});
    CHECK(w.negative_axis);
    CHECK(w.sequence.entries[0].xi[0] == -16);
  }

  TEST_CASE("degenerate witness errors") {
    const auto z = derive_structure(presets::degenerate_single_zero(3.0, 1.0, 0.5, 1.0, 1.0)).leading.zeros[0];
    try {
      degenerate_witness(z, 1, 1.0, {16});
      FAIL("expected NotInK");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotInK);
    }
    const auto p4 = derive_structure(presets::degenerate_single_zero(4.0, 0.0, 0.5, 1.0, 1.0)).leading.zeros[0];
    try {
      degenerate_witness(p4, 1, 1.0, {16}, 0.0, 0.0, 1);
      FAIL("expected BadLadder");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadLadder);
    }
  }

  TEST_CASE("verdicts and probes agree") {
    const auto suite = consistency_suite();
    REQUIRE(suite.size() >= 12);
    std::set<std::string> branches;
    for (const auto& c : suite) {
      CAPTURE(c.name);
      const auto v = classify(derive_structure(c.spec));
      branches.insert(v.provenance);
      const bool ill = !v.gevrey_threshold.infinite && c.data_class >= v.gevrey_threshold.value;
      const auto r = probe(c.spec, c.data, c.sequence);
      CHECK(r.growth == (ill ? Growth::Diverging : Growth::Bounded));
    }
    CHECK(branches.size() == 6);
  }
}
