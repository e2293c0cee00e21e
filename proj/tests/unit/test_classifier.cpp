#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "torus_cauchy/classifier.hpp"
#include "torus_cauchy/error.hpp"
#include "torus_cauchy/gauge.hpp"
#include "torus_cauchy/oracle.hpp"
#include "torus_cauchy/presets.hpp"

using namespace torus;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DegeneratePoint point(double t, double p, std::vector<double> q) {
  DegeneratePoint z;
  z.t_k = t;
  z.p = p;
  z.q_j = std::move(q);
  z.drift_factor_lower.assign(z.q_j.size(), 1.0);
  z.drift_sign.assign(z.q_j.size(), FactorSign::Positive);
  z.neighborhood = 0.1;
  return z;
}

ImaginaryStructure degenerate(std::vector<DegeneratePoint> zeros) {
  ImaginaryStructure s;
  s.dimension = static_cast<int>(zeros.front().q_j.size());
  s.leading.kind = LeadingKind::DegenerateNonpositive;
  s.leading.zeros = std::move(zeros);
  for (int j = 0; j < s.dimension; ++j) s.drifts.push_back({DriftKind::DegenerateOrders, {}});
  return s;
}

ImaginaryStructure simple(LeadingKind leading, DriftKind drift, int dimension = 1) {
  ImaginaryStructure s;
  s.dimension = dimension;
  s.leading.kind = leading;
  s.leading.t_star = 0.3;
  s.leading.interval = {0.2, 0.6};
  for (int j = 0; j < dimension; ++j) s.drifts.push_back({drift, {0.1, 0.5}});
  return s;
}

bool everywhere(const Verdict& v, Posedness p) {
  return v.sobolev == p && v.smooth == p && v.analytic == p;
}

}  // namespace

TEST_SUITE("classifier") {
  TEST_CASE("Rational") {
    CHECK(Rational::make(6, -4) == Rational{-3, 2});
    CHECK(Rational::make(0, 5) == Rational{0, 1});
    CHECK(Rational::make(4, 3).str() == "4/3");
    CHECK(Rational::make(3, 1).str() == "3");
    CHECK(Rational::from_double(0.5) == Rational{1, 2});
    CHECK(Rational::from_double(4.0 / 3.0) == Rational{4, 3});
    CHECK_FALSE(Rational::from_double(std::sqrt(2.0)).has_value());
    CHECK(*add(Rational{1, 3}, Rational{1, 6}) == Rational{1, 2});
    CHECK(*div(Rational{9, 7}, Rational{3, 7}) == Rational{3, 1});
    CHECK_FALSE(div(Rational{1, 2}, Rational{0, 1}).has_value());
    CHECK_FALSE(mul(Rational{std::numeric_limits<std::int64_t>::max(), 1}, Rational{2, 1}).has_value());
    CHECK(Rational{4, 3} < Rational{3, 2});
    CHECK_THROWS_AS(Rational::make(1, 0), Error);
  }

  TEST_CASE("gevrey_threshold examples") {
    const auto three = gevrey_threshold({point(0.5, 4.0, {1.0})});
    REQUIRE_FALSE(three.infinite);
    CHECK(*three.exact == Rational{3, 1});

    CHECK(gevrey_threshold({point(0.5, 3.0, {1.0})}).infinite);

    const auto two = gevrey_threshold({point(0.2, 4.0, {0.0}), point(0.7, 10.0, {1.0})});
    CHECK(*two.exact == Rational{9, 7});
    CHECK(two.value == 9.0 / 7.0);

    const auto irrational = gevrey_threshold({point(0.5, 2.0 + std::sqrt(2.0), {0.0})});
    CHECK_FALSE(irrational.exact.has_value());
    CHECK(irrational.value == doctest::Approx((2.0 + std::sqrt(2.0)) / (1.0 + std::sqrt(2.0))));
  }

  TEST_CASE("q is the minimum over the axes and +inf drops a point from K") {
    const auto z = point(0.5, 4.0, {2.0, 0.5, kInf});
    CHECK(z.q() == 0.5);
    CHECK(z.argmin_axis() == 1);
    CHECK(z.in_K());
    CHECK_FALSE(point(0.5, 4.0, {kInf}).in_K());
  }

  TEST_CASE("intro examples") {
    const auto wp = classify(derive_structure(presets::intro_example(3, 1)));
    CHECK(everywhere(wp, Posedness::WellPosed));
    CHECK(wp.gevrey_threshold.infinite);

    const auto v = classify(derive_structure(presets::intro_example(4, 0)));
    CHECK(v.sobolev == Posedness::IllPosed);
    CHECK(v.smooth == Posedness::IllPosed);
    CHECK(v.analytic == Posedness::WellPosed);
    REQUIRE(v.gevrey_threshold.exact.has_value());
    CHECK(*v.gevrey_threshold.exact == Rational{4, 3});
    CHECK(v.provenance == "degenerate-threshold");
  }

  TEST_CASE("decision tree branches") {
    const auto positive = classify(simple(LeadingKind::SomewherePositive, DriftKind::DegenerateOrders));
    CHECK(everywhere(positive, Posedness::IllPosed));
    CHECK(positive.gevrey_threshold.value == 1.0);
    CHECK(positive.provenance == "parabolic-violation");

    const auto parabolic = classify(simple(LeadingKind::StrictlyNegative, DriftKind::NonzeroOnInterval));
    CHECK(everywhere(parabolic, Posedness::WellPosed));
    CHECK(parabolic.provenance == "parabolic");

    const auto vanishing = classify(simple(LeadingKind::IdenticallyZero, DriftKind::IdenticallyZero, 2));
    CHECK(everywhere(vanishing, Posedness::WellPosed));
    CHECK(vanishing.provenance == "vanishing-drift");

    const auto violation = classify(simple(LeadingKind::IdenticallyZero, DriftKind::NonzeroOnInterval, 2));
    CHECK(everywhere(violation, Posedness::IllPosed));
    CHECK(violation.provenance == "drift-violation");

    const auto on_interval = classify(simple(LeadingKind::ZeroOnInterval, DriftKind::NonzeroOnInterval));
    CHECK(on_interval.provenance == "drift-violation");
  }

  TEST_CASE("leading zero interval missed by every drift is unclassifiable") {
    auto s = simple(LeadingKind::ZeroOnInterval, DriftKind::NonzeroOnInterval);
    s.drifts[0].interval = {0.7, 0.9};
    try {
      classify(s);
      FAIL("expected Unclassifiable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Unclassifiable);
    }
  }

  TEST_CASE("infinite-order vanishing with a live drift is unclassifiable") {
    try {
      classify(simple(LeadingKind::InfiniteOrderSuspect, DriftKind::NonzeroOnInterval));
      FAIL("expected Unclassifiable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Unclassifiable);
    }
    // With every drift gone the vanishing-drift branch applies first.
    CHECK(classify(simple(LeadingKind::InfiniteOrderSuspect, DriftKind::IdenticallyZero)).provenance ==
          "vanishing-drift");
  }

  TEST_CASE("malformed structures") {
    auto wrong_dim = simple(LeadingKind::StrictlyNegative, DriftKind::IdenticallyZero, 2);
    wrong_dim.drifts.pop_back();
    CHECK_THROWS_AS(classify(wrong_dim), Error);

    CHECK_THROWS_AS(classify(degenerate({point(0.5, 2.0, {0.0}), point(0.4, 2.0, {0.0})})), Error);
    CHECK_THROWS_AS(classify(degenerate({point(0.5, 0.0, {0.0})})), Error);
    CHECK_THROWS_AS(classify(degenerate({point(0.5, 2.0, {-1.0})})), Error);

    auto empty = simple(LeadingKind::DegenerateNonpositive, DriftKind::DegenerateOrders);
    CHECK_THROWS_AS(classify(empty), Error);

    auto inconsistent = degenerate({point(0.5, 4.0, {0.0})});
    inconsistent.drifts[0].kind = DriftKind::IdenticallyZero;
    CHECK_THROWS_AS(classify(inconsistent), Error);
  }

  TEST_CASE("boundary p = 2q + 1 is well-posed") {
    for (double q : {0.0, 0.5, 1.0, 2.5}) {
      const auto v = classify(degenerate({point(0.5, 2.0 * q + 1.0, {q})}));
      CHECK(everywhere(v, Posedness::WellPosed));
      CHECK(v.provenance == "degenerate-wellposed");
    }
  }

  TEST_CASE("hierarchy_check hand-built verdicts") {
    Verdict bad;
    bad.sobolev = Posedness::WellPosed;
    bad.smooth = Posedness::IllPosed;
    CHECK_FALSE(hierarchy_check(bad));

    Verdict finite;
    finite.gevrey_threshold = GevreyThreshold::finite(2.0);
    CHECK_FALSE(hierarchy_check(finite));

    Verdict ill;
    ill.sobolev = ill.smooth = ill.analytic = Posedness::IllPosed;
    ill.gevrey_threshold = GevreyThreshold::finite(1.0);
    CHECK(hierarchy_check(ill));
    ill.gevrey_threshold = GevreyThreshold::finite(2.0);
    CHECK_FALSE(hierarchy_check(ill));

    CHECK(hierarchy_check(Verdict{}));
  }

  TEST_CASE("threshold formula and exponent identity over a rational sweep") {
    for (int p2 = 1; p2 <= 12; ++p2) {
      for (int q2 = 0; q2 <= 12; ++q2) {
        const double p = p2 / 2.0, q = q2 / 2.0;
        const auto rho = gevrey_threshold({point(0.5, p, {q})});
        if (!(p > 2.0 * q + 1.0)) {
          CHECK(rho.infinite);
          continue;
        }
        REQUIRE(rho.exact.has_value());
        CHECK(rho.value > 1.0);
        CHECK(std::isfinite(rho.value));
        // nu = (p - 2q - 1)/(p - q) = 1/rho, exactly.
        const auto nu = div(Rational::make(p2 - 2 * q2 - 2, 2), Rational::make(p2 - q2, 2));
        REQUIRE(nu.has_value());
        CHECK(*mul(*nu, *rho.exact) == Rational{1, 1});
      }
    }
  }

  TEST_CASE("monotonicity in the orders") {
    auto rho_of = [](double p, double q) { return gevrey_threshold({point(0.5, p, {q})}).value; };
    for (int p2 = 1; p2 <= 12; ++p2) {
      for (int q2 = 0; q2 <= 12; ++q2) {
        const double p = p2 / 2.0, q = q2 / 2.0;
        const double base = rho_of(p, q);
        if (q2 < 12) CHECK(rho_of(p, q + 0.5) >= base);
        if (p2 < 12 && p > 2.0 * q + 1.0) CHECK(rho_of(p + 0.5, q) <= base);
      }
    }
  }

  TEST_CASE("every classify output passes hierarchy_check") {
    std::vector<ImaginaryStructure> all{
        simple(LeadingKind::SomewherePositive, DriftKind::DegenerateOrders),
        simple(LeadingKind::StrictlyNegative, DriftKind::IdenticallyZero),
        simple(LeadingKind::IdenticallyZero, DriftKind::IdenticallyZero),
        simple(LeadingKind::IdenticallyZero, DriftKind::NonzeroOnInterval),
        simple(LeadingKind::ZeroOnInterval, DriftKind::NonzeroOnInterval),
    };
    for (int p2 = 1; p2 <= 12; ++p2) {
      for (int q2 = 0; q2 <= 12; ++q2) all.push_back(degenerate({point(0.5, p2 / 2.0, {q2 / 2.0})}));
    }
    for (const auto& s : all) CHECK(hierarchy_check(classify(s)));
  }

  TEST_CASE("derive_structure on presets") {
    CHECK(derive_structure(presets::heat(2)).leading.kind == LeadingKind::StrictlyNegative);
    CHECK(classify(derive_structure(presets::heat(2))).provenance == "parabolic");

    const auto flat = derive_structure(presets::flat_profile(0.2));
    CHECK(flat.leading.kind == LeadingKind::InfiniteOrderSuspect);
    CHECK_THROWS_AS(classify(flat), Error);

    const auto single = derive_structure(presets::degenerate_single_zero(4.0, 0.0, 0.5, 1.0, 1.0));
    REQUIRE(single.leading.zeros.size() == 1);
    CHECK(single.leading.zeros[0].t_k == 0.5);
    CHECK(single.leading.zeros[0].p == 4.0);
    CHECK(single.leading.zeros[0].q() == 0.0);
    CHECK(*classify(single).gevrey_threshold.exact == Rational{4, 3});

    CHECK_THROWS_AS(derive_structure(presets::fourth_order_remark()), Error);
  }

  TEST_CASE("derive_structure finds an interior polynomial zero") {
    // Im a2 = -(t - 0.4)^2, Im a1 = 1: p = 2, q = 0, threshold 2.
    SymbolSpec s;
    s.a2 = TimeCoefficient::polynomial(1.0, {{0.0, -0.16}, {0.0, 0.8}, {0.0, -1.0}});
    s.a1 = {TimeCoefficient::constant(1.0, {0.0, 1.0})};
    const auto st = derive_structure(s);
    REQUIRE(st.leading.kind == LeadingKind::DegenerateNonpositive);
    REQUIRE(st.leading.zeros.size() == 1);
    CHECK(st.leading.zeros[0].t_k == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(st.leading.zeros[0].p == 2.0);
    const auto v = classify(st);
    CHECK(v.gevrey_threshold.value == doctest::Approx(2.0));
  }

  TEST_CASE("positive leading part is found") {
    SymbolSpec s;
    s.a2 = TimeCoefficient::polynomial(1.0, {{0.0, -1.0}, {0.0, 2.0}});
    s.a1 = {TimeCoefficient::zero(1.0)};
    const auto st = derive_structure(s);
    CHECK(st.leading.kind == LeadingKind::SomewherePositive);
    CHECK(s.a2.eval(st.leading.t_star).imag() > 0.0);
  }

  TEST_CASE("verdicts ignore real parts") {
    std::mt19937_64 rng(42);
    RandomSpecOptions o;
    for (int k = 0; k < 50; ++k) {
      const auto s = random_polynomial_spec(rng, o);
      const auto r = reduce_to_normal_form(s);
      try {
        const auto v = classify(derive_structure(s));
        CHECK(v == classify(derive_structure(r)));
      } catch (const Error& e) {
        CHECK_THROWS_AS(classify(derive_structure(r)), Error);
      }
    }
  }
}
