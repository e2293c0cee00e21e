#include "torus_cauchy/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "torus_cauchy/error.hpp"

namespace torus {
namespace {

using json = nlohmann::json;

[[noreturn]] void schema(const std::string& where, const std::string& message) {
  throw Error(ErrorCode::Schema, where + ": " + message);
}

/// Object view that remembers which keys were read, so leftovers can be
/// reported as unknown.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) schema(path_, "expected an object");
  }

  const json& req(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) schema(path_, "missing key \"" + key + "\"");
    return j_.at(key);
  }

  const json* opt(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }
  const std::string& path() const { return path_; }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) schema(path_, "unknown key \"" + item.key() + "\"");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(path, "number must be finite");
  return v;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) schema(path, "integer out of range");
  return static_cast<int>(v);
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) schema(path, "expected true or false");
  return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

/// A plain number or [re, im].
Complex as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {as_double(j, path), 0.0};
  if (j.is_array() && j.size() == 2) return {as_double(j[0], path + "[0]"), as_double(j[1], path + "[1]")};
  schema(path, "expected a number or [re, im]");
}

std::vector<double> doubles(const json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    out.push_back(as_double(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<int> ints(const json& j, const std::string& path) {
  std::vector<int> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<Complex> complexes(const json& j, const std::string& path) {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    out.push_back(as_complex(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

/// A number or the string "inf".
double order_value(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    schema(path, "only the string \"inf\" is accepted here");
  }
  return as_double(j, path);
}

Interval as_interval(const json& j, const std::string& path) {
  const auto v = doubles(j, path);
  if (v.size() != 2) schema(path, "expected [lo, hi]");
  return {v[0], v[1]};
}

FactorSign as_sign(const json& j, const std::string& path) {
  const auto s = as_string(j, path);
  if (s == "positive") return FactorSign::Positive;
  if (s == "negative") return FactorSign::Negative;
  schema(path, "expected \"positive\" or \"negative\"");
}

VanishingProfile parse_profile(const json& j, const std::string& path) {
  Obj o(j, path);
  VanishingProfile v;
  v.zero = as_double(o.req("zero"), o.at("zero"));
  v.order = as_double(o.req("order"), o.at("order"));
  if (const auto* x = o.opt("factor_lower")) v.factor_lower = as_double(*x, o.at("factor_lower"));
  if (const auto* x = o.opt("factor_upper")) v.factor_upper = as_double(*x, o.at("factor_upper"));
  if (const auto* x = o.opt("factor_sign")) v.factor_sign = as_sign(*x, o.at("factor_sign"));
  o.finish();
  return v;
}

TimeCoefficient parse_coefficient(const json& j, const std::string& path, double horizon) {
  if (j.is_number() || j.is_array()) return TimeCoefficient::constant(horizon, as_complex(j, path));
  Obj o(j, path);
  const auto form = as_string(o.req("form"), o.at("form"));
  std::optional<TimeCoefficient> c;
  if (form == "constant") {
    c = TimeCoefficient::constant(horizon, as_complex(o.req("value"), o.at("value")));
  } else if (form == "poly") {
    c = TimeCoefficient::polynomial(horizon, complexes(o.req("coefficients"), o.at("coefficients")));
  } else if (form == "factored") {
    std::vector<VanishingProfile> zeros;
    const auto& zj = as_array(o.req("zeros"), o.at("zeros"));
    for (std::size_t i = 0; i < zj.size(); ++i) {
      zeros.push_back(parse_profile(zj[i], o.at("zeros") + "[" + std::to_string(i) + "]"));
    }
    std::vector<Complex> remainder{1.0};
    if (const auto* x = o.opt("remainder")) remainder = complexes(*x, o.at("remainder"));
    c = TimeCoefficient::factored(horizon, std::move(zeros), std::move(remainder));
  } else if (form == "named") {
    const auto name = as_string(o.req("profile"), o.at("profile"));
    coeff::NamedProfile profile;
    if (name == "flat_exp_derivative") {
      profile = coeff::NamedProfile::FlatExpDerivative;
    } else if (name == "flat_exp") {
      profile = coeff::NamedProfile::FlatExp;
    } else {
      schema(o.at("profile"), "unknown profile \"" + name + "\"");
    }
    Complex amplitude = 1.0;
    double rate = 1.0;
    if (const auto* x = o.opt("amplitude")) amplitude = as_complex(*x, o.at("amplitude"));
    if (const auto* x = o.opt("rate")) rate = as_double(*x, o.at("rate"));
    c = TimeCoefficient::named(horizon, profile, amplitude, rate);
  } else if (form == "sampled") {
    c = TimeCoefficient::sampled(horizon, complexes(o.req("values"), o.at("values")));
  } else {
    schema(o.at("form"), "unknown coefficient form \"" + form + "\"");
  }
  o.finish();
  return std::move(*c);
}

SymbolSpec parse_spec(int dimension, double horizon, const json& j, const std::string& path) {
  Obj o(j, path);
  SymbolSpec s;
  s.dimension = dimension;
  s.horizon = horizon;
  s.a2 = TimeCoefficient::zero(horizon);
  s.a0 = TimeCoefficient::zero(horizon);
  if (const auto* x = o.opt("a2")) s.a2 = parse_coefficient(*x, o.at("a2"), horizon);
  if (const auto* x = o.opt("a0")) s.a0 = parse_coefficient(*x, o.at("a0"), horizon);
  if (const auto* x = o.opt("a1")) {
    const auto& arr = as_array(*x, o.at("a1"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      s.a1.push_back(parse_coefficient(arr[i], o.at("a1") + "[" + std::to_string(i) + "]", horizon));
    }
  } else {
    s.a1.assign(static_cast<std::size_t>(dimension), TimeCoefficient::zero(horizon));
  }
  if (const auto* x = o.opt("extra_monomials")) {
    const auto& arr = as_array(*x, o.at("extra_monomials"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Obj m(arr[i], o.at("extra_monomials") + "[" + std::to_string(i) + "]");
      ExtraMonomial e;
      e.degree = as_int(m.req("degree"), m.at("degree"));
      e.coefficient = parse_coefficient(m.req("coefficient"), m.at("coefficient"), horizon);
      m.finish();
      s.extra_monomials.push_back(std::move(e));
    }
  }
  o.finish();
  s.validate();
  return s;
}

LeadingKind leading_kind(const std::string& s, const std::string& path) {
  for (auto k : {LeadingKind::SomewherePositive, LeadingKind::StrictlyNegative, LeadingKind::IdenticallyZero,
                 LeadingKind::ZeroOnInterval, LeadingKind::DegenerateNonpositive,
                 LeadingKind::InfiniteOrderSuspect}) {
    if (to_string(k) == s) return k;
  }
  schema(path, "unknown leading kind \"" + s + "\"");
}

DegeneratePoint parse_point(const json& j, const std::string& path, int dimension) {
  Obj o(j, path);
  DegeneratePoint pt;
  const auto n = static_cast<std::size_t>(dimension);
  pt.t_k = as_double(o.req("t"), o.at("t"));
  pt.p = as_double(o.req("p"), o.at("p"));
  const auto& qj = as_array(o.req("q"), o.at("q"));
  for (std::size_t i = 0; i < qj.size(); ++i) {
    pt.q_j.push_back(order_value(qj[i], o.at("q") + "[" + std::to_string(i) + "]"));
  }
  if (const auto* x = o.opt("Gamma")) pt.leading_factor_upper = as_double(*x, o.at("Gamma"));
  pt.drift_factor_lower.assign(n, 1.0);
  if (const auto* x = o.opt("gamma")) pt.drift_factor_lower = doubles(*x, o.at("gamma"));
  pt.drift_sign.assign(n, FactorSign::Positive);
  if (const auto* x = o.opt("drift_sign")) {
    pt.drift_sign.clear();
    const auto& arr = as_array(*x, o.at("drift_sign"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      pt.drift_sign.push_back(as_sign(arr[i], o.at("drift_sign") + "[" + std::to_string(i) + "]"));
    }
  }
  if (const auto* x = o.opt("neighborhood")) pt.neighborhood = as_double(*x, o.at("neighborhood"));
  o.finish();
  if (pt.drift_factor_lower.size() != n || pt.drift_sign.size() != n) {
    schema(path, "gamma and drift_sign need one entry per dimension");
  }
  return pt;
}

ImaginaryStructure parse_structure(const json& j, const std::string& path, int dimension) {
  Obj o(j, path);
  ImaginaryStructure s;
  s.dimension = dimension;
  {
    Obj l(o.req("leading"), o.at("leading"));
    s.leading.kind = leading_kind(as_string(l.req("kind"), l.at("kind")), l.at("kind"));
    if (const auto* x = l.opt("t_star")) s.leading.t_star = as_double(*x, l.at("t_star"));
    if (const auto* x = l.opt("interval")) s.leading.interval = as_interval(*x, l.at("interval"));
    if (const auto* x = l.opt("zeros")) {
      const auto& arr = as_array(*x, l.at("zeros"));
      for (std::size_t i = 0; i < arr.size(); ++i) {
        s.leading.zeros.push_back(parse_point(arr[i], l.at("zeros") + "[" + std::to_string(i) + "]", dimension));
      }
    }
    l.finish();
  }
  const auto& arr = as_array(o.req("drifts"), o.at("drifts"));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Obj d(arr[i], o.at("drifts") + "[" + std::to_string(i) + "]");
    DriftStructure ds;
    const auto kind = as_string(d.req("kind"), d.at("kind"));
    if (kind == "identically_zero") {
      ds.kind = DriftKind::IdenticallyZero;
    } else if (kind == "nonzero_on_interval") {
      ds.kind = DriftKind::NonzeroOnInterval;
    } else if (kind == "degenerate_orders") {
      ds.kind = DriftKind::DegenerateOrders;
    } else {
      schema(d.at("kind"), "unknown drift kind \"" + kind + "\"");
    }
    if (const auto* x = d.opt("interval")) ds.interval = as_interval(*x, d.at("interval"));
    d.finish();
    s.drifts.push_back(ds);
  }
  o.finish();
  s.validate();
  return s;
}

Support parse_support(const json& j, const std::string& path) {
  Obj o(j, path);
  Support s;
  const auto kind = as_string(o.req("kind"), o.at("kind"));
  if (kind == "all") {
    s.kind = Support::Kind::All;
  } else if (kind == "axis") {
    s.kind = Support::Kind::Axis;
  } else if (kind == "positive_axis") {
    s.kind = Support::Kind::PositiveAxis;
  } else if (kind == "negative_axis") {
    s.kind = Support::Kind::NegativeAxis;
  } else {
    schema(o.at("kind"), "unknown support \"" + kind + "\"");
  }
  if (const auto* x = o.opt("axis")) s.axis = as_int(*x, o.at("axis"));
  o.finish();
  return s;
}

Generator parse_generator(const json& j, const std::string& path, int dimension) {
  Obj o(j, path);
  Generator g;
  const auto kind = as_string(o.req("kind"), o.at("kind"));
  if (kind == "zero") {
    g.kind = Generator::Kind::Zero;
  } else if (kind == "gevrey") {
    g.kind = Generator::Kind::GevreyDecay;
    g.delta = as_double(o.req("delta"), o.at("delta"));
    g.s = as_double(o.req("s"), o.at("s"));
  } else if (kind == "exponential") {
    g.kind = Generator::Kind::ExponentialDecay;
    g.rate = as_double(o.req("rate"), o.at("rate"));
  } else if (kind == "single_mode") {
    g.kind = Generator::Kind::SingleMode;
    g.mode = ints(o.req("mode"), o.at("mode"));
    if (static_cast<int>(g.mode.size()) != dimension) schema(o.at("mode"), "mode has the wrong dimension");
  } else if (kind == "table") {
    g.kind = Generator::Kind::Table;
    const auto& arr = as_array(o.req("entries"), o.at("entries"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Obj e(arr[i], o.at("entries") + "[" + std::to_string(i) + "]");
      auto xi = ints(e.req("xi"), e.at("xi"));
      if (static_cast<int>(xi.size()) != dimension) schema(e.at("xi"), "frequency has the wrong dimension");
      g.table[std::move(xi)] = as_complex(e.req("value"), e.at("value"));
      e.finish();
    }
  } else {
    schema(o.at("kind"), "unknown generator \"" + kind + "\"");
  }
  if (const auto* x = o.opt("scale")) g.scale = as_complex(*x, o.at("scale"));
  if (const auto* x = o.opt("support")) g.support = parse_support(*x, o.at("support"));
  o.finish();
  if (g.support.kind != Support::Kind::All && (g.support.axis < 0 || g.support.axis >= dimension)) {
    schema(path + ".support.axis", "axis out of range");
  }
  if (g.kind == Generator::Kind::GevreyDecay && !(g.s > 0.0 && g.delta >= 0.0)) {
    schema(path, "gevrey needs s > 0 and delta >= 0");
  }
  return g;
}

QuadratureOptions parse_quadrature(Obj& o, QuadratureOptions q) {
  if (const auto* x = o.opt("nodes_per_unit")) q.nodes_per_unit = as_int(*x, o.at("nodes_per_unit"));
  if (const auto* x = o.opt("rel_tol")) q.rel_tol = as_double(*x, o.at("rel_tol"));
  if (const auto* x = o.opt("adaptive")) q.adaptive = as_bool(*x, o.at("adaptive"));
  if (q.nodes_per_unit < 1) schema(o.at("nodes_per_unit"), "must be positive");
  if (!(q.rel_tol > 0.0)) schema(o.at("rel_tol"), "must be positive");
  return q;
}

SolveSettings parse_solve(const json& j, const std::string& path) {
  Obj o(j, path);
  SolveSettings s;
  if (const auto* x = o.opt("times")) s.times = doubles(*x, o.at("times"));
  if (const auto* x = o.opt("truncation")) s.truncation = as_int(*x, o.at("truncation"));
  s.quadrature = parse_quadrature(o, s.quadrature);
  o.finish();
  if (s.truncation < 0) schema(o.at("truncation"), "must be nonnegative");
  return s;
}

ProbeSettings parse_probe(const json& j, const std::string& path, int dimension, double horizon) {
  Obj o(j, path);
  ProbeSettings p;
  const auto kind = as_string(o.req("kind"), o.at("kind"));
  if (const auto* x = o.opt("label")) p.sequence.label = as_string(*x, o.at("label"));
  if (const auto* x = o.opt("divergence_floor")) {
    p.options.divergence_floor = as_double(*x, o.at("divergence_floor"));
  }
  if (const auto* x = o.opt("expected_logmag")) p.sequence.expected_logmag = doubles(*x, o.at("expected_logmag"));

  if (kind == "explicit") {
    p.kind = ProbeSettings::Kind::Explicit;
    const auto& arr = as_array(o.req("entries"), o.at("entries"));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Obj e(arr[i], o.at("entries") + "[" + std::to_string(i) + "]");
      ProbeEntry entry;
      entry.n = as_int(e.req("n"), e.at("n"));
      entry.t = as_double(e.req("t"), e.at("t"));
      entry.xi = ints(e.req("xi"), e.at("xi"));
      e.finish();
      if (static_cast<int>(entry.xi.size()) != dimension) schema(e.path(), "frequency has the wrong dimension");
      p.sequence.entries.push_back(std::move(entry));
    }
    o.finish();
    p.sequence.validate(horizon);
    return p;
  }

  const auto ns = ints(o.req("ns"), o.at("ns"));
  if (kind == "degenerate") {
    p.kind = ProbeSettings::Kind::Degenerate;
    p.ns = ns;
    if (const auto* x = o.opt("zero")) p.zero_index = static_cast<std::size_t>(std::max(0, as_int(*x, o.at("zero"))));
    if (const auto* x = o.opt("Gamma")) p.Gamma = as_double(*x, o.at("Gamma"));
    if (const auto* x = o.opt("gamma")) p.gamma = as_double(*x, o.at("gamma"));
    if (const auto* x = o.opt("ell")) p.ell = as_int(*x, o.at("ell"));
    if (const auto* x = o.opt("data")) {
      const auto d = as_string(*x, o.at("data"));
      if (d != "witness" && d != "file") schema(o.at("data"), "expected \"witness\" or \"file\"");
      p.witness_data = d == "witness";
    }
    o.finish();
    return p;
  }

  int axis = 0;
  int sign = 1;
  if (const auto* x = o.opt("axis")) axis = as_int(*x, o.at("axis"));
  if (const auto* x = o.opt("sign")) sign = as_int(*x, o.at("sign"));
  if (sign != 1 && sign != -1) schema(o.at("sign"), "must be 1 or -1");
  std::function<double(int)> time_of_n;
  if (kind == "fixed_time") {
    p.kind = ProbeSettings::Kind::FixedTime;
    const double t = as_double(o.req("t"), o.at("t"));
    time_of_n = [t](int) { return t; };
  } else if (kind == "power_time") {
    // t_n = offset + coefficient * n^exponent
    p.kind = ProbeSettings::Kind::PowerTime;
    double offset = 0.0, c = 1.0;
    const double a = as_double(o.req("exponent"), o.at("exponent"));
    if (const auto* x = o.opt("offset")) offset = as_double(*x, o.at("offset"));
    if (const auto* x = o.opt("coefficient")) c = as_double(*x, o.at("coefficient"));
    time_of_n = [=](int n) { return offset + c * std::pow(static_cast<double>(n), a); };
  } else if (kind == "log_time") {
    // t_n = coefficient * (log_factor * ln n)^exponent
    p.kind = ProbeSettings::Kind::LogTime;
    double c = 1.0, m = 1.0;
    const double a = as_double(o.req("exponent"), o.at("exponent"));
    if (const auto* x = o.opt("coefficient")) c = as_double(*x, o.at("coefficient"));
    if (const auto* x = o.opt("log_factor")) m = as_double(*x, o.at("log_factor"));
    time_of_n = [=](int n) { return c * std::pow(m * std::log(static_cast<double>(n)), a); };
  } else {
    schema(o.at("kind"), "unknown probe kind \"" + kind + "\"");
  }
  o.finish();
  if (axis < 0 || axis >= dimension) schema(o.at("axis"), "axis out of range");
  auto expected = std::move(p.sequence.expected_logmag);
  auto label = p.sequence.label.empty() ? kind : p.sequence.label;
  p.sequence = axis_sequence(std::move(label), ns, time_of_n, dimension, axis, sign);
  p.sequence.expected_logmag = std::move(expected);
  p.sequence.validate(horizon);
  return p;
}

OracleSettings parse_oracle(const json& j, const std::string& path) {
  Obj o(j, path);
  OracleSettings s;
  auto& u = s.suite;
  if (const auto* x = o.opt("source")) {
    const auto src = as_string(*x, o.at("source"));
    if (src == "random") {
      s.source = OracleSettings::Source::Random;
    } else if (src == "file") {
      s.source = OracleSettings::Source::File;
    } else {
      schema(o.at("source"), "expected \"random\" or \"file\"");
    }
  }
  if (const auto* x = o.opt("trials")) u.trials = as_int(*x, o.at("trials"));
  if (const auto* x = o.opt("steps")) u.steps = as_int(*x, o.at("steps"));
  if (const auto* x = o.opt("threshold")) u.threshold = as_double(*x, o.at("threshold"));
  if (const auto* x = o.opt("max_frequency")) u.max_frequency = as_int(*x, o.at("max_frequency"));
  if (const auto* x = o.opt("times")) u.times = doubles(*x, o.at("times"));
  if (const auto* x = o.opt("min_dimension")) u.random.min_dimension = as_int(*x, o.at("min_dimension"));
  if (const auto* x = o.opt("max_dimension")) u.random.max_dimension = as_int(*x, o.at("max_dimension"));
  if (const auto* x = o.opt("max_degree")) u.random.max_degree = as_int(*x, o.at("max_degree"));
  o.finish();
  if (u.trials < 1 || u.steps < 2 || u.max_frequency < 0 || !(u.threshold > 0.0)) {
    schema(path, "trials >= 1, steps >= 2, max_frequency >= 0 and threshold > 0 required");
  }
  if (u.random.min_dimension < 1 || u.random.max_dimension < u.random.min_dimension || u.random.max_degree < 0) {
    schema(path, "bad random spec ranges");
  }
  for (double t : u.times) {
    if (!(t >= 0.0 && t <= u.random.horizon)) schema(o.at("times"), "oracle times must lie in [0, 1]");
  }
  return s;
}

}  // namespace

Problem parse_problem(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
  }
  Obj o(root, "$");
  Problem p;
  if (const auto* x = o.opt("name")) p.name = as_string(*x, o.at("name"));

  const json* dim = o.opt("dimension");
  const json* horizon = o.opt("horizon");
  const json* coefficients = o.opt("coefficients");
  int dimension = 1;
  double T = 1.0;
  if (dim) dimension = as_int(*dim, o.at("dimension"));
  if (horizon) T = as_double(*horizon, o.at("horizon"));
  if (dimension < 1 || dimension > 3) schema(o.at("dimension"), "dimension must be 1, 2 or 3");
  if (!(T > 0.0)) schema(o.at("horizon"), "horizon must be positive");
  if (coefficients) {
    if (!dim || !horizon) schema("$", "coefficients need dimension and horizon");
    p.spec = parse_spec(dimension, T, *coefficients, o.at("coefficients"));
  }
  if (const auto* x = o.opt("structure")) p.structure = parse_structure(*x, o.at("structure"), dimension);
  if (const auto* x = o.opt("derive")) {
    Obj d(*x, o.at("derive"));
    if (const auto* y = d.opt("neighborhood")) p.derive.neighborhood = as_double(*y, d.at("neighborhood"));
    d.finish();
  }
  if (const auto* x = o.opt("data")) {
    Obj d(*x, o.at("data"));
    if (const auto* y = d.opt("initial")) p.data.initial = parse_generator(*y, d.at("initial"), dimension);
    if (const auto* y = d.opt("forcing")) p.data.forcing = parse_generator(*y, d.at("forcing"), dimension);
    d.finish();
  }
  if (const auto* x = o.opt("solve")) p.solve = parse_solve(*x, o.at("solve"));
  for (double t : p.solve.times) {
    if (!(t >= 0.0 && t <= T)) schema(o.at("solve") + ".times", "time outside [0, horizon]");
  }
  if (const auto* x = o.opt("probe")) {
    p.probe = parse_probe(*x, o.at("probe"), dimension, T);
    p.probe->options.quadrature = p.solve.quadrature;
  }
  if (const auto* x = o.opt("oracle")) p.oracle = parse_oracle(*x, o.at("oracle"));
  p.oracle.suite.quadrature = p.solve.quadrature;
  o.finish();
  return p;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Schema, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Problem load_problem(const std::filesystem::path& path) { return parse_problem(read_file(path)); }

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

namespace {

std::string json_number(double x) {
  const auto s = format_number(x);
  return std::isfinite(x) ? s : json_quote(s);
}

}  // namespace

JsonObject& JsonObject::raw(std::string_view key, std::string value) {
  members_.push_back({std::string(key), std::move(value), -1});
  return *this;
}

JsonObject& JsonObject::number(std::string_view key, double value) { return raw(key, json_number(value)); }

JsonObject& JsonObject::integer(std::string_view key, std::int64_t value) {
  return raw(key, std::to_string(value));
}

JsonObject& JsonObject::boolean(std::string_view key, bool value) { return raw(key, value ? "true" : "false"); }

JsonObject& JsonObject::string(std::string_view key, std::string_view value) {
  return raw(key, json_quote(value));
}

JsonObject& JsonObject::null(std::string_view key) { return raw(key, "null"); }

JsonObject& JsonObject::numbers(std::string_view key, const std::vector<double>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + json_number(values[i]);
  return raw(key, s + "]");
}

JsonObject& JsonObject::strings(std::string_view key, const std::vector<std::string>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + json_quote(values[i]);
  return raw(key, s + "]");
}

JsonObject& JsonObject::object(std::string_view key, const JsonObject& value) {
  children_.push_back(value);
  members_.push_back({std::string(key), {}, static_cast<int>(children_.size()) - 1});
  return *this;
}

std::string JsonObject::render(int indent) const {
  if (members_.empty()) return "{}";
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  std::string out = "{\n";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& m = members_[i];
    out += pad + json_quote(m.key) + ": ";
    out += m.child >= 0 ? children_[static_cast<std::size_t>(m.child)].render(indent + 2) : m.raw;
    out += i + 1 < members_.size() ? ",\n" : "\n";
  }
  return out + std::string(static_cast<std::size_t>(indent), ' ') + "}";
}

std::string JsonObject::str() const { return render(0) + "\n"; }

JsonObject verdict_json(const Verdict& v) {
  JsonObject o;
  o.string("sobolev", to_string(v.sobolev));
  o.string("smooth", to_string(v.smooth));
  if (v.gevrey_threshold.infinite) {
    o.string("gevrey_threshold", "inf");
  } else {
    o.number("gevrey_threshold", v.gevrey_threshold.value);
  }
  if (v.gevrey_threshold.exact) o.string("gevrey_threshold_exact", v.gevrey_threshold.exact->str());
  o.string("analytic", to_string(v.analytic));
  o.string("provenance", v.provenance);
  return o;
}

JsonObject decay_fit_json(const DecayFit& fit) {
  JsonObject o;
  o.number("s_hat", fit.s_hat);
  o.number("delta_hat", fit.delta_hat);
  o.number("log_c", fit.log_c);
  o.number("residual", fit.residual);
  o.integer("samples", fit.samples);
  o.boolean("admissible", fit.admissible);
  o.boolean("positive_slope", fit.positive_slope);
  return o;
}

JsonObject probe_report_json(const ProbeReport& report) {
  JsonObject o;
  o.string("label", report.label);
  o.string("growth", to_string(report.growth));
  o.integer("rows", static_cast<std::int64_t>(report.rows.size()));
  if (!report.rows.empty()) {
    o.integer("last_n", report.rows.back().n);
    o.number("last_logmag", report.rows.back().logmag);
  }
  o.number("nu_hat", report.nu_hat);
  o.number("nu_stderr", report.nu_stderr);
  o.number("amplitude", report.amplitude);
  o.number("max_deviation", report.max_deviation);
  return o;
}

std::string field_csv(const SpectralField& field) {
  std::string out;
  for (int j = 1; j <= field.dimension; ++j) out += "xi" + std::to_string(j) + ",";
  out += "logmag,phase\n";
  for (const auto& xi : frequency_box(field.dimension, field.truncation)) {
    for (int v : xi) out += std::to_string(v) + ",";
    const LogComplex u = field.at(xi);
    if (u.is_zero()) {
      out += "-inf,0\n";
    } else {
      out += format_number(u.logmag) + "," + format_number(u.phase) + "\n";
    }
  }
  return out;
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_double(std::string_view cell, std::size_t line) {
  double v = 0.0;
  const auto r = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (r.ec != std::errc{} || r.ptr != cell.data() + cell.size()) {
    throw Error(ErrorCode::Schema, "line " + std::to_string(line) + ": bad number \"" + std::string(cell) + "\"");
  }
  return v;
}

}  // namespace

SpectralField parse_field_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::Schema, "empty field file");
  const auto header = split_csv(lines[0]);
  if (header.size() < 3 || header[header.size() - 2] != "logmag" || header.back() != "phase") {
    throw Error(ErrorCode::Schema, "field header must be xi1..xiN,logmag,phase");
  }
  SpectralField field;
  field.dimension = static_cast<int>(header.size()) - 2;
  for (int j = 0; j < field.dimension; ++j) {
    if (header[static_cast<std::size_t>(j)] != "xi" + std::to_string(j + 1)) {
      throw Error(ErrorCode::Schema, "field header must be xi1..xiN,logmag,phase");
    }
  }
  field.truncation = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_csv(lines[i]);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::Schema, "line " + std::to_string(i + 1) + ": wrong number of columns");
    }
    Frequency xi;
    for (int j = 0; j < field.dimension; ++j) {
      const double v = parse_double(cells[static_cast<std::size_t>(j)], i + 1);
      if (v != std::floor(v)) throw Error(ErrorCode::Schema, "line " + std::to_string(i + 1) + ": frequency must be integral");
      xi.push_back(static_cast<int>(v));
      field.truncation = std::max(field.truncation, std::abs(xi.back()));
    }
    const double logmag = parse_double(cells[cells.size() - 2], i + 1);
    const double phase = parse_double(cells.back(), i + 1);
    if (std::isnan(logmag) || logmag == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::Schema, "line " + std::to_string(i + 1) + ": logmag must be finite or -inf");
    }
    if (logmag == -std::numeric_limits<double>::infinity()) continue;
    field.coefficients[std::move(xi)] = LogComplex{logmag, phase};
  }
  return field;
}

std::string probe_csv(const ProbeReport& report) {
  std::string out = "n,t_n,xi_norm,logmag,expected_logmag,deviation\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.n) + "," + format_number(r.t) + "," + format_number(r.xi_norm) + "," +
           format_number(r.logmag) + ",";
    if (!std::isnan(r.expected_logmag)) out += format_number(r.expected_logmag);
    out += ",";
    if (!std::isnan(r.deviation)) out += format_number(r.deviation);
    out += "\n";
  }
  return out;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace torus
