#include "commands.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>

#include "torus_cauchy/torus_cauchy.hpp"

namespace torus::cli {
namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Schema:
    case ErrorCode::MalformedStructure:
    case ErrorCode::InvalidArgument:
    case ErrorCode::OutOfHorizon:
    case ErrorCode::NotInK:
    case ErrorCode::BadLadder:
      return kSchema;
    case ErrorCode::Unclassifiable:
      return kUnclassifiable;
    default:
      return kSolver;
  }
}

/// Runs a command body and maps library errors onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolver;
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

std::filesystem::path prepare_dir(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  return dir;
}

std::string hex64(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

const SymbolSpec& need_spec(const Problem& p) {
  if (!p.spec) throw Error(ErrorCode::Schema, "this command needs dimension, horizon and coefficients");
  return *p.spec;
}

ImaginaryStructure structure_of(const Problem& p) {
  if (p.structure) return *p.structure;
  return derive_structure(need_spec(p), p.derive);
}

}  // namespace

int run_classify(const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem p = load_problem(options.input);
    const Verdict v = classify(structure_of(p));
    out << verdict_json(v).str();
    if (options.out) write_text(prepare_dir(*options.out) / "verdict.json", verdict_json(v).str());
    return kOk;
  });
}

int run_solve(const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string text = read_file(options.input);
    const Problem p = parse_problem(text);
    const SymbolSpec& spec = need_spec(p);
    const auto& s = p.solve;
    const auto fields = solve_cauchy(spec, p.data, s.times, s.truncation, s.quadrature);

    const auto dir = prepare_dir(options.out.value_or(std::filesystem::path(".")));
    std::vector<std::string> files;
    std::vector<std::string> field_hashes;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string name = "field_t" + std::to_string(i) + ".csv";
      const std::string csv = field_csv(fields[i]);
      write_text(dir / name, csv);
      files.push_back(name);
      field_hashes.push_back(hex64(fnv1a(csv)));
    }
    const std::string settings = text + "\nseed=" + std::to_string(options.seed);
    JsonObject m;
    m.string("name", p.name);
    m.string("hash", hex64(fnv1a(settings)));
    m.integer("seed", static_cast<std::int64_t>(options.seed));
    m.integer("dimension", spec.dimension);
    m.number("horizon", spec.horizon);
    m.numbers("times", s.times);
    m.integer("truncation", s.truncation);
    m.integer("nodes_per_unit", s.quadrature.nodes_per_unit);
    m.number("rel_tol", s.quadrature.rel_tol);
    m.boolean("adaptive", s.quadrature.adaptive);
    m.strings("files", files);
    m.strings("field_hashes", field_hashes);
    write_text(dir / "manifest.json", m.str());
    for (const auto& f : files) out << (dir / f).string() << "\n";
    return kOk;
  });
}

int run_witness(const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem p = load_problem(options.input);
    const SymbolSpec& spec = need_spec(p);
    if (!p.probe) throw Error(ErrorCode::Schema, "witness needs a probe block");
    const ProbeSettings& ps = *p.probe;

    DataSpec data = p.data;
    ProbeSequence seq = ps.sequence;
    JsonObject witness;
    if (ps.kind == ProbeSettings::Kind::Degenerate) {
      const ImaginaryStructure st = structure_of(p);
      if (st.leading.kind != LeadingKind::DegenerateNonpositive || ps.zero_index >= st.leading.zeros.size()) {
        throw Error(ErrorCode::InvalidArgument, "degenerate probe needs a degenerate leading coefficient with zero #" +
                                                    std::to_string(ps.zero_index));
      }
      const auto w = degenerate_witness(st.leading.zeros[ps.zero_index], spec.dimension, spec.horizon, ps.ns,
                                        ps.Gamma, ps.gamma, ps.ell);
      if (ps.witness_data) data = w.data;
      auto expected = std::move(seq.expected_logmag);
      const auto label = seq.label;
      seq = w.sequence;
      if (!label.empty()) seq.label = label;
      seq.expected_logmag = std::move(expected);
      seq.validate(spec.horizon);
      witness.integer("ell", w.ell);
      witness.number("varsigma", w.varsigma);
      witness.number("vartheta", w.vartheta);
      witness.number("rho", w.rho);
      witness.number("nu", w.nu);
      witness.integer("axis", static_cast<std::int64_t>(w.axis));
      witness.boolean("negative_axis", w.negative_axis);
      witness.boolean("initial_variant", w.initial_variant);
      witness.boolean("witness_data", ps.witness_data);
    }

    const ProbeReport report = probe(spec, data, seq, ps.options);
    JsonObject json = probe_report_json(report);
    json.number("divergence_floor", ps.options.divergence_floor);
    if (ps.kind == ProbeSettings::Kind::Degenerate) json.object("witness", witness);
    out << json.str();
    if (options.out) {
      const auto dir = prepare_dir(*options.out);
      write_text(dir / "probe.csv", probe_csv(report));
      write_text(dir / "report.json", json.str());
    }
    return kOk;
  });
}

int run_oracle_check(const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem p = load_problem(options.input);
    OracleSuiteOptions suite = p.oracle.suite;
    if (options.trials) {
      if (*options.trials < 1) throw Error(ErrorCode::InvalidArgument, "--trials must be positive");
      suite.trials = *options.trials;
    }
    const OracleSummary sum = p.oracle.source == OracleSettings::Source::Random
                                  ? oracle_random_suite(options.seed, suite)
                                  : oracle_frequency_suite(need_spec(p), options.seed, suite);
    JsonObject json;
    json.string("result", sum.pass() ? "pass" : "fail");
    json.integer("seed", static_cast<std::int64_t>(options.seed));
    json.integer("trials", sum.trials);
    json.integer("trials_passed", sum.trials_passed);
    json.integer("cases", sum.cases);
    json.integer("failures", sum.failures);
    json.integer("skipped_overflow", sum.skipped_overflow);
    json.integer("steps_too_coarse", sum.steps_too_coarse);
    json.number("max_rel_error", sum.max_rel_error);
    json.number("threshold", suite.threshold);
    json.integer("rk4_steps", suite.steps);
    json.integer("nodes_per_unit", suite.quadrature.nodes_per_unit);
    json.boolean("adaptive", suite.quadrature.adaptive);
    out << json.str();
    for (const auto& c : sum.failing) {
      std::string xi;
      for (std::size_t j = 0; j < c.xi.size(); ++j) xi += (j ? "," : "") + std::to_string(c.xi[j]);
      err << "mismatch t=" << format_number(c.t) << " xi=(" << xi << ") rel_error=" << format_number(c.rel_error)
          << (c.steps_too_coarse ? " (rk4 step halving disagrees)" : "") << "\n";
    }
    if (options.out) write_text(prepare_dir(*options.out) / "oracle.json", json.str());
    return sum.pass() ? kOk : kOracleFailure;
  });
}

int run_fit_decay(const Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SpectralField field = parse_field_csv(read_file(options.input));
    const DecayFit fit = gevrey_fit(field);
    const std::string json = decay_fit_json(fit).str();
    out << json;
    if (options.out) write_text(prepare_dir(*options.out) / "decay_fit.json", json);
    return kOk;
  });
}

}  // namespace torus::cli
