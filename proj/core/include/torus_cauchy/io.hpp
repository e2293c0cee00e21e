#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torus_cauchy/classifier.hpp"
#include "torus_cauchy/oracle.hpp"
#include "torus_cauchy/spectral_field.hpp"
#include "torus_cauchy/symbol.hpp"
#include "torus_cauchy/witness.hpp"

namespace torus {

struct SolveSettings {
  std::vector<double> times{1.0};
  int truncation = 16;
  QuadratureOptions quadrature;
};

/// How the probe block builds its sequence. Degenerate probes are built from
/// the structure at run time; everything else is expanded while parsing.
struct ProbeSettings {
  enum class Kind { Explicit, FixedTime, PowerTime, LogTime, Degenerate };
  Kind kind = Kind::Explicit;
  ProbeSequence sequence;
  ProbeOptions options;

  /// Degenerate probes only.
  std::vector<int> ns;
  std::size_t zero_index = 0;
  double Gamma = 0.0;
  double gamma = 0.0;
  int ell = 0;
  /// Probe with the witness data instead of the file's data block.
  bool witness_data = true;
};

struct OracleSettings {
  enum class Source { Random, File };
  Source source = Source::Random;
  /// quadrature is taken from the solve block.
  OracleSuiteOptions suite;
};

/// A parsed problem file. The operator is optional so that a file holding
/// only an oracle block stays valid; commands that need it check for it.
struct Problem {
  std::string name;
  std::optional<SymbolSpec> spec;
  std::optional<ImaginaryStructure> structure;
  DeriveOptions derive;
  DataSpec data;
  SolveSettings solve;
  std::optional<ProbeSettings> probe;
  OracleSettings oracle;
};

/// Throws Schema on malformed JSON, unknown keys, wrong types or
/// non-finite numbers, and MalformedStructure when the operator is invalid.
Problem parse_problem(std::string_view text);
Problem load_problem(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

/// "%.17g", with "inf", "-inf" and "nan" for the non-finite values.
std::string format_number(double x);

/// Minimal JSON object writer with insertion-ordered keys and the number
/// format above; non-finite numbers become strings.
class JsonObject {
 public:
  JsonObject& number(std::string_view key, double value);
  JsonObject& integer(std::string_view key, std::int64_t value);
  JsonObject& boolean(std::string_view key, bool value);
  JsonObject& string(std::string_view key, std::string_view value);
  JsonObject& numbers(std::string_view key, const std::vector<double>& values);
  JsonObject& strings(std::string_view key, const std::vector<std::string>& values);
  JsonObject& object(std::string_view key, const JsonObject& value);
  JsonObject& null(std::string_view key);

  /// Two-space indented, newline terminated at the top level.
  std::string str() const;

 private:
  std::string render(int indent) const;
  JsonObject& raw(std::string_view key, std::string value);

  struct Member {
    std::string key;
    std::string raw;
    /// Index into children_ for nested objects, -1 otherwise.
    int child = -1;
  };
  std::vector<Member> members_;
  std::vector<JsonObject> children_;
};

std::string json_quote(std::string_view s);

JsonObject verdict_json(const Verdict& v);
JsonObject decay_fit_json(const DecayFit& fit);
JsonObject probe_report_json(const ProbeReport& report);

/// Columns xi1..xiN, logmag, phase over the whole box |xi|_inf <= truncation
/// in lexicographic order; absent coefficients are written as "-inf", 0.
std::string field_csv(const SpectralField& field);
/// Inverse of field_csv. Rows with logmag "-inf" are treated as exact zeros.
/// Throws Schema.
SpectralField parse_field_csv(std::string_view text);

/// Columns n, t_n, xi_norm, logmag, expected_logmag, deviation.
std::string probe_csv(const ProbeReport& report);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace torus
