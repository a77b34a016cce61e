#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hilltongue/errors.hpp"
#include "hilltongue/floquet.hpp"
#include "hilltongue/tongues.hpp"

namespace hilltongue {

/// Config problems carry the offending line (0 when the field is missing)
/// and field name.
class ConfigError : public ValidationError {
 public:
  ConfigError(std::size_t line, std::string field, const std::string& message);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// A run as read from a config file:
///
///   # Mathieu
///   f = []
///   g = [1:1]
///   order = 8
///   n_max = 4
///   q_grid = geom(0.02, 0.15, 6)     # or [0.05, 0.1, 0.2]
///   analyses = [series, tongues, shape, order, coexist, chart, verify]
///   tol.root = 1e-13
///
/// Coefficients are k:p/q pairs; rationals are never written as decimals.
struct RunConfig {
  std::string name;
  ProblemSpec spec;
  unsigned n_max = 1;
  std::vector<double> q_grid;
  std::set<std::string> analyses;
  IntegratorSettings settings;
  std::size_t coefficient_bits = 1000000;
  std::string out_dir;
  /// FNV-1a of the raw text, recorded in every emitted table.
  std::uint64_t hash = 0;

  bool wants(const std::string& analysis) const { return analyses.count(analysis) != 0; }
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

std::uint64_t fnv1a(std::string_view text);

}  // namespace hilltongue
