#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hilltongue/config.hpp"
#include "hilltongue/sweeps.hpp"
#include "hilltongue/tongues.hpp"

namespace hilltongue {

/// Collects named CSV tables in emission order and writes them either into a
/// directory or, concatenated with a banner per table, to one stream.
class Emitter {
 public:
  explicit Emitter(const RunConfig& config);

  void table(const std::string& name, const std::vector<std::string>& header,
             const std::vector<std::vector<std::string>>& rows);
  /// Free text (the verification report); no CSV header line.
  void text(const std::string& name, const std::string& body);

  void write(std::ostream& os) const;
  void write_dir(const std::string& dir) const;

  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::string stamp_;
  std::vector<std::pair<std::string, std::string>> files_;
};

/// "# hilltongue <version> config=fnv1a:<hex> name=<name>"
std::string provenance_line(const RunConfig& config);

void emit_series(Emitter& e, const SeriesTables& t);
void emit_shapes(Emitter& e, const SeriesTables& t);
void emit_coexistence(Emitter& e, const CoexistenceReport& rep);
/// N, q, beta_minus, beta_plus, length, series_beta_minus, series_beta_plus,
/// abs_gap, signed_length; N-major, q-minor.
void emit_tongues(Emitter& e, const TongueGrid& grid, const SeriesTables& t);
void emit_order(Emitter& e, const TongueGrid& grid, const SeriesTables& t);
/// Boundaries beta_0^+ and beta_N^+- per amplitude, ready to plot.
void emit_chart(Emitter& e, const TongueGrid& grid, const std::vector<double>& beta0);

}  // namespace hilltongue
