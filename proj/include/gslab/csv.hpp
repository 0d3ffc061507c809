#pragma once

// CSV output: wave functions, result tables and classification reports.
// Reals are written with 17 significant digits; inf and nan as text.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gslab/classify.hpp"
#include "gslab/wavefunction.hpp"

namespace gslab {

std::string format_real(double v);

class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  /// Cells are preformatted; the count must match the columns.
  void add_row(std::vector<std::string> cells);
  void add_numeric_row(const std::vector<double>& values);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// `# gslab-table v1; columns: a,b,...` followed by the rows.
void write_table(std::ostream& out, const Table& table);
/// Inverse of write_table; throws ValidationError on malformed input.
Table read_table(std::istream& in);

/// `# gslab-wavefunction v1` followed by `x,value` rows. One-dimensional
/// real functions only.
void write_wavefunction(std::ostream& out, const SampledWaveFunction& f);
/// Rebuilds the grid from the first and last x; rows must be equally spaced.
SampledWaveFunction read_wavefunction(std::istream& in);

/// Samples of a ground state on its own grid, or on [-radius, radius] for the
/// analytic form.
void write_ground_state(std::ostream& out, const GroundStateModel& g, double radius,
                        std::size_t points);

/// `verdict,<name>`, one `# diagnostics:` line, then the n-sequence table.
void write_classification(std::ostream& out, const ClassificationReport& report);

}  // namespace gslab
