#include "gslab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "gslab/error.hpp"

namespace gslab {

namespace {

constexpr const char* kTableHeader = "# gslab-table v1; columns: ";
constexpr const char* kWaveHeader = "# gslab-wavefunction v1";

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw ValidationError("csv: not a number: '" + text + "'");
  return v;
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw ValidationError("Table: needs at least one column");
  for (const auto& c : columns_) {
    if (c.empty() || c.find(',') != std::string::npos) {
      throw ValidationError("Table: column names must be nonempty without commas");
    }
  }
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw ValidationError("Table: row width differs from header");
  rows_.push_back(std::move(cells));
}

void Table::add_numeric_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  for (double v : values) cells.push_back(format_real(v));
  add_row(std::move(cells));
}

void write_table(std::ostream& out, const Table& table) {
  out << kTableHeader << join(table.columns()) << '\n';
  for (const auto& row : table.rows()) out << join(row) << '\n';
}

Table read_table(std::istream& in) {
  std::string line;
  const std::string header = kTableHeader;
  if (!std::getline(in, line)) throw ValidationError("csv: empty table");
  strip_cr(line);
  if (line.rfind(header, 0) != 0) throw ValidationError("csv: missing table header");
  Table table(split_commas(line.substr(header.size())));
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    table.add_row(split_commas(line));
  }
  return table;
}

void write_wavefunction(std::ostream& out, const SampledWaveFunction& f) {
  if (f.dimension() != 1) throw ValidationError("csv: wave functions are written in 1D only");
  if (!f.is_real()) throw ValidationError("csv: wave functions must be real");
  out << kWaveHeader << '\n';
  const auto values = f.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << format_real(f.grid().coordinate(0, i)) << ',' << format_real(values[i].real()) << '\n';
  }
}

SampledWaveFunction read_wavefunction(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("csv: empty wave function");
  strip_cr(line);
  if (line != kWaveHeader) throw ValidationError("csv: missing wave function header");
  std::vector<double> xs;
  std::vector<Complex> values;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != 2) throw ValidationError("csv: wave function rows need x,value");
    xs.push_back(parse_real(cells[0]));
    values.emplace_back(parse_real(cells[1]), 0.0);
  }
  if (xs.size() < 3) throw ValidationError("csv: wave function needs at least 3 rows");
  TensorGrid grid(RegionSpec::interval(xs.front(), xs.back()), xs.size());
  const double tolerance = 1e-9 * grid.step(0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i] - grid.coordinate(0, i)) > tolerance) {
      throw ValidationError("csv: wave function rows are not equally spaced");
    }
  }
  return SampledWaveFunction(std::move(grid), std::move(values));
}

void write_ground_state(std::ostream& out, const GroundStateModel& g, double radius,
                        std::size_t points) {
  if (g.dimension() != 1) throw ValidationError("csv: ground states are written in 1D only");
  if (const auto* grid = g.grid_form()) {
    const TensorGrid t(RegionSpec::interval(-grid->half_width, grid->half_width), grid->values.size());
    std::vector<Complex> values(grid->values.begin(), grid->values.end());
    write_wavefunction(out, SampledWaveFunction(t, std::move(values)));
    return;
  }
  if (!(radius > 0.0) || points < 3) throw ValidationError("csv: need radius > 0 and >= 3 points");
  write_wavefunction(out, SampledWaveFunction::sample_real(
                              TensorGrid(RegionSpec::interval(-radius, radius), points),
                              [&](std::span<const double> x) { return g.at(x[0]); }));
}

void write_classification(std::ostream& out, const ClassificationReport& report) {
  out << "verdict," << verdict_name(report.verdict) << '\n';
  out << "# diagnostics: kappa=" << format_real(report.kappa) << "; s=" << report.s
      << "; fitted_exponent=" << format_real(report.fitted_exponent)
      << "; fit_rms=" << format_real(report.fit_rms) << "; nu_f=" << format_real(report.nu_f)
      << "; leading_order=" << report.leading_order
      << "; predicted_exponent=" << format_real(report.predicted_exponent);
  for (const auto& d : report.diagnostics) out << "; " << d;
  out << '\n';
  Table table({"n", "lambda", "p", "np"});
  for (const auto& r : report.rows) table.add_numeric_row({r.n, r.lambda, r.p, r.np});
  write_table(out, table);
}

}  // namespace gslab
