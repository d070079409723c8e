#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxvar/maximal.hpp"

namespace maxvar {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(std::string_view line);

/// Parses a double; throws InvalidInput on malformed text.
double parse_double(std::string_view text);

/// Header plus numeric rows; empty cells read as NaN.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws InvalidInput when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

CsvTable parse_csv_table(std::string_view text);

/// x,mf,a,dmf,da,ddmf,luiro_residual,stationarity_residual
std::string profile_csv_header();
std::string profile_csv_row(const MaximalEvaluation<double>& e);
std::string profile_csv(std::span<const MaximalEvaluation<double>> rows);

}  // namespace maxvar
