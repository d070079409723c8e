#include "maxvar/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "maxvar/errors.hpp"

namespace maxvar {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorKind::InvalidInput, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorKind::InvalidInput, "CSV lacks column '" + std::string(name) + "'");
}

bool CsvTable::has_column(std::string_view name) const {
  for (const auto& h : header) {
    if (h == name) return true;
  }
  return false;
}

CsvTable parse_csv_table(std::string_view text) {
  CsvTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::InvalidInput, "empty CSV");
  t.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != t.header.size()) {
      throw Error(ErrorKind::InvalidInput, "CSV row has " + std::to_string(cells.size()) +
                                               " cells, header has " +
                                               std::to_string(t.header.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      row.push_back(c.empty() ? std::numeric_limits<double>::quiet_NaN() : parse_double(c));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string profile_csv_header() {
  return "x,mf,a,dmf,da,ddmf,luiro_residual,stationarity_residual";
}

std::string profile_csv_row(const MaximalEvaluation<double>& e) {
  return format_double(e.x) + "," + format_double(e.mf) + "," + format_double(e.a) + "," +
         format_double(e.dmf) + "," + format_optional(e.da) + "," + format_optional(e.ddmf) +
         "," + format_double(e.luiro_residual) + "," + format_double(e.stationarity_residual);
}

std::string profile_csv(std::span<const MaximalEvaluation<double>> rows) {
  std::string out = profile_csv_header() + "\n";
  for (const auto& e : rows) out += profile_csv_row(e) + "\n";
  return out;
}

}  // namespace maxvar
