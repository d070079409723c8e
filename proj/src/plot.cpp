#include "maxvar/plot.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "maxvar/csv.hpp"
#include "maxvar/errors.hpp"

namespace maxvar {

namespace {

constexpr double kWidth = 720.0;
constexpr double kPanel = 200.0;
constexpr double kMargin = 48.0;

struct Series {
  const char* label;
  std::vector<std::pair<double, double>> pts;  // (log10 x, value)
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

void draw_panel(std::ostringstream& svg, const Series& s, double top, double lx0,
                double lx1) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& [lx, v] : s.pts) {
    if (!std::isfinite(v)) continue;
    lo = first ? v : std::min(lo, v);
    hi = first ? v : std::max(hi, v);
    first = false;
  }
  if (hi - lo < 1e-300) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double w = kWidth - 2.0 * kMargin;
  const double h = kPanel - 2.0 * kMargin / 2.0;
  auto px = [&](double lx) { return kMargin + w * (lx - lx0) / std::max(lx1 - lx0, 1e-12); };
  auto py = [&](double v) { return top + kMargin / 2.0 + h * (hi - v) / (hi - lo); };
  svg << "<rect x=\"" << kMargin << "\" y=\"" << top + kMargin / 2.0 << "\" width=\"" << w
      << "\" height=\"" << h << "\" fill=\"none\" stroke=\"#888\"/>\n";
  svg << "<text x=\"4\" y=\"" << top + 16 << "\" font-size=\"12\">" << s.label << "  ["
      << num(lo) << ", " << num(hi) << "]</text>\n";
  svg << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1\" points=\"";
  for (const auto& [lx, v] : s.pts) {
    if (!std::isfinite(v)) continue;
    svg << num(px(lx)) << "," << num(py(v)) << " ";
  }
  svg << "\"/>\n";
}

}  // namespace

std::string profile_svg(std::string_view csv_text) {
  std::istringstream in{std::string(csv_text)};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::InvalidInput, "empty profile CSV");
  const auto header = split_csv_line(line);
  auto column = [&](std::string_view name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw Error(ErrorKind::InvalidInput, "profile CSV lacks column '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cx = column("x"), cm = column("mf"), cd = column("dmf"),
                    cdd = column("ddmf");
  Series mf{"Mf", {}}, dmf{"(Mf)'", {}}, ddmf{"(Mf)''", {}};
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorKind::InvalidInput, "ragged profile CSV row");
    }
    const double x = parse_double(cells[cx]);
    if (!(x > 0.0)) continue;
    const double lx = std::log10(x);
    mf.pts.emplace_back(lx, parse_double(cells[cm]));
    dmf.pts.emplace_back(lx, parse_double(cells[cd]));
    if (!cells[cdd].empty()) ddmf.pts.emplace_back(lx, parse_double(cells[cdd]));
  }
  if (mf.pts.empty()) throw Error(ErrorKind::InvalidInput, "profile CSV has no rows with x > 0");
  const double lx0 = mf.pts.front().first;
  const double lx1 = mf.pts.back().first;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << 3.0 * kPanel + 24.0 << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  draw_panel(svg, mf, 0.0, lx0, lx1);
  draw_panel(svg, dmf, kPanel, lx0, lx1);
  draw_panel(svg, ddmf, 2.0 * kPanel, lx0, lx1);
  svg << "<text x=\"" << kMargin << "\" y=\"" << 3.0 * kPanel + 16.0
      << "\" font-size=\"12\">log10 x from " << num(lx0) << " to " << num(lx1) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace maxvar
