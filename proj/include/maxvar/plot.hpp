#pragma once

#include <string>
#include <string_view>

namespace maxvar {

/// Static SVG with three stacked panels (Mf, (Mf)', (Mf)'') against log10 x
/// for the x > 0 rows of a profile CSV (header must name x, mf, dmf, ddmf).
/// Throws InvalidInput when the CSV has no usable rows.
std::string profile_svg(std::string_view csv_text);

}  // namespace maxvar
