#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "maxvar/pwl.hpp"

namespace maxvar {

/// {"breakpoints": [...], "anchor_value": v, "slopes": [...]}; anchor_value is
/// f at the first breakpoint unless an optional "anchor_index" names another.
PwlFunction<double> pwl_from_json(const nlohmann::json& j);
nlohmann::json pwl_to_json(const PwlFunction<double>& f);

PwlFunction<double> parse_pwl(std::string_view text);
std::string dump_pwl(const PwlFunction<double>& f);

PwlFunction<double> load_pwl(const std::string& path);
void save_pwl(const PwlFunction<double>& f, const std::string& path);

/// Whole file as a string; throws InvalidInput when unreadable.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace maxvar
