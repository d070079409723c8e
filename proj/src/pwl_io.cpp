#include "maxvar/pwl_io.hpp"

#include <fstream>
#include <sstream>

#include "maxvar/errors.hpp"

namespace maxvar {

namespace {

std::vector<double> number_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw Error(ErrorKind::InvalidInput, std::string("missing array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) {
      throw Error(ErrorKind::InvalidInput, std::string("non-numeric entry in '") + key + "'");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

PwlFunction<double> pwl_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "function file must be an object");
  auto bp = number_array(j, "breakpoints");
  auto slopes = number_array(j, "slopes");
  if (!j.contains("anchor_value") || !j.at("anchor_value").is_number()) {
    throw Error(ErrorKind::InvalidInput, "missing number 'anchor_value'");
  }
  const double anchor = j.at("anchor_value").get<double>();
  if (bp.empty()) throw Error(ErrorKind::InvalidInput, "at least one breakpoint required");
  std::size_t index = 0;
  if (j.contains("anchor_index")) {
    const auto& ai = j.at("anchor_index");
    if (!ai.is_number_unsigned()) {
      throw Error(ErrorKind::InvalidInput, "anchor_index must be a nonnegative integer");
    }
    index = ai.get<std::size_t>();
  }
  return PwlFunction<double>(std::move(bp), anchor, std::move(slopes), index);
}

nlohmann::json pwl_to_json(const PwlFunction<double>& f) {
  nlohmann::json j;
  j["breakpoints"] = f.breakpoints();
  j["anchor_value"] = f.anchor_value();
  j["anchor_index"] = f.anchor_index();
  j["slopes"] = f.slopes();
  return j;
}

PwlFunction<double> parse_pwl(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  return pwl_from_json(j);
}

std::string dump_pwl(const PwlFunction<double>& f) { return pwl_to_json(f).dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::InvalidInput, "write failed for '" + path + "'");
}

PwlFunction<double> load_pwl(const std::string& path) { return parse_pwl(read_text_file(path)); }

void save_pwl(const PwlFunction<double>& f, const std::string& path) {
  write_text_file(path, dump_pwl(f));
}

}  // namespace maxvar
