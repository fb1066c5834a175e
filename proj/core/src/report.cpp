#include "mocorr/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include <fmt/format.h>

#include "mocorr/error.hpp"

namespace mocorr {

namespace {

// Same layout as ordered_json::dump(2), but doubles are written with 17
// significant digits so the bytes do not depend on the library's
// shortest-representation algorithm.
void emit(const nlohmann::ordered_json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      out += nlohmann::ordered_json(key).dump();
      out += ": ";
      emit(value, depth + 1, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) out += ",\n";
      out += pad;
      emit(j[i], depth + 1, out);
    }
    out += "\n" + close + "]";
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    out += std::isfinite(v) ? fmt::format("{:.17g}", v) : "null";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string render_json(const nlohmann::ordered_json& report) {
  std::string out;
  emit(report, 0, out);
  out += "\n";
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open '{}' for writing", path.string()));
  out << text;
}

}  // namespace mocorr
