#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace mocorr {

/// Canonical report text: insertion-ordered keys, two-space indent, trailing
/// newline. Doubles are written with 17 significant digits
/// (non-finite values as null).
std::string render_json(const nlohmann::ordered_json& report);

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace mocorr
