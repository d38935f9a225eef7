#pragma once

#include <string>

#include <json.hpp>

namespace mdpreach {

/// Formats a double with 17 significant digits (round-trip exact).
std::string g17(double x);

/// Serializes JSON with doubles printed via g17 and 2-space indentation,
/// preserving key insertion order. Output is byte-stable across runs.
std::string dump_json_g17(const nlohmann::ordered_json& j, int indent = 2);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mdpreach
