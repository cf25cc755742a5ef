#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace bishop::detail {

/// Parses JSON text; syntax errors become Errc::kParse with a "line N" locus.
nlohmann::json parse_json(std::string_view text, std::string_view what);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Fetches a required member, raising Errc::kValidation naming `context`.
const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                              std::string_view context);

}  // namespace bishop::detail
