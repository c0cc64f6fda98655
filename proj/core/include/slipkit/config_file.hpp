#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace slipkit {

/// One `key = value` line of a config file.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// A `[name]` block. Entries before the first header land in an unnamed
/// leading section.
struct ConfigSection {
  std::string name;
  std::vector<ConfigEntry> entries;
  int line = 0;
};

/// Parses the key-value format used for scenario and estimator parameter
/// files: `#` comments, `[section]` headers, `key = value` lines.
/// Throws ConfigError with the line number on malformed input.
std::vector<ConfigSection> parse_config_text(std::string_view text,
                                             const std::string& context);
std::vector<ConfigSection> parse_config_file(const std::filesystem::path& path);

/// Typed accessors; all throw ConfigError naming the offending key.
double config_double(const ConfigEntry& entry);
long config_int(const ConfigEntry& entry);
bool config_bool(const ConfigEntry& entry);

}  // namespace slipkit
