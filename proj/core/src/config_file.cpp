#include "slipkit/config_file.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "slipkit/errors.hpp"

namespace slipkit {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::vector<ConfigSection> parse_config_text(std::string_view text,
                                             const std::string& context) {
  std::vector<ConfigSection> sections;
  sections.push_back(ConfigSection{"", {}, 0});

  std::stringstream ss{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(context + ":" + std::to_string(line_no) +
                          ": malformed section header '" + line + "'");
      }
      sections.push_back(ConfigSection{trim(line.substr(1, line.size() - 2)), {}, line_no});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(context + ":" + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    }
    ConfigEntry entry;
    entry.key = trim(line.substr(0, eq));
    entry.value = trim(line.substr(eq + 1));
    entry.line = line_no;
    if (entry.key.empty()) {
      throw ConfigError(context + ":" + std::to_string(line_no) + ": empty key");
    }
    sections.back().entries.push_back(std::move(entry));
  }
  return sections;
}

std::vector<ConfigSection> parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string());
}

double config_double(const ConfigEntry& entry) {
  const char* begin = entry.value.c_str();
  char* end = nullptr;
  errno = 0;
  double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ConfigError("key '" + entry.key + "': expected a number, got '" +
                      entry.value + "'");
  }
  return value;
}

long config_int(const ConfigEntry& entry) {
  const char* begin = entry.value.c_str();
  char* end = nullptr;
  errno = 0;
  long value = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw ConfigError("key '" + entry.key + "': expected an integer, got '" +
                      entry.value + "'");
  }
  return value;
}

bool config_bool(const ConfigEntry& entry) {
  std::string v = entry.value;
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError("key '" + entry.key + "': expected a boolean, got '" + entry.value + "'");
}

}  // namespace slipkit
