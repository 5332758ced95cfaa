#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace spiralrg {

#ifndef SPIRALRG_VERSION
#define SPIRALRG_VERSION "0.0.0"
#endif

inline const char* version() { return SPIRALRG_VERSION; }

/// Plain-text `key = value` file; `#` starts a comment, blank lines are ignored.
struct KeyValueConfig {
  std::map<std::string, std::string> values;
  std::string source;  // file name, for messages

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const std::string& at(const std::string& key) const { return values.at(key); }
};

/// Parses every line and reports all malformed ones in a single InvalidArgument.
KeyValueConfig parse_config(std::istream& in, const std::string& source = "<config>");
KeyValueConfig load_config(const std::filesystem::path& path);

/// Comma-separated reals, e.g. "1,1,0.5".
std::vector<double> parse_real_list(const std::string& text);
/// Semicolon-separated groups of comma-separated reals.
std::vector<std::vector<double>> parse_seed_list(const std::string& text);

using ParamEcho = std::vector<std::pair<std::string, std::string>>;

/// `#`-prefixed header: tool version, command, every parameter, optional UTC timestamp.
std::string header_block(const std::string& command, const ParamEcho& params, bool timestamp);

/// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace spiralrg
