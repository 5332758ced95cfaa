#include "spiralrg/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "spiralrg/errors.hpp"

namespace spiralrg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig parse_config(std::istream& in, const std::string& source) {
  KeyValueConfig cfg;
  cfg.source = source;
  std::vector<std::string> problems;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) {
      problems.push_back(where + " expected key=value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      problems.push_back(where + " empty key");
    } else if (cfg.values.count(key)) {
      problems.push_back(where + " duplicate key '" + key + "'");
    } else {
      cfg.values[key] = value;
    }
  }
  if (!problems.empty()) {
    std::string msg = "config invalid:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InvalidArgument(msg);
  }
  return cfg;
}

KeyValueConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw InvalidArgument("not a number: '" + item + "' in '" + text + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::vector<double>> parse_seed_list(const std::string& text) {
  std::vector<std::vector<double>> out;
  std::stringstream ss(text);
  std::string group;
  while (std::getline(ss, group, ';')) {
    if (trim(group).empty()) continue;
    out.push_back(parse_real_list(group));
  }
  return out;
}

std::string header_block(const std::string& command, const ParamEcho& params, bool timestamp) {
  std::ostringstream os;
  os << "# spiralrg " << version() << '\n';
  os << "# command=" << command << '\n';
  for (const auto& [k, v] : params) os << "# " << k << '=' << v << '\n';
  if (timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    os << "# timestamp=" << buf << '\n';
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io_error", "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("io_error", "write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("io_error", "cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace spiralrg
