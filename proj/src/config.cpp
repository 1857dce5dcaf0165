#include "vhjlab/config.hpp"

#include <cctype>
#include <sstream>

#include "vhjlab/errors.hpp"
#include "vhjlab/io.hpp"

namespace vhj {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_comment(const std::string& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] == '#' || s[i] == ';') return s.substr(0, i);
  return s;
}

} // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile cfg;
  std::istringstream is(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(line_no) +
                          ": empty section name");
      cfg.sections_[section]; // a section may legitimately stay empty
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    auto& sec = cfg.sections_[section];
    if (sec.count(key))
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": duplicate key '" + key + "' in [" + section + "]");
    sec[key] = value;
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  return parse(read_text_file(path));
}

bool ConfigFile::has_section(const std::string& name) const {
  return sections_.count(name) != 0;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) != 0;
}

std::string ConfigFile::require(const std::string& section,
                                const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end())
    throw ConfigError("missing section [" + section + "]");
  auto kt = it->second.find(key);
  if (kt == it->second.end())
    throw ConfigError("missing key '" + key + "' in [" + section + "]");
  return kt->second;
}

std::string ConfigFile::get(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  return has(section, key) ? sections_.at(section).at(key) : fallback;
}

double ConfigFile::require_number(const std::string& section,
                                  const std::string& key) const {
  const std::string v = require(section, key);
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' in [" + section +
                      "] is not a number: '" + v + "'");
  }
}

double ConfigFile::number(const std::string& section, const std::string& key,
                          double fallback) const {
  return has(section, key) ? require_number(section, key) : fallback;
}

long long ConfigFile::integer(const std::string& section,
                              const std::string& key,
                              long long fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = require(section, key);
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' in [" + section +
                      "] is not an integer: '" + v + "'");
  }
}

bool ConfigFile::flag(const std::string& section, const std::string& key,
                      bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = require(section, key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "' in [" + section +
                    "] is not a boolean: '" + v + "'");
}

void ConfigFile::enforce(
    const std::map<std::string, std::set<std::string>>& allowed) const {
  for (const auto& [name, kv] : sections_) {
    auto it = allowed.find(name);
    if (it == allowed.end())
      throw ConfigError("unknown section [" + name + "]");
    for (const auto& [key, value] : kv)
      if (!it->second.count(key))
        throw ConfigError("unknown key '" + key + "' in [" + name + "]");
  }
}

} // namespace vhj
