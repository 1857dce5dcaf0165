#pragma once

#include <map>
#include <set>
#include <string>

namespace vhj {

// INI-style run configuration:
//   [section]
//   key = value     # trailing comments with '#' or ';'
// Sections and keys are validated strictly: anything a subcommand does not
// know is a hard error, not a warning.
class ConfigFile {
public:
  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::string& path);

  bool has_section(const std::string& name) const;
  bool has(const std::string& section, const std::string& key) const;

  std::string require(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double number(const std::string& section, const std::string& key,
                double fallback) const;
  double require_number(const std::string& section,
                        const std::string& key) const;
  long long integer(const std::string& section, const std::string& key,
                    long long fallback) const;
  bool flag(const std::string& section, const std::string& key,
            bool fallback) const;

  // Rejects unknown sections and unknown keys. allowed maps section name to
  // its key set; a section listed with an empty set admits no keys.
  void enforce(const std::map<std::string, std::set<std::string>>& allowed) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections()
      const {
    return sections_;
  }

private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

} // namespace vhj
