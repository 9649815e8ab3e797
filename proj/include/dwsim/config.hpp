#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// INI-style document: [section] headers, "key = value" lines, '#' comments.
// Sections may repeat (each [pinning] block is one pinning center).
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(const std::string& key) const;
};

struct ConfigDoc {
  std::string origin;  // path or label, used in error messages
  std::vector<ConfigSection> sections;

  static ConfigDoc parse_string(const std::string& text,
                                const std::string& origin);
  static ConfigDoc parse_file(const std::string& path);

  const ConfigSection* find(const std::string& name) const;
  std::vector<const ConfigSection*> find_all(const std::string& name) const;
};

// Typed access with origin:line in every error.
class SectionView {
 public:
  SectionView(const ConfigDoc& doc, const ConfigSection& sec)
      : doc_(&doc), sec_(&sec) {}

  bool has(const std::string& key) const;
  std::string str(const std::string& key) const;
  std::string str_or(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key) const;
  double num_or(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer_or(const std::string& key, long fallback) const;
  // Comma or whitespace separated numbers.
  std::vector<double> num_list(const std::string& key) const;

  // Rejects any key outside the allowed set, pointing at its line.
  void allow_only(std::initializer_list<const char*> keys) const;

  const ConfigSection& section() const { return *sec_; }

 private:
  [[noreturn]] void fail(const std::string& msg, int line) const;
  const ConfigDoc* doc_;
  const ConfigSection* sec_;
};

}  // namespace dwsim
