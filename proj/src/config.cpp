#include "dwsim/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dwsim {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& text, const std::string& where) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) {
    throw ConfigError(where + ": expected a number, got '" + text + "'");
  }
  return v;
}

}  // namespace

const ConfigEntry* ConfigSection::find(const std::string& key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

ConfigDoc ConfigDoc::parse_string(const std::string& text,
                                  const std::string& origin) {
  ConfigDoc doc;
  doc.origin = origin;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  ConfigSection* cur = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (size_t h = s.find('#'); h != std::string::npos) s.erase(h);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        throw ConfigError(origin + ":" + std::to_string(line) +
                          ": unterminated section header");
      }
      ConfigSection sec;
      sec.name = trim(s.substr(1, s.size() - 2));
      sec.line = line;
      if (sec.name.empty()) {
        throw ConfigError(origin + ":" + std::to_string(line) +
                          ": empty section name");
      }
      doc.sections.push_back(std::move(sec));
      cur = &doc.sections.back();
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line) +
                        ": expected 'key = value' or '[section]'");
    }
    if (!cur) {
      throw ConfigError(origin + ":" + std::to_string(line) +
                        ": key outside any [section]");
    }
    ConfigEntry e;
    e.key = trim(s.substr(0, eq));
    e.value = trim(s.substr(eq + 1));
    e.line = line;
    if (e.key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line) + ": empty key");
    }
    if (cur->find(e.key)) {
      throw ConfigError(origin + ":" + std::to_string(line) +
                        ": duplicate key '" + e.key + "' in [" + cur->name + "]");
    }
    cur->entries.push_back(std::move(e));
  }
  return doc;
}

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

const ConfigSection* ConfigDoc::find(const std::string& name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<const ConfigSection*> ConfigDoc::find_all(
    const std::string& name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

void SectionView::fail(const std::string& msg, int line) const {
  throw ConfigError(doc_->origin + ":" + std::to_string(line) + ": " + msg);
}

bool SectionView::has(const std::string& key) const {
  return sec_->find(key) != nullptr;
}

std::string SectionView::str(const std::string& key) const {
  const ConfigEntry* e = sec_->find(key);
  if (!e) fail("missing key '" + key + "' in [" + sec_->name + "]", sec_->line);
  return e->value;
}

std::string SectionView::str_or(const std::string& key,
                                const std::string& fallback) const {
  const ConfigEntry* e = sec_->find(key);
  return e ? e->value : fallback;
}

double SectionView::num(const std::string& key) const {
  const ConfigEntry* e = sec_->find(key);
  if (!e) fail("missing key '" + key + "' in [" + sec_->name + "]", sec_->line);
  return to_number(e->value, doc_->origin + ":" + std::to_string(e->line));
}

double SectionView::num_or(const std::string& key, double fallback) const {
  const ConfigEntry* e = sec_->find(key);
  if (!e) return fallback;
  return to_number(e->value, doc_->origin + ":" + std::to_string(e->line));
}

long SectionView::integer(const std::string& key) const {
  const double v = num(key);
  const long n = (long)std::llround(v);
  if ((double)n != v) {
    fail("key '" + key + "' must be an integer", sec_->find(key)->line);
  }
  return n;
}

long SectionView::integer_or(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  return integer(key);
}

std::vector<double> SectionView::num_list(const std::string& key) const {
  const ConfigEntry* e = sec_->find(key);
  if (!e) fail("missing key '" + key + "' in [" + sec_->name + "]", sec_->line);
  const std::string where = doc_->origin + ":" + std::to_string(e->line);
  std::string buf = e->value;
  for (auto& ch : buf) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(buf);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_number(tok, where));
  if (out.empty()) fail("key '" + key + "' has no values", e->line);
  return out;
}

void SectionView::allow_only(std::initializer_list<const char*> keys) const {
  for (const auto& e : sec_->entries) {
    bool ok = false;
    for (const char* k : keys) {
      if (e.key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      fail("unknown key '" + e.key + "' in [" + sec_->name + "]", e.line);
    }
  }
}

}  // namespace dwsim
