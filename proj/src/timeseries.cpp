#include "dwsim/timeseries.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dwsim {

uint64_t fnv1a64(const void* data, size_t n) {
  const unsigned char* p = (const unsigned char*)data;
  uint64_t h = 14695981039346656037ULL;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t fnv1a64_str(const std::string& s) { return fnv1a64(s.data(), s.size()); }

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
  return buf;
}

namespace {

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string render_csv(const Table& t) {
  for (const auto& c : t.cols) {
    if (c.size() != t.rows()) {
      throw std::logic_error("table columns have unequal lengths");
    }
  }
  if (t.columns.size() != t.cols.size()) {
    throw std::logic_error("table has mismatched header");
  }
  std::string out;
  for (size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (size_t r = 0; r < t.rows(); ++r) {
    for (size_t c = 0; c < t.cols.size(); ++c) {
      if (c) out += ',';
      out += format_g17(t.cols[c][r]);
    }
    out += '\n';
  }
  out += "# fnv1a " + hex64(fnv1a64_str(out)) + "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f.write(content.data(), (std::streamsize)content.size());
  if (!f) throw std::runtime_error("short write to '" + path + "'");
}

Table walker_table(const WalkerSeries& s) {
  Table t;
  t.columns = {"t_s", "phi_rad", "W_m", "v_m_per_s", "x_m"};
  t.cols = {s.t_s, s.phi_rad, s.W_m, s.v_m_per_s, s.x_m};
  return t;
}

Table micromag_table(const MicromagSeries& s) {
  Table t;
  t.columns = {"t_s",   "x_wall_m", "v_wall_m_per_s", "W_fit_m",
               "max_mz", "E_rel_J_per_m2", "dE_dt_W_per_m2"};
  t.cols = {s.t_s, s.x_m, s.v_m_per_s, s.W_m, s.max_mz, s.E_J_per_m2,
            s.dEdt_W_per_m2};
  return t;
}

Table snapshot_table(const MagnetizationGrid& ref, const Snapshot& snap) {
  Table t;
  t.columns = {"x_m", "mx", "my", "mz"};
  t.cols.resize(4);
  for (int i = 0; i < (int)snap.m.size(); ++i) {
    t.cols[0].push_back(ref.x_at(i));
    t.cols[1].push_back(snap.m[i].x);
    t.cols[2].push_back(snap.m[i].y);
    t.cols[3].push_back(snap.m[i].z);
  }
  return t;
}

void RunManifest::add(const std::string& key, const std::string& value) {
  entries.emplace_back(key, value);
}

void RunManifest::add_num(const std::string& key, double value) {
  entries.emplace_back(key, format_g17(value));
}

uint64_t RunManifest::param_hash() const {
  std::string blob;
  for (const auto& [k, v] : entries) {
    blob += k;
    blob += '=';
    blob += v;
    blob += '\n';
  }
  return fnv1a64_str(blob);
}

std::string RunManifest::render() const {
  std::string out;
  for (const auto& [k, v] : entries) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  out += "param_hash = " + hex64(param_hash()) + "\n";
  return out;
}

}  // namespace dwsim
