#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dwsim/grid.hpp"
#include "dwsim/micromag.hpp"
#include "dwsim/walker.hpp"

namespace dwsim {

// FNV-1a, 64-bit.
uint64_t fnv1a64(const void* data, size_t n);
uint64_t fnv1a64_str(const std::string& s);
std::string hex64(uint64_t v);

// Column-oriented numeric table.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> cols;  // cols[c][row]
  size_t rows() const { return cols.empty() ? 0 : cols[0].size(); }
};

// Header row, %.17g values, and a final "# fnv1a <16 hex>" line hashing every
// byte above it, so a truncated or edited file is detectable.
std::string render_csv(const Table& t);
void write_text_file(const std::string& path, const std::string& content);

Table walker_table(const WalkerSeries& s);
Table micromag_table(const MicromagSeries& s);
// One snapshot as x, mx, my, mz rows; ref supplies the cell coordinates.
Table snapshot_table(const MagnetizationGrid& ref, const Snapshot& snap);

// Flat record of everything that determines a run, written next to the
// outputs. The parameter hash makes reruns comparable at a glance.
struct RunManifest {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(const std::string& key, const std::string& value);
  void add_num(const std::string& key, double value);
  uint64_t param_hash() const;  // over "key=value\n" in insertion order
  std::string render() const;
};

}  // namespace dwsim
