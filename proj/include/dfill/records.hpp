#pragma once

// One result row per solver run, with CSV (RFC 4180 quoting) and JSON
// (stable key order) emission and parsing.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dfill {

struct RunRecord {
  std::string problem;
  std::size_t n = 0;
  std::string x0;
  std::string ff;
  std::string config;
  double f_g = 0.0;
  std::string x_g;
  std::uint64_t n_fu = 0;
  std::uint64_t n_fill = 0;
  double wall_time = 0.0;  // seconds
  std::string termination;
  double known_value = 0.0;
  bool hit = false;
  std::string error;  // empty on success

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Column order for both formats.
const std::vector<std::string>& record_columns();

std::string format_double(double v);
double parse_double(const std::string& s);

void write_csv(std::ostream& os, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_csv(std::istream& is);

/// A JSON array with one object per record.
void write_json(std::ostream& os, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_json(std::istream& is);

}  // namespace dfill
