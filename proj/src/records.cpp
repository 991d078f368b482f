#include "dfill/records.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace dfill {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one logical CSV record; quoted fields may span lines.
bool read_csv_row(std::istream& is, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (is.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (is.peek() == '"') {
          is.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      if (is.peek() == '\n') is.get(c);
      break;
    } else if (c == '\n') {
      break;
    } else {
      field += c;
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

template <typename T>
T parse_unsigned(const std::string& s) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("bad integer field '" + s + "'");
  }
  return v;
}

}  // namespace

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> columns = {
      "problem", "n",         "x0",          "ff",          "config", "f_g",  "x_g",
      "n_fu",    "n_fill",    "wall_time",   "termination", "known_value", "hit", "error"};
  return columns;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("bad numeric field '" + s + "'");
  }
  return v;
}

void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  const auto& cols = record_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\r\n";
  for (const auto& r : records) {
    const std::vector<std::string> row = {
        r.problem, std::to_string(r.n), r.x0, r.ff, r.config, format_double(r.f_g), r.x_g,
        std::to_string(r.n_fu), std::to_string(r.n_fill), format_double(r.wall_time),
        r.termination, format_double(r.known_value), r.hit ? "hit" : "miss", r.error};
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\r\n";
  }
}

std::vector<RunRecord> read_csv(std::istream& is) {
  std::vector<std::string> fields;
  if (!read_csv_row(is, fields)) return {};
  if (fields != record_columns()) throw std::runtime_error("unexpected CSV header");
  std::vector<RunRecord> out;
  while (read_csv_row(is, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != record_columns().size()) {
      throw std::runtime_error("CSV row has " + std::to_string(fields.size()) + " fields");
    }
    RunRecord r;
    r.problem = fields[0];
    r.n = parse_unsigned<std::size_t>(fields[1]);
    r.x0 = fields[2];
    r.ff = fields[3];
    r.config = fields[4];
    r.f_g = parse_double(fields[5]);
    r.x_g = fields[6];
    r.n_fu = parse_unsigned<std::uint64_t>(fields[7]);
    r.n_fill = parse_unsigned<std::uint64_t>(fields[8]);
    r.wall_time = parse_double(fields[9]);
    r.termination = fields[10];
    r.known_value = parse_double(fields[11]);
    if (fields[12] != "hit" && fields[12] != "miss") throw std::runtime_error("bad hit field");
    r.hit = fields[12] == "hit";
    r.error = fields[13];
    out.push_back(std::move(r));
  }
  return out;
}

void write_json(std::ostream& os, const std::vector<RunRecord>& records) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : records) {
    ordered_json j;
    j["problem"] = r.problem;
    j["n"] = r.n;
    j["x0"] = r.x0;
    j["ff"] = r.ff;
    j["config"] = r.config;
    j["f_g"] = r.f_g;
    j["x_g"] = r.x_g;
    j["n_fu"] = r.n_fu;
    j["n_fill"] = r.n_fill;
    j["wall_time"] = r.wall_time;
    j["termination"] = r.termination;
    j["known_value"] = r.known_value;
    j["hit"] = r.hit;
    j["error"] = r.error;
    rows.push_back(std::move(j));
  }
  os << rows.dump(2) << '\n';
}

std::vector<RunRecord> read_json(std::istream& is) {
  const ordered_json rows = ordered_json::parse(is);
  if (!rows.is_array()) throw std::runtime_error("expected a JSON array of records");
  std::vector<RunRecord> out;
  for (const auto& j : rows) {
    RunRecord r;
    r.problem = j.at("problem").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.x0 = j.at("x0").get<std::string>();
    r.ff = j.at("ff").get<std::string>();
    r.config = j.at("config").get<std::string>();
    r.f_g = j.at("f_g").get<double>();
    r.x_g = j.at("x_g").get<std::string>();
    r.n_fu = j.at("n_fu").get<std::uint64_t>();
    r.n_fill = j.at("n_fill").get<std::uint64_t>();
    r.wall_time = j.at("wall_time").get<double>();
    r.termination = j.at("termination").get<std::string>();
    r.known_value = j.at("known_value").get<double>();
    r.hit = j.at("hit").get<bool>();
    r.error = j.at("error").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dfill
