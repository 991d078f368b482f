#include "dfill/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace dfill {

namespace {

using json = nlohmann::json;

std::string normalize_pattern(std::string s) {
  auto replace_all = [&](const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) {
      s.replace(pos, from.size(), to);
    }
  };
  replace_all("−", "-");
  replace_all("…", "...");
  replace_all("\\ldots", "...");
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t') out += c;
  }
  return out;
}

std::int64_t parse_coordinate(const std::string& token, const std::string& pattern) {
  std::int64_t v = 0;
  std::size_t used = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw UsageError("bad coordinate '" + token + "' in start pattern '" + pattern + "'");
  }
  return v;
}

SolverConfig overrides_from(SolverConfig cfg, const json& j, std::string* label) {
  if (!j.is_object()) throw UsageError("config override must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "label") {
        if (label) *label = value.get<std::string>();
      } else if (key == "m") {
        cfg.max_iterations = value.get<std::size_t>();
      } else if (key == "m_prime") {
        cfg.revisit_cap = value.get<std::size_t>();
      } else if (key == "r_max") {
        cfg.filled.r_max = value.get<double>();
      } else if (key == "r_min") {
        cfg.filled.r_min = value.get<double>();
      } else if (key == "shrink_factor") {
        cfg.filled.shrink_factor = value.get<double>();
      } else if (key == "objective_minimizer") {
        cfg.objective_minimizer = minimizer_kind_from_string(value.get<std::string>());
      } else if (key == "filled_minimizer") {
        cfg.filled_minimizer = minimizer_kind_from_string(value.get<std::string>());
      } else if (key == "objective_tolerance") {
        cfg.objective_tolerance = value.get<double>();
      } else if (key == "filled_tolerance") {
        cfg.filled_tolerance = value.get<double>();
      } else if (key == "rounding") {
        cfg.rounding = rounding_rule_from_string(value.get<std::string>());
      } else if (key == "counting") {
        cfg.counting = counting_mode_from_string(value.get<std::string>());
      } else if (key == "max_evaluations") {
        cfg.max_evaluations = value.get<std::uint64_t>();
      } else if (key == "check_descent_property") {
        cfg.check_descent_property = value.get<bool>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
  }
  cfg.filled.r = cfg.filled.r_max;
  return cfg;
}

}  // namespace

IntegerPoint expand_start(const std::string& pattern, std::size_t n) {
  if (n == 0) throw UsageError("start pattern needs a positive dimension");
  std::string s = normalize_pattern(pattern);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<std::string> tokens;
  {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) tokens.push_back(tok);
  }
  std::vector<std::int64_t> head;
  std::optional<std::int64_t> tail;
  bool ellipsis = false;
  for (const auto& tok : tokens) {
    if (tok == "...") {
      if (ellipsis) throw UsageError("start pattern '" + pattern + "' has two ellipses");
      ellipsis = true;
    } else if (ellipsis) {
      if (tail) throw UsageError("start pattern '" + pattern + "' has more than one trailing entry");
      tail = parse_coordinate(tok, pattern);
    } else {
      head.push_back(parse_coordinate(tok, pattern));
    }
  }
  if (head.empty()) throw UsageError("start pattern '" + pattern + "' has no coordinates");
  if (!ellipsis) {
    if (head.size() != n) {
      throw UsageError("start pattern '" + pattern + "' has " + std::to_string(head.size()) +
                       " coordinates, problem has " + std::to_string(n));
    }
    return IntegerPoint(std::move(head));
  }
  std::size_t period = 1;
  for (; period < head.size(); ++period) {
    bool ok = true;
    for (std::size_t i = period; i < head.size() && ok; ++i) ok = head[i] == head[i - period];
    if (ok) break;
  }
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = head[i % period];
  if (tail) out.back() = *tail;
  return IntegerPoint(std::move(out));
}

RunRecord run(const RunSpec& spec) { return run(spec, nullptr); }

RunRecord run(const RunSpec& spec, SolveReport* report_out) {
  const BenchmarkProblem problem = [&] {
    try {
      return make_problem(spec.problem, spec.n);
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
  }();
  const IntegerPoint x0 =
      spec.start == "default" ? problem.default_start : expand_start(spec.start, problem.dimension());
  if (!problem.box.contains(x0)) {
    throw UsageError("start " + to_string(x0) + " is outside the box of '" + problem.name + "'");
  }
  try {
    spec.config.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }

  RunRecord rec;
  rec.problem = problem.name;
  rec.n = problem.dimension();
  rec.x0 = to_string(x0);
  rec.ff = spec.config.filled_id;
  rec.config = spec.label;
  rec.known_value = problem.known_value;

  const BenchmarkObjective f(problem);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    SolveReport report = solve(f, x0, spec.config);
    rec.f_g = report.best_value;
    rec.x_g = to_string(report.best_point);
    rec.n_fu = report.counters.n_fu;
    rec.n_fill = report.counters.n_fill;
    rec.termination = to_string(report.termination);
    rec.hit = std::fabs(rec.f_g - rec.known_value) <= kHitTolerance;
    if (report_out) *report_out = std::move(report);
  } catch (const std::exception& e) {
    rec.error = e.what();
    rec.termination = "error";
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

SolverConfig apply_overrides(SolverConfig base, const std::string& json_object) {
  json j;
  try {
    j = json::parse(json_object);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config overrides are not valid JSON: ") + e.what());
  }
  return overrides_from(std::move(base), j, nullptr);
}

MatrixConfig parse_matrix(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw UsageError("matrix file must hold a JSON object");
  for (const auto& [key, _] : root.items()) {
    if (key != "problems" && key != "configs" && key != "filled") {
      throw UsageError("unknown matrix key '" + key + "'");
    }
  }

  std::vector<std::pair<std::string, SolverConfig>> configs;
  if (root.contains("configs")) {
    for (const auto& c : root.at("configs")) {
      std::string label = "config" + std::to_string(configs.size());
      SolverConfig cfg = overrides_from(SolverConfig{}, c, &label);
      configs.emplace_back(label, cfg);
    }
  } else {
    configs.emplace_back("default", SolverConfig{});
  }
  std::vector<std::string> filled{"ff4"};
  if (root.contains("filled")) filled = root.at("filled").get<std::vector<std::string>>();

  MatrixConfig matrix;
  if (!root.contains("problems")) return matrix;
  for (const auto& p : root.at("problems")) {
    if (!p.is_object() || !p.contains("name")) throw UsageError("each problem needs a \"name\"");
    for (const auto& [key, _] : p.items()) {
      if (key != "name" && key != "n" && key != "starts") {
        throw UsageError("unknown problem key '" + key + "'");
      }
    }
    const auto name = p.at("name").get<std::string>();
    std::vector<std::size_t> dims{0};
    if (p.contains("n")) {
      dims = p.at("n").is_array() ? p.at("n").get<std::vector<std::size_t>>()
                                  : std::vector<std::size_t>{p.at("n").get<std::size_t>()};
    }
    std::vector<std::string> starts{"default"};
    if (p.contains("starts")) starts = p.at("starts").get<std::vector<std::string>>();
    for (std::size_t n : dims) {
      for (const auto& start : starts) {
        for (const auto& [label, cfg] : configs) {
          for (const auto& ff : filled) {
            RunSpec spec;
            spec.problem = name;
            spec.n = n;
            spec.start = start;
            spec.label = label;
            spec.config = cfg;
            spec.config.filled_id = ff;
            matrix.rows.push_back(std::move(spec));
          }
        }
      }
    }
  }
  return matrix;
}

MatrixConfig load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open matrix file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

std::vector<RunRecord> run_matrix(const MatrixConfig& matrix, unsigned jobs) {
  std::vector<RunRecord> out(matrix.rows.size());
  auto run_row = [&](std::size_t i) {
    const RunSpec& spec = matrix.rows[i];
    try {
      out[i] = run(spec);
    } catch (const std::exception& e) {
      RunRecord rec;
      rec.problem = spec.problem;
      rec.n = spec.n;
      rec.x0 = spec.start;
      rec.ff = spec.config.filled_id;
      rec.config = spec.label;
      rec.termination = "error";
      rec.error = e.what();
      out[i] = std::move(rec);
    }
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < out.size(); ++i) run_row(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < out.size(); i = next++) run_row(i);
    });
  }
  for (auto& w : workers) w.join();
  return out;
}

}  // namespace dfill
