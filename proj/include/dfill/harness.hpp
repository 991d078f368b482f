#pragma once

// Benchmark harness: single runs and Cartesian run matrices over the problem
// registry.
//
// Matrix files are JSON:
//
//   {
//     "problems": [
//       {"name": "rosenbrock", "n": [2, 5, 10], "starts": ["(3,3,...,3)"]},
//       {"name": "booth"}
//     ],
//     "configs": [{"label": "default"}, {"label": "qn", "filled_minimizer": "quasi-newton"}],
//     "filled": ["ff4"]
//   }
//
// "n" and "starts" are optional (registry dimension, problem default start).
// "configs" defaults to one default config, "filled" to ["ff4"]. Config keys:
// label, m, m_prime, r_max, r_min, shrink_factor, objective_minimizer,
// filled_minimizer, objective_tolerance, filled_tolerance, rounding, counting, max_evaluations,
// check_descent_property. Rows run problems x n x starts x configs x filled in
// file order.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dfill/benchmarks.hpp"
#include "dfill/records.hpp"
#include "dfill/solver.hpp"

namespace dfill {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Expands a start-point pattern to dimension n.
///   "(1,2)"            explicit, must have n entries
///   "(3,3,...,3)"      the entries before the ellipsis repeat with their
///   "(-5,5,...)"       smallest period; an entry after it fixes the last
///   "default"          coordinate
/// "..." and the unicode ellipsis are both accepted, as is the unicode minus.
IntegerPoint expand_start(const std::string& pattern, std::size_t n);

struct RunSpec {
  std::string problem;
  std::size_t n = 0;              // 0: registry dimension
  std::string start = "default";  // pattern for expand_start
  std::string label = "default";
  SolverConfig config;
};

/// Runs one spec. Invalid specs throw UsageError; solver failures are kept in
/// the record's error field.
RunRecord run(const RunSpec& spec);

/// Same, also handing back the full solver report.
RunRecord run(const RunSpec& spec, SolveReport* report);

struct MatrixConfig {
  std::vector<RunSpec> rows;
};

/// Config overrides applied on top of `base`; unknown keys are rejected.
SolverConfig apply_overrides(SolverConfig base, const std::string& json_object);

MatrixConfig parse_matrix(const std::string& json_text);
MatrixConfig load_matrix(const std::string& path);

/// Executes rows in order; with jobs > 1 rows run concurrently but results
/// keep row order.
std::vector<RunRecord> run_matrix(const MatrixConfig& matrix, unsigned jobs = 1);

constexpr double kHitTolerance = 1e-9;

}  // namespace dfill
