#pragma once

// Box-constrained integer test problems with known global minima, and an
// exhaustive-enumeration oracle for the small ones.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfill/core.hpp"

namespace dfill {

struct BenchmarkProblem {
  std::string name;   // registry key, e.g. "goldstein-price"
  std::string title;  // display name
  bool parametric = false;
  BoxDomain box;
  /// Decision variables z are mapped to x = z / scale before the formula.
  double scale = 1.0;
  RealFunction formula;
  std::vector<IntegerPoint> known_minimizers;  // in decision-variable space
  double known_value = 0.0;
  IntegerPoint default_start;
  /// Best value the reference runs reached from default_start with the
  /// shipped filled function; the acceptance bar for that start.
  double reference_value = 0.0;

  std::size_t dimension() const { return box.dimension(); }
};

/// Objective view of a problem: value(z) = formula(z / scale), no box check.
class BenchmarkObjective final : public Objective {
 public:
  explicit BenchmarkObjective(const BenchmarkProblem& problem) : problem_(problem) {}
  std::size_t dimension() const override { return problem_.dimension(); }
  const BoxDomain& box() const override { return problem_.box; }
  double value(std::span<const double> z) const override;
  const BenchmarkProblem& problem() const { return problem_; }

 private:
  const BenchmarkProblem& problem_;
};

/// All twelve problems at their default dimensions (Rosenbrock, Rastrigin and
/// Salomon at n = 2).
const std::vector<BenchmarkProblem>& registry();

/// Problem names in registry order.
std::vector<std::string> problem_names();

/// Looks a problem up by name. n = 0 selects the registry dimension; fixed-size
/// problems reject any other n. Throws ParameterError for unknown names.
BenchmarkProblem make_problem(const std::string& name, std::size_t n = 0);

double evaluate(const BenchmarkProblem& problem, const IntegerPoint& z);
double evaluate(const BenchmarkProblem& problem, const RealPoint& z);

struct OracleResult {
  IntegerPoint minimizer;
  double value = 0.0;
  std::uint64_t points = 0;
};

inline constexpr std::uint64_t kOracleLimit = 10'000'000;

/// Exhaustive minimum over box (the problem's own box when omitted). Returns
/// the lexicographically smallest minimizer. Refuses boxes above `limit`.
OracleResult brute_force_min(const BenchmarkProblem& problem,
                             const std::optional<BoxDomain>& box = std::nullopt,
                             std::uint64_t limit = kOracleLimit);

}  // namespace dfill
