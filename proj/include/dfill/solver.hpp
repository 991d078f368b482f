#pragma once

// Filled-function search for min f over a box X of Z^n.
//
// generic_filled_search() is the inner algorithm: descend on f, then try to
// escape the current discrete minimizer x* by minimizing an augmented filled
// function from each unit neighbour of x*, restarting the descent whenever the
// escape lands on a strictly better point. solve() wraps it in a small restart
// loop that keeps the best point found.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dfill/core.hpp"
#include "dfill/filled.hpp"
#include "dfill/local_search.hpp"

namespace dfill {

enum class CountingMode {
  kFull,        // each F_hat call counts one n_fill and one n_fu
  kFilledOnly,  // F_hat calls count n_fill only
};

std::string to_string(CountingMode m);
CountingMode counting_mode_from_string(const std::string& s);

struct SolverConfig {
  std::size_t max_iterations = 3;  // m: outer restarts
  std::size_t revisit_cap = 2;     // m': stop once a point is reached more often
  FilledFunctionParams filled;
  std::string filled_id = "ff4";
  MinimizerKind objective_minimizer = MinimizerKind::kQuasiNewton;
  MinimizerKind filled_minimizer = MinimizerKind::kPatternSearch;
  double objective_tolerance = 1e-12;
  double filled_tolerance = 1e-6;
  RoundingRule rounding = RoundingRule::kHalfAwayFromZero;
  CountingMode counting = CountingMode::kFull;
  /// Combined n_fu + n_fill budget, checked between local minimizations.
  /// 0 disables it.
  std::uint64_t max_evaluations = 50'000'000;
  /// Also run the filled-function descent property check after every
  /// filled minimization whose rounded output is a local minimizer of F_hat.
  /// The check is not counted and costs one extra objective minimization.
  bool check_descent_property = false;

  void validate() const;
};

enum class SolveTermination {
  kIterations,   // m outer iterations done
  kRevisitCap,   // some point reached more than m' times
  kBudget,
};

std::string to_string(SolveTermination t);
SolveTermination solve_termination_from_string(const std::string& s);

/// Descent on f from `start`, ending at the discrete minimizer `anchor`.
struct LocalMinimumEvent {
  std::uint64_t seq = 0;
  IntegerPoint start;
  IntegerPoint anchor;
  double value = 0.0;
  bool strict = false;  // anchor is a strict discrete local minimizer
  EvalCounter cost;
};

/// One minimization of F_hat from a neighbour of the anchor.
struct FilledMinimizationEvent {
  std::uint64_t seq = 0;
  IntegerPoint anchor;
  double anchor_value = 0.0;
  std::size_t candidate_index = 0;  // position in N(x*) \ {x*}
  IntegerPoint candidate;
  double r = 0.0;
  RealPoint continuous_result;      // x'_c, before rounding
  double augmented_value = 0.0;     // F_hat(x'_c)
  IntegerPoint rounded;             // [x'_c]
  IntegerPoint result;              // x'
  double result_value = 0.0;        // f(x')
  bool improved = false;            // f(x') < f(x*)
  bool vertex = false;
  BoundCheck bound;
  EvalCounter cost;
};

struct ParameterAdjustmentEvent {
  std::uint64_t seq = 0;
  std::size_t candidate_index = 0;
  double r_before = 0.0;
  double r_after = 0.0;
  bool exhausted = false;
};

/// The anchor must be a strict local maximizer of F_hat on its neighbourhood.
struct MaximizerCheckEvent {
  std::uint64_t seq = 0;
  IntegerPoint anchor;
  double r = 0.0;
  bool holds = false;
};

/// Escape landed on a local minimizer of F_hat: a fresh descent of f from
/// there must not end above the anchor.
struct DescentPropertyEvent {
  std::uint64_t seq = 0;
  IntegerPoint anchor;
  IntegerPoint rounded;
  double anchor_value = 0.0;
  double descent_value = 0.0;
  bool holds = false;
};

struct OuterIterationEvent {
  std::uint64_t seq = 0;
  std::size_t iteration = 0;
  IntegerPoint start;
  IntegerPoint result;
  double result_value = 0.0;
  bool improved = false;
  double best_value = 0.0;
  IntegerPoint next_start;
  EvalCounter cost;  // evaluations outside the inner search (neighbour pick)
};

struct SolveTrace {
  EvalCounter initial_cost;  // f(x0)
  std::vector<LocalMinimumEvent> local_minima;
  std::vector<FilledMinimizationEvent> filled_minimizations;
  std::vector<ParameterAdjustmentEvent> adjustments;
  std::vector<MaximizerCheckEvent> maximizer_checks;
  std::vector<DescentPropertyEvent> descent_checks;
  std::vector<OuterIterationEvent> iterations;

  /// Sum of every recorded cost: matches the report counters exactly.
  EvalCounter recorded_cost() const;
};

struct SolveReport {
  IntegerPoint best_point;
  double best_value = 0.0;
  EvalCounter counters;
  SolveTermination termination = SolveTermination::kIterations;
  SolveTrace trace;
};

/// Shared state of one solve: config, objective, counters and trace.
class FilledSearch {
 public:
  FilledSearch(const Objective& f, const SolverConfig& config);
  FilledSearch(const FilledSearch&) = delete;
  FilledSearch& operator=(const FilledSearch&) = delete;

  /// The inner algorithm from x0. Returns the final anchor x* and f(x*).
  LatticeMinimum run(const IntegerPoint& x0);

  EvalCounter& counters() { return counters_; }
  SolveTrace& trace() { return trace_; }
  bool budget_exhausted() const;
  std::uint64_t next_seq() { return seq_++; }

 private:
  LatticeMinimum descend(const IntegerPoint& start);
  FilledMinimizationEvent minimize_filled(FilledFunction& F, std::size_t index,
                                          const IntegerPoint& candidate);
  double augmented_uncounted(const FilledFunction& F, const IntegerPoint& x) const;

  const Objective& f_;
  SolverConfig config_;
  EvalCounter counters_;
  CountingObjective counted_f_;
  std::unique_ptr<ContinuousMinimizer> objective_minimizer_;
  std::unique_ptr<ContinuousMinimizer> filled_minimizer_;
  SolveTrace trace_;
  std::uint64_t seq_ = 0;
};

/// Inner algorithm only; counters accumulate into `counters`.
IntegerPoint generic_filled_search(const Objective& f, const IntegerPoint& x0,
                                   const SolverConfig& config, EvalCounter& counters);

/// Outer restart loop around the inner algorithm.
SolveReport solve(const Objective& f, const IntegerPoint& x0, const SolverConfig& config = {});

/// Every coordinate of x sits on a bound of the box.
bool vertex_check(const IntegerPoint& x, const BoxDomain& box);

}  // namespace dfill
