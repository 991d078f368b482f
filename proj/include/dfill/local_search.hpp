#pragma once

// Continuous local search used as the inner algorithm C, plus the discrete
// steepest-descent baseline.
//
// Every ContinuousMinimizer must honour two properties the solver relies on:
//   - determinism: identical (f, x0, box) produce a bitwise-identical result;
//   - descent: f(result) <= f(x0).
// Two further properties are assumed but cannot be checked at runtime: from an
// integral start some unit neighbour converges to the same point from strictly
// closer, and any point of a steepest-descent basin converges to a minimizer no
// worse than that basin's. probe_neighbor_convergence() measures the first one
// empirically on small boxes.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dfill/core.hpp"

namespace dfill {

enum class Termination {
  kConverged,   // step size or projected gradient below tolerance
  kStalled,     // no descent available from the current iterate
  kBudget,      // iteration cap reached; best-so-far returned
};

std::string to_string(Termination t);

struct SearchTrace {
  std::vector<RealPoint> iterates;
  std::vector<double> values;
  Termination termination = Termination::kConverged;
};

struct MinimizeResult {
  RealPoint point;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  Termination termination = Termination::kConverged;
  std::optional<SearchTrace> trace;  // filled when requested
};

class ContinuousMinimizer {
 public:
  virtual ~ContinuousMinimizer() = default;

  /// Minimizes f over the real relaxation of box starting from x0. x0 is
  /// projected onto the box first.
  virtual MinimizeResult minimize(const RealFunction& f, const RealPoint& x0,
                                  const BoxDomain& box) const = 0;

  virtual std::string_view name() const = 0;
};

/// Compass search on the 2n coordinate directions with complete polling.
/// The step starts at initial_step and is multiplied by shrink whenever no
/// polled point improves strictly; it grows by expand after a success (1
/// disables growth). Integral starts with integral steps stay on the lattice
/// until the first contraction.
class PatternSearch final : public ContinuousMinimizer {
 public:
  /// kBest moves to the best of all 2n polls; kExploratory walks the
  /// coordinates in order and keeps each improving step as it goes.
  enum class Poll { kBest, kExploratory };

  struct Options {
    Poll poll = Poll::kExploratory;
    double initial_step = 1.0;
    double shrink = 0.5;
    double expand = 1.0;
    double tolerance = 1e-6;
    std::size_t max_iterations = 10000;
    bool record_trace = false;
  };

  PatternSearch() : PatternSearch(Options{}) {}
  explicit PatternSearch(Options options);

  MinimizeResult minimize(const RealFunction& f, const RealPoint& x0,
                          const BoxDomain& box) const override;
  std::string_view name() const override { return "pattern"; }
  const Options& options() const { return options_; }

 private:
  Options options_;
};

/// Projected BFGS with central finite-difference gradients and an Armijo
/// backtracking line search along the projected path.
class QuasiNewton final : public ContinuousMinimizer {
 public:
  struct Options {
    double tolerance = 1e-6;         // projected-gradient infinity norm
    double fd_relative_step = 1e-6;  // h_i = fd_relative_step * max(1, |x_i|)
    std::size_t max_iterations = 10000;
    double armijo = 1e-4;
    std::size_t max_backtracks = 60;
    bool record_trace = false;
  };

  QuasiNewton() : QuasiNewton(Options{}) {}
  explicit QuasiNewton(Options options);

  MinimizeResult minimize(const RealFunction& f, const RealPoint& x0,
                          const BoxDomain& box) const override;
  std::string_view name() const override { return "quasi-newton"; }
  const Options& options() const { return options_; }

 private:
  Options options_;
};

enum class MinimizerKind { kPatternSearch, kQuasiNewton };

std::string to_string(MinimizerKind kind);
MinimizerKind minimizer_kind_from_string(const std::string& s);
/// tolerance: step-size bound (pattern) or projected-gradient bound (quasi-Newton).
std::unique_ptr<ContinuousMinimizer> make_minimizer(MinimizerKind kind, bool record_trace = false,
                                                    double tolerance = 1e-6);

/// Repeatedly steps along the discrete steepest-descent direction until x is a
/// discrete local minimizer. Among equally steep directions the first in
/// directions() order is taken.
IntegerPoint steepest_descent_discrete(const LatticeFunction& f, const IntegerPoint& x0,
                                       const BoxDomain& box);
/// Same walk, also returning the final value. x0_value, when given, is used
/// as f(x0) instead of evaluating it.
LatticeMinimum discrete_descent(const LatticeFunction& f, const IntegerPoint& x0,
                                const BoxDomain& box, std::optional<double> x0_value = std::nullopt);
IntegerPoint steepest_descent_discrete(const Objective& f, const IntegerPoint& x0);

struct ContractCheck {
  bool deterministic = true;
  bool descends = true;
  double start_value = 0.0;
  double result_value = 0.0;
  RealPoint first;
  RealPoint second;

  bool ok() const { return deterministic && descends; }
  std::string describe() const;
};

/// Runs the minimizer twice from x0 and checks bitwise-equal outputs and
/// f(out) <= f(x0).
ContractCheck verify_descent_contract(const ContinuousMinimizer& minimizer, const RealFunction& f,
                                      const RealPoint& x0, const BoxDomain& box);

struct NeighborConvergenceProbe {
  std::size_t points = 0;
  std::size_t satisfied = 0;
  double fraction() const { return points ? static_cast<double>(satisfied) / points : 0.0; }
};

/// For every lattice point x0 of a small box: either C(f, x0) = x0, or some
/// unit neighbour x0 + d converges to the same result with
/// |x0 + d - x| < |x0 - x|. Refuses boxes larger than max_points.
NeighborConvergenceProbe probe_neighbor_convergence(const ContinuousMinimizer& minimizer,
                                                    const RealFunction& f, const BoxDomain& box,
                                                    std::uint64_t max_points = 100000);

}  // namespace dfill
