#include <algorithm>

#include "dfill/benchmarks.hpp"
#include "dfill/solver.hpp"
#include "doctest.h"

using namespace dfill;

namespace {

void check_invariants(const BenchmarkProblem& p, const IntegerPoint& x0, const SolveReport& rep) {
  const BenchmarkObjective f(p);
  CAPTURE(p.name);
  CHECK(rep.best_value == f(rep.best_point));
  CHECK(rep.best_value <= f(x0));
  CHECK(is_discrete_local_min(f, rep.best_point));
  CHECK(rep.trace.recorded_cost() == rep.counters);

  double prev = f(x0);
  for (const auto& it : rep.trace.iterations) {
    CHECK(it.best_value <= prev);
    prev = it.best_value;
  }

  // Event sequence numbers are unique and, within each stream, increasing.
  std::vector<std::uint64_t> seqs;
  auto collect = [&](const auto& events) {
    std::uint64_t last = 0;
    bool first = true;
    for (const auto& e : events) {
      if (!first) CHECK(e.seq > last);
      last = e.seq;
      first = false;
      seqs.push_back(e.seq);
    }
  };
  collect(rep.trace.local_minima);
  collect(rep.trace.filled_minimizations);
  collect(rep.trace.adjustments);
  collect(rep.trace.maximizer_checks);
  collect(rep.trace.descent_checks);
  collect(rep.trace.iterations);
  std::sort(seqs.begin(), seqs.end());
  CHECK(std::adjacent_find(seqs.begin(), seqs.end()) == seqs.end());

  for (const auto& e : rep.trace.filled_minimizations) {
    CHECK(p.box.contains(e.continuous_result));
    CHECK(p.box.contains(e.rounded));
    CHECK(e.bound.status != BoundStatus::kViolated);
  }
  for (const auto& e : rep.trace.maximizer_checks) CHECK(e.holds);
  for (const auto& e : rep.trace.local_minima) CHECK(is_discrete_local_min(f, e.anchor));
}

SolveReport solve_problem(const BenchmarkProblem& p, const IntegerPoint& x0, const SolverConfig& cfg = {}) {
  const BenchmarkObjective f(p);
  return solve(f, x0, cfg);
}

}  // namespace

TEST_CASE("Booth inner search reaches (1,3)") {
  const auto p = make_problem("booth");
  const BenchmarkObjective f(p);
  EvalCounter c;
  CHECK(generic_filled_search(f, IntegerPoint{0, 0}, SolverConfig{}, c) == IntegerPoint{1, 3});
  CHECK(c.n_fu > 0);
  CHECK(c.n_fill > 0);
}

TEST_CASE("starting at the global minimizer returns it") {
  const auto p = make_problem("booth");
  const BenchmarkObjective f(p);
  EvalCounter c;
  CHECK(generic_filled_search(f, IntegerPoint{1, 3}, SolverConfig{}, c) == IntegerPoint{1, 3});
  const auto rep = solve(f, IntegerPoint{1, 3});
  CHECK(rep.best_point == IntegerPoint{1, 3});
  check_invariants(p, IntegerPoint{1, 3}, rep);
}

TEST_CASE("Three-Hump Camel meets the reference value") {
  const auto p = make_problem("three-hump-camel");
  const auto rep = solve_problem(p, IntegerPoint{2, 2});
  CHECK(rep.best_value <= 0.866667);
  check_invariants(p, IntegerPoint{2, 2}, rep);
}

TEST_CASE("Rastrigin n=10 from (-1,...,-1)") {
  const auto p = make_problem("rastrigin", 10);
  const auto rep = solve_problem(p, IntegerPoint(std::vector<std::int64_t>(10, -1)));
  CHECK(rep.best_value == 0.0);
  CHECK(rep.best_point == IntegerPoint(std::vector<std::int64_t>(10, 0)));
  check_invariants(p, IntegerPoint(std::vector<std::int64_t>(10, -1)), rep);
}

TEST_CASE("Rosenbrock n=10 from (3,...,3)") {
  const auto p = make_problem("rosenbrock", 10);
  const IntegerPoint x0(std::vector<std::int64_t>(10, 3));
  const auto rep = solve_problem(p, x0);
  CHECK(rep.best_value == 0.0);
  check_invariants(p, x0, rep);
}

TEST_CASE("m = 1 is one inner run") {
  const auto p = make_problem("booth");
  const BenchmarkObjective f(p);
  SolverConfig cfg;
  cfg.max_iterations = 1;
  const auto rep = solve(f, IntegerPoint{-7, 9}, cfg);
  EvalCounter c;
  const IntegerPoint inner = generic_filled_search(f, IntegerPoint{-7, 9}, cfg, c);
  CHECK(rep.trace.iterations.size() == 1);
  CHECK(rep.best_point == inner);
  // The outer loop adds f(x0) and the neighbour scan for the next start.
  CHECK(rep.counters.n_fill == c.n_fill);
  CHECK(rep.counters.n_fu == c.n_fu + rep.trace.initial_cost.n_fu + rep.trace.iterations[0].cost.n_fu);
}

TEST_CASE("solve is deterministic") {
  const auto p = make_problem("salomon");
  const auto a = solve_problem(p, p.default_start);
  const auto b = solve_problem(p, p.default_start);
  CHECK(a.best_point == b.best_point);
  CHECK(a.best_value == b.best_value);
  CHECK(a.counters == b.counters);
  CHECK(a.trace.filled_minimizations.size() == b.trace.filled_minimizations.size());
  CHECK(a.termination == b.termination);
}

TEST_CASE("invariants across the small registry problems") {
  for (const char* name : {"booth", "leon", "colville", "three-hump-camel", "schaffer1", "rastrigin"}) {
    const auto p = make_problem(name);
    const auto rep = solve_problem(p, p.default_start);
    check_invariants(p, p.default_start, rep);
  }
}

TEST_CASE("filled-only counting leaves n_fill unchanged and lowers n_fu") {
  const auto p = make_problem("leon");
  SolverConfig cfg;
  const auto full = solve_problem(p, p.default_start, cfg);
  cfg.counting = CountingMode::kFilledOnly;
  const auto only = solve_problem(p, p.default_start, cfg);
  CHECK(full.best_value == only.best_value);
  CHECK(full.counters.n_fill == only.counters.n_fill);
  CHECK(full.counters.n_fu == only.counters.n_fu + full.counters.n_fill);
}

TEST_CASE("evaluation budget stops the search") {
  const auto p = make_problem("schaffer1");
  SolverConfig cfg;
  cfg.max_evaluations = 2000;
  const auto rep = solve_problem(p, p.default_start, cfg);
  CHECK(rep.termination == SolveTermination::kBudget);
  check_invariants(p, p.default_start, rep);
}

TEST_CASE("descent property checks are logged on request") {
  const auto p = make_problem("three-hump-camel");
  SolverConfig cfg;
  cfg.check_descent_property = true;
  const auto rep = solve_problem(p, p.default_start, cfg);
  const auto plain = solve_problem(p, p.default_start);
  CHECK(rep.counters == plain.counters);  // diagnostics are not counted
  CHECK_FALSE(rep.trace.descent_checks.empty());
  CHECK(plain.trace.descent_checks.empty());
  for (const auto& e : rep.trace.descent_checks) {
    CHECK(e.holds == (e.descent_value <= e.anchor_value));
    CHECK(p.box.contains(e.rounded));
  }
}

TEST_CASE("both rounding rules keep the bound") {
  for (auto rule : {RoundingRule::kOffsetFloor, RoundingRule::kHalfAwayFromZero}) {
    SolverConfig cfg;
    cfg.rounding = rule;
    for (const char* name : {"booth", "rastrigin", "three-hump-camel", "leon"}) {
      const auto p = make_problem(name);
      const auto rep = solve_problem(p, p.default_start, cfg);
      CAPTURE(name);
      CAPTURE(to_string(rule));
      std::size_t checked = 0;
      for (const auto& e : rep.trace.filled_minimizations) {
        CHECK(e.bound.status != BoundStatus::kViolated);
        checked += e.bound.status == BoundStatus::kHolds;
      }
      CHECK(checked > 0);
      CHECK(rep.best_value == p.known_value);
    }
  }
}

TEST_CASE("quasi-Newton on the filled function is selectable") {
  const auto p = make_problem("booth");
  SolverConfig cfg;
  cfg.filled_minimizer = MinimizerKind::kQuasiNewton;
  const auto rep = solve_problem(p, p.default_start, cfg);
  CHECK(rep.best_value == 0.0);
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = {};
  cfg.revisit_cap = 0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = {};
  cfg.filled_id = "ff1";
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = {};
  cfg.filled.r_max = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);

  const auto p = make_problem("booth");
  const BenchmarkObjective f(p);
  CHECK_THROWS_AS(solve(f, IntegerPoint{20, 0}), DomainError);
  CHECK(counting_mode_from_string(to_string(CountingMode::kFilledOnly)) == CountingMode::kFilledOnly);
  CHECK(solve_termination_from_string("revisit-cap") == SolveTermination::kRevisitCap);
}

TEST_CASE("vertex check") {
  const auto box = BoxDomain::cube(2, -5, 5);
  CHECK(vertex_check(IntegerPoint{-5, 5}, box));
  CHECK_FALSE(vertex_check(IntegerPoint{0, 5}, box));
  CHECK_FALSE(vertex_check(IntegerPoint{7}, BoxDomain({0}, {10})));
}
