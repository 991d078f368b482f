#include "dfill/solver.hpp"

#include <unordered_map>

namespace dfill {

namespace {

EvalCounter operator-(const EvalCounter& a, const EvalCounter& b) {
  return {a.n_fu - b.n_fu, a.n_fill - b.n_fill};
}

void accumulate(EvalCounter& into, const EvalCounter& add) {
  into.n_fu += add.n_fu;
  into.n_fill += add.n_fill;
}

}  // namespace

std::string to_string(CountingMode m) {
  return m == CountingMode::kFull ? "full" : "filled-only";
}

CountingMode counting_mode_from_string(const std::string& s) {
  if (s == "full") return CountingMode::kFull;
  if (s == "filled-only") return CountingMode::kFilledOnly;
  throw ParameterError("unknown counting mode '" + s + "' (expected full or filled-only)");
}

std::string to_string(SolveTermination t) {
  switch (t) {
    case SolveTermination::kIterations:
      return "iterations";
    case SolveTermination::kRevisitCap:
      return "revisit-cap";
    case SolveTermination::kBudget:
      return "budget";
  }
  return "?";
}

SolveTermination solve_termination_from_string(const std::string& s) {
  if (s == "iterations") return SolveTermination::kIterations;
  if (s == "revisit-cap") return SolveTermination::kRevisitCap;
  if (s == "budget") return SolveTermination::kBudget;
  throw ParameterError("unknown termination '" + s + "'");
}

void SolverConfig::validate() const {
  if (max_iterations < 1) throw ParameterError("solver: m must be >= 1");
  if (revisit_cap < 1) throw ParameterError("solver: m' must be >= 1");
  if (!(objective_tolerance > 0.0) || !(filled_tolerance > 0.0)) {
    throw ParameterError("solver: minimizer tolerances must be > 0");
  }
  FilledFunctionParams p = filled;
  p.r = p.r_max;
  p.validate();
  if (!FilledRegistry::instance().contains(filled_id)) {
    throw ParameterError("solver: unknown filled function '" + filled_id + "'");
  }
}

EvalCounter SolveTrace::recorded_cost() const {
  EvalCounter total = initial_cost;
  for (const auto& e : local_minima) accumulate(total, e.cost);
  for (const auto& e : filled_minimizations) accumulate(total, e.cost);
  for (const auto& e : iterations) accumulate(total, e.cost);
  return total;
}

bool vertex_check(const IntegerPoint& x, const BoxDomain& box) { return box.is_vertex(x); }

FilledSearch::FilledSearch(const Objective& f, const SolverConfig& config)
    : f_(f),
      config_(config),
      counted_f_(f, counters_),
      objective_minimizer_(make_minimizer(config.objective_minimizer, false, config.objective_tolerance)),
      filled_minimizer_(make_minimizer(config.filled_minimizer, false, config.filled_tolerance)) {
  config_.validate();
  config_.filled.reset();
}

bool FilledSearch::budget_exhausted() const {
  return config_.max_evaluations != 0 && counters_.total() >= config_.max_evaluations;
}

LatticeMinimum FilledSearch::descend(const IntegerPoint& start) {
  const BoxDomain& box = f_.box();
  const EvalCounter before = counters_;
  const LatticeFunction f = on_lattice(counted_f_);
  const RealFunction relaxed = [this](std::span<const double> x) { return counted_f_.value(x); };

  const MinimizeResult cont = objective_minimizer_->minimize(relaxed, RealPoint(start), box);
  const IntegerPoint rounded = clamp_to_box(round_point(cont.point, config_.rounding), box);
  LatticeMinimum best = neighborhood_argmin(f, rounded, box);
  // Rounding the relaxed minimizer can land above the start; never accept
  // an anchor worse than where the descent began.
  const double f_start = f(start);
  if (f_start < best.value) best = {start, f_start};
  LatticeMinimum anchor = discrete_descent(f, best.point, box, best.value);

  LocalMinimumEvent ev;
  ev.seq = next_seq();
  ev.start = start;
  ev.anchor = anchor.point;
  ev.value = anchor.value;
  ev.strict = is_strict_discrete_local_min(on_lattice(f_), anchor.point, box);
  ev.cost = counters_ - before;
  trace_.local_minima.push_back(std::move(ev));
  return anchor;
}

double FilledSearch::augmented_uncounted(const FilledFunction& F, const IntegerPoint& x) const {
  const RealPoint p(x);
  return augment(F, p.coords(), f_(p));
}

FilledMinimizationEvent FilledSearch::minimize_filled(FilledFunction& F, std::size_t index,
                                                      const IntegerPoint& candidate) {
  const BoxDomain& box = f_.box();
  const EvalCounter before = counters_;
  const bool full = config_.counting == CountingMode::kFull;
  const RealFunction augmented = [&](std::span<const double> x) {
    ++counters_.n_fill;
    const double fx = full ? counted_f_.value(x) : f_.value(x);
    return augment(F, x, fx);
  };

  const MinimizeResult cont = filled_minimizer_->minimize(augmented, RealPoint(candidate), box);

  FilledMinimizationEvent ev;
  ev.anchor = F.anchor();
  ev.anchor_value = F.anchor_value();
  ev.candidate_index = index;
  ev.candidate = candidate;
  ev.r = F.params().r;
  ev.continuous_result = cont.point;
  ev.augmented_value = cont.value;
  ev.rounded = clamp_to_box(round_point(cont.point, config_.rounding), box);
  const LatticeMinimum next = neighborhood_argmin(on_lattice(counted_f_), ev.rounded, box);
  ev.result = next.point;
  ev.result_value = next.value;
  ev.improved = next.value < F.anchor_value();
  ev.vertex = box.is_vertex(next.point);
  ev.cost = counters_ - before;

  // Diagnostics below use the raw objective and are not counted.
  const RealPoint anchor_real(F.anchor());
  const double filled_at_anchor = F.value(anchor_real.coords(), F.anchor_value());
  const double filled_at_result = F.value(cont.point.coords(), f_(cont.point));
  ev.bound = check_rounding_bound(filled_at_anchor, filled_at_result, cont.point);

  if (config_.check_descent_property && RealPoint(candidate) != cont.point) {
    const LatticeFunction filled_lattice = [&](const IntegerPoint& x) {
      return augmented_uncounted(F, x);
    };
    if (is_discrete_local_min(filled_lattice, ev.rounded, box)) {
      const RealFunction raw = [this](std::span<const double> x) { return f_.value(x); };
      const MinimizeResult again = objective_minimizer_->minimize(raw, RealPoint(ev.rounded), box);
      const IntegerPoint landed = clamp_to_box(round_point(again.point, config_.rounding), box);
      DescentPropertyEvent check;
      check.seq = next_seq();
      check.anchor = F.anchor();
      check.rounded = ev.rounded;
      check.anchor_value = F.anchor_value();
      check.descent_value = f_(landed);
      check.holds = check.descent_value <= check.anchor_value;
      trace_.descent_checks.push_back(std::move(check));
    }
  }

  ev.seq = next_seq();
  return ev;
}

LatticeMinimum FilledSearch::run(const IntegerPoint& x0) {
  const BoxDomain& box = f_.box();
  if (!box.contains(x0)) throw DomainError("start " + to_string(x0) + " is outside the box");
  const auto& registry = FilledRegistry::instance();

  LatticeMinimum anchor = descend(x0);
  for (;;) {
    if (budget_exhausted()) return anchor;

    FilledFunctionParams params = config_.filled;
    params.reset();
    auto F = registry.make(config_.filled_id, anchor.point, anchor.value, params);

    if (trace_.local_minima.back().strict) {
      const LatticeFunction filled_lattice = [&](const IntegerPoint& x) {
        return augmented_uncounted(*F, x);
      };
      MaximizerCheckEvent check;
      check.seq = next_seq();
      check.anchor = anchor.point;
      check.r = F->params().r;
      // Strict maximizer of F_hat is strict minimizer of -F_hat.
      check.holds = is_strict_discrete_local_min(
          [&](const IntegerPoint& x) { return -filled_lattice(x); }, anchor.point, box);
      trace_.maximizer_checks.push_back(std::move(check));
    }

    auto candidates = neighborhood(anchor.point, box);
    candidates.pop_back();  // drop x* itself

    bool restarted = false;
    for (std::size_t index = 0; index < candidates.size() && !restarted; ++index) {
      F->params().reset();
      for (;;) {
        if (budget_exhausted()) return anchor;
        FilledMinimizationEvent ev = minimize_filled(*F, index, candidates[index]);
        const bool improved = ev.improved;
        const bool vertex = ev.vertex;
        const IntegerPoint next = ev.result;
        trace_.filled_minimizations.push_back(std::move(ev));

        if (improved) {
          anchor = descend(next);
          restarted = true;
          break;
        }

        ParameterAdjustmentEvent adjust;
        adjust.seq = next_seq();
        adjust.candidate_index = index;
        adjust.r_before = F->params().r;
        adjust.exhausted = !F->params().shrink();
        adjust.r_after = F->params().r;
        trace_.adjustments.push_back(adjust);
        if (adjust.exhausted || vertex) break;
      }
    }
    if (!restarted) return anchor;
  }
}

IntegerPoint generic_filled_search(const Objective& f, const IntegerPoint& x0,
                                   const SolverConfig& config, EvalCounter& counters) {
  FilledSearch search(f, config);
  const LatticeMinimum result = search.run(x0);
  accumulate(counters, search.counters());
  return result.point;
}

SolveReport solve(const Objective& f, const IntegerPoint& x0, const SolverConfig& config) {
  const BoxDomain& box = f.box();
  if (!box.contains(x0)) throw DomainError("start " + to_string(x0) + " is outside the box");
  FilledSearch search(f, config);
  EvalCounter& counters = search.counters();
  SolveTrace& trace = search.trace();

  IntegerPoint current = x0;
  IntegerPoint best = x0;
  double best_value = f(x0);
  ++counters.n_fu;
  trace.initial_cost = counters;
  // x0 itself may not be a discrete minimizer; the first inner result replaces
  // it on ties so the reported point always is one.
  bool best_from_search = false;

  std::unordered_map<IntegerPoint, std::size_t, IntegerPointHash> visits;
  SolveTermination termination = SolveTermination::kIterations;

  for (std::size_t i = 0; i < config.max_iterations; ++i) {
    if (search.budget_exhausted()) {
      termination = SolveTermination::kBudget;
      break;
    }
    const LatticeMinimum found = search.run(current);
    const EvalCounter before = counters;

    OuterIterationEvent ev;
    ev.iteration = i;
    ev.start = current;
    ev.result = found.point;
    ev.result_value = found.value;
    ev.improved = found.value < best_value;
    if (ev.improved || (!best_from_search && found.value <= best_value)) {
      best = found.point;
      best_value = found.value;
      best_from_search = true;
    }
    ev.best_value = best_value;
    const std::size_t reached = ++visits[found.point];

    if (ev.improved) {
      current = best;
    } else {
      // Least-valued neighbour not yet reached m' times; any neighbour when
      // all of them have been.
      std::optional<LatticeMinimum> pick;
      std::optional<LatticeMinimum> fallback;
      auto nbhd = neighborhood(found.point, box);
      nbhd.pop_back();
      for (auto& y : nbhd) {
        const double v = f(y);
        ++counters.n_fu;
        const auto it = visits.find(y);
        const bool fresh = it == visits.end() || it->second < config.revisit_cap;
        if (fresh && (!pick || v < pick->value)) pick = LatticeMinimum{y, v};
        if (!fallback || v < fallback->value) fallback = LatticeMinimum{y, v};
      }
      if (pick) {
        current = pick->point;
      } else if (fallback) {
        current = fallback->point;
      }
    }
    ev.next_start = current;
    ev.cost = counters - before;
    ev.seq = search.next_seq();
    trace.iterations.push_back(std::move(ev));

    if (reached > config.revisit_cap) {
      termination = SolveTermination::kRevisitCap;
      break;
    }
  }

  SolveReport report;
  report.best_point = best;
  report.best_value = best_value;
  report.counters = counters;
  report.termination = termination;
  report.trace = std::move(trace);
  return report;
}

}  // namespace dfill
