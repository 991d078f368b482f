#include <algorithm>
#include <cmath>
#include <utility>

#include "dfill/local_search.hpp"

namespace dfill {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kStalled:
      return "stalled";
    case Termination::kBudget:
      return "budget";
  }
  return "?";
}

PatternSearch::PatternSearch(Options options) : options_(options) {
  if (!(options_.initial_step > 0.0)) throw ParameterError("pattern search: initial_step must be > 0");
  if (!(options_.shrink > 0.0 && options_.shrink < 1.0)) {
    throw ParameterError("pattern search: shrink must lie in (0, 1)");
  }
  if (!(options_.expand >= 1.0)) throw ParameterError("pattern search: expand must be >= 1");
  if (!(options_.tolerance > 0.0)) throw ParameterError("pattern search: tolerance must be > 0");
}

MinimizeResult PatternSearch::minimize(const RealFunction& f, const RealPoint& x0,
                                       const BoxDomain& box) const {
  const std::size_t n = box.dimension();
  const RealPoint start = box.clamp(x0);
  std::vector<double> x(start.begin(), start.end());
  double fx = f(x);

  MinimizeResult result;
  result.evaluations = 1;
  if (options_.record_trace) {
    result.trace.emplace();
    result.trace->iterates.emplace_back(x);
    result.trace->values.push_back(fx);
  }

  double step = options_.initial_step;
  std::vector<double> trial(n);
  std::vector<double> best(n);
  Termination termination = Termination::kBudget;

  for (; result.iterations < options_.max_iterations; ++result.iterations) {
    double best_value = fx;
    bool improved = false;
    bool any_move = false;
    if (options_.poll == Poll::kExploratory) best = x;
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = static_cast<double>(box.lower(i));
      const double hi = static_cast<double>(box.upper(i));
      const std::vector<double>& base = options_.poll == Poll::kExploratory ? best : x;
      for (int sign : {-1, +1}) {
        trial = base;
        trial[i] = std::clamp(base[i] + sign * step, lo, hi);
        if (trial[i] == base[i]) continue;
        any_move = true;
        const double v = f(trial);
        ++result.evaluations;
        if (v < best_value) {
          best_value = v;
          best = trial;
          improved = true;
          if (options_.poll == Poll::kExploratory) break;
        }
      }
    }
    if (improved) {
      x.swap(best);
      fx = best_value;
      step *= options_.expand;
      if (options_.record_trace) {
        result.trace->iterates.emplace_back(x);
        result.trace->values.push_back(fx);
      }
      continue;
    }
    if (!any_move) {
      termination = Termination::kStalled;
      break;
    }
    step *= options_.shrink;
    if (step < options_.tolerance) {
      termination = Termination::kConverged;
      break;
    }
  }

  result.point = RealPoint(std::move(x));
  result.value = fx;
  result.termination = termination;
  if (result.trace) result.trace->termination = termination;
  return result;
}

}  // namespace dfill
