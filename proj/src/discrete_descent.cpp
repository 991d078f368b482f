#include "dfill/local_search.hpp"

namespace dfill {

LatticeMinimum discrete_descent(const LatticeFunction& f, const IntegerPoint& x0,
                                const BoxDomain& box, std::optional<double> x0_value) {
  if (!box.contains(x0)) throw DomainError("descent start " + to_string(x0) + " is outside the box");
  IntegerPoint x = x0;
  double fx = x0_value ? *x0_value : f(x);
  // f strictly decreases on a finite set, so this terminates.
  for (;;) {
    const auto nbhd = neighborhood(x, box);
    std::size_t best = nbhd.size() - 1;
    double best_value = fx;
    for (std::size_t k = 0; k + 1 < nbhd.size(); ++k) {
      const double v = f(nbhd[k]);
      if (v < best_value) {
        best_value = v;
        best = k;
      }
    }
    if (best == nbhd.size() - 1) return {std::move(x), fx};
    x = nbhd[best];
    fx = best_value;
  }
}

IntegerPoint steepest_descent_discrete(const LatticeFunction& f, const IntegerPoint& x0,
                                       const BoxDomain& box) {
  return discrete_descent(f, x0, box).point;
}

IntegerPoint steepest_descent_discrete(const Objective& f, const IntegerPoint& x0) {
  return steepest_descent_discrete(on_lattice(f), x0, f.box());
}

}  // namespace dfill
