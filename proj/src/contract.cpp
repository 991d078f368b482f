#include <cmath>
#include <map>
#include <sstream>

#include "dfill/local_search.hpp"

namespace dfill {

std::string to_string(MinimizerKind kind) {
  switch (kind) {
    case MinimizerKind::kPatternSearch:
      return "pattern";
    case MinimizerKind::kQuasiNewton:
      return "quasi-newton";
  }
  return "?";
}

MinimizerKind minimizer_kind_from_string(const std::string& s) {
  if (s == "pattern") return MinimizerKind::kPatternSearch;
  if (s == "quasi-newton") return MinimizerKind::kQuasiNewton;
  throw ParameterError("unknown minimizer '" + s + "' (expected pattern or quasi-newton)");
}

std::unique_ptr<ContinuousMinimizer> make_minimizer(MinimizerKind kind, bool record_trace, double tolerance) {
  switch (kind) {
    case MinimizerKind::kPatternSearch: {
      PatternSearch::Options o;
      o.record_trace = record_trace;
      o.tolerance = tolerance;
      return std::make_unique<PatternSearch>(o);
    }
    case MinimizerKind::kQuasiNewton: {
      QuasiNewton::Options o;
      o.record_trace = record_trace;
      o.tolerance = tolerance;
      return std::make_unique<QuasiNewton>(o);
    }
  }
  throw ParameterError("unknown minimizer kind");
}

std::string ContractCheck::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (!deterministic) os << "non-deterministic: " << to_string(first) << " vs " << to_string(second) << "; ";
  if (!descends) os << "ascent: f(x0)=" << start_value << " < f(out)=" << result_value << "; ";
  if (ok()) os << "ok";
  return os.str();
}

ContractCheck verify_descent_contract(const ContinuousMinimizer& minimizer, const RealFunction& f,
                                      const RealPoint& x0, const BoxDomain& box) {
  ContractCheck check;
  const RealPoint start = box.clamp(x0);
  check.start_value = f(start.coords());
  const MinimizeResult a = minimizer.minimize(f, x0, box);
  const MinimizeResult b = minimizer.minimize(f, x0, box);
  check.first = a.point;
  check.second = b.point;
  check.result_value = f(a.point.coords());
  // RealPoint equality compares doubles exactly, which is the bitwise claim
  // for finite coordinates.
  check.deterministic = a.point == b.point && a.value == b.value;
  check.descends = check.result_value <= check.start_value;
  return check;
}

NeighborConvergenceProbe probe_neighbor_convergence(const ContinuousMinimizer& minimizer,
                                                    const RealFunction& f, const BoxDomain& box,
                                                    std::uint64_t max_points) {
  if (box.lattice_size() > max_points) {
    throw DomainError("probe box has " + std::to_string(box.lattice_size()) +
                      " points, limit is " + std::to_string(max_points));
  }
  std::map<IntegerPoint, RealPoint> limit;
  auto converge = [&](const IntegerPoint& p) -> const RealPoint& {
    auto it = limit.find(p);
    if (it == limit.end()) it = limit.emplace(p, minimizer.minimize(f, RealPoint(p), box).point).first;
    return it->second;
  };
  auto distance = [](const IntegerPoint& a, const RealPoint& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = static_cast<double>(a[i]) - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  };

  NeighborConvergenceProbe probe;
  const std::size_t n = box.dimension();
  IntegerPoint x{std::vector<std::int64_t>(n)};
  for (std::size_t i = 0; i < n; ++i) x[i] = box.lower(i);
  for (;;) {
    ++probe.points;
    const RealPoint target = converge(x);
    bool ok = RealPoint(x) == target;
    if (!ok) {
      const double d0 = distance(x, target);
      for (const Direction& d : directions(n)) {
        const IntegerPoint y = d.apply(x);
        if (!box.contains(y)) continue;
        if (converge(y) == target && distance(y, target) < d0) {
          ok = true;
          break;
        }
      }
    }
    probe.satisfied += ok;

    std::size_t i = n;
    while (i > 0) {
      --i;
      if (x[i] < box.upper(i)) {
        ++x[i];
        break;
      }
      x[i] = box.lower(i);
      if (i == 0) return probe;
    }
  }
}

}  // namespace dfill
