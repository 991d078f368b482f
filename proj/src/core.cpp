#include "dfill/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace dfill {

namespace {

void require_finite(double v) {
  if (!std::isfinite(v)) throw DomainError("real point coordinate is not finite");
}

void require_same_dimension(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DomainError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

std::int64_t round_coordinate(double v, RoundingRule rule) {
  if (std::nearbyint(v) == v) return static_cast<std::int64_t>(v);
  switch (rule) {
    case RoundingRule::kOffsetFloor:
      return static_cast<std::int64_t>(std::floor(v + v / (2.0 * std::fabs(v))));
    case RoundingRule::kHalfAwayFromZero:
      return static_cast<std::int64_t>(std::round(v));
  }
  return 0;
}

}  // namespace

IntegerPoint::IntegerPoint(std::vector<value_type> coords) : coords_(std::move(coords)) {}
IntegerPoint::IntegerPoint(std::initializer_list<value_type> coords) : coords_(coords) {}

RealPoint::RealPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double v : coords_) require_finite(v);
}

RealPoint::RealPoint(std::initializer_list<double> coords) : coords_(coords) {
  for (double v : coords_) require_finite(v);
}

RealPoint::RealPoint(const IntegerPoint& p) : coords_(p.begin(), p.end()) {}

void RealPoint::set(std::size_t i, double v) {
  require_finite(v);
  coords_.at(i) = v;
}

BoxDomain::BoxDomain(std::vector<std::int64_t> lower, std::vector<std::int64_t> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw DomainError("box must have at least one coordinate");
  require_same_dimension(lower_.size(), upper_.size());
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (lower_[i] > upper_[i]) {
      throw DomainError("empty box: lower bound exceeds upper bound at coordinate " +
                        std::to_string(i));
    }
  }
}

BoxDomain BoxDomain::cube(std::size_t n, std::int64_t lo, std::int64_t hi) {
  return BoxDomain(std::vector<std::int64_t>(n, lo), std::vector<std::int64_t>(n, hi));
}

bool BoxDomain::contains(const IntegerPoint& x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  }
  return true;
}

bool BoxDomain::contains(const RealPoint& x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < static_cast<double>(lower_[i]) || x[i] > static_cast<double>(upper_[i])) {
      return false;
    }
  }
  return true;
}

RealPoint BoxDomain::clamp(const RealPoint& x) const {
  require_same_dimension(x.size(), dimension());
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::clamp(out[i], static_cast<double>(lower_[i]), static_cast<double>(upper_[i]));
  }
  return RealPoint(std::move(out));
}

std::uint64_t BoxDomain::lattice_size() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < dimension(); ++i) {
    const auto width = static_cast<std::uint64_t>(upper_[i] - lower_[i]) + 1;
    if (size > kMax / width) return kMax;
    size *= width;
  }
  return size;
}

bool BoxDomain::is_vertex(const IntegerPoint& x) const {
  if (!contains(x)) throw DomainError("vertex test on a point outside the box");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != lower_[i] && x[i] != upper_[i]) return false;
  }
  return true;
}

IntegerPoint Direction::apply(const IntegerPoint& x) const {
  IntegerPoint y = x;
  y[index] += sign;
  return y;
}

std::vector<Direction> directions(std::size_t n) {
  std::vector<Direction> out;
  out.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({i, -1});
    out.push_back({i, +1});
  }
  return out;
}

std::string to_string(RoundingRule rule) {
  switch (rule) {
    case RoundingRule::kOffsetFloor:
      return "offset-floor";
    case RoundingRule::kHalfAwayFromZero:
      return "half-away";
  }
  return "?";
}

RoundingRule rounding_rule_from_string(const std::string& s) {
  if (s == "offset-floor") return RoundingRule::kOffsetFloor;
  if (s == "half-away") return RoundingRule::kHalfAwayFromZero;
  throw ParameterError("unknown rounding rule '" + s + "' (expected offset-floor or half-away)");
}

IntegerPoint round_point(const RealPoint& x, RoundingRule rule) {
  std::vector<std::int64_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = round_coordinate(x[i], rule);
  return IntegerPoint(std::move(out));
}

std::vector<double> nearest_integer_offsets(const RealPoint& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::round(x[i]) - x[i];
  return out;
}

std::vector<IntegerPoint> neighborhood(const IntegerPoint& x, const BoxDomain& box) {
  if (!box.contains(x)) throw DomainError("point " + to_string(x) + " is outside the box");
  std::vector<IntegerPoint> out;
  out.reserve(2 * x.size() + 1);
  for (const Direction& d : directions(x.size())) {
    IntegerPoint y = d.apply(x);
    if (box.contains(y)) out.push_back(std::move(y));
  }
  out.push_back(x);
  return out;
}

std::vector<IntegerPoint> discrete_path(const IntegerPoint& from, const IntegerPoint& to,
                                        const BoxDomain& box) {
  if (!box.contains(from) || !box.contains(to)) {
    throw DomainError("path endpoints must lie in the box");
  }
  std::vector<IntegerPoint> path{from};
  IntegerPoint cur = from;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    while (cur[i] != to[i]) {
      cur[i] += cur[i] < to[i] ? 1 : -1;
      path.push_back(cur);
    }
  }
  return path;
}

bool is_discrete_path(std::span<const IntegerPoint> path, const BoxDomain& box) {
  if (path.empty()) return false;
  std::unordered_set<IntegerPoint, IntegerPointHash> seen;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (!box.contains(path[k])) return false;
    if (!seen.insert(path[k]).second) return false;
    if (k > 0) {
      std::int64_t l1 = 0;
      for (std::size_t i = 0; i < path[k].size(); ++i) {
        l1 += std::abs(path[k][i] - path[k - 1][i]);
      }
      // On the lattice, Euclidean norm 1 is the same as L1 norm 1.
      if (l1 != 1) return false;
    }
  }
  return true;
}

double Objective::operator()(const IntegerPoint& x) const {
  const RealPoint r(x);
  return value(r.coords());
}

FunctionObjective::FunctionObjective(BoxDomain box, RealFunction fn)
    : box_(std::move(box)), fn_(std::move(fn)) {}

LatticeFunction on_lattice(const Objective& f) {
  return [&f](const IntegerPoint& x) { return f(x); };
}

bool is_discrete_local_min(const LatticeFunction& f, const IntegerPoint& x, const BoxDomain& box) {
  const auto nbhd = neighborhood(x, box);
  const double fx = f(x);
  for (std::size_t k = 0; k + 1 < nbhd.size(); ++k) {
    if (f(nbhd[k]) < fx) return false;
  }
  return true;
}

bool is_discrete_local_min(const Objective& f, const IntegerPoint& x) {
  return is_discrete_local_min(on_lattice(f), x, f.box());
}

bool is_strict_discrete_local_min(const LatticeFunction& f, const IntegerPoint& x,
                                  const BoxDomain& box) {
  const auto nbhd = neighborhood(x, box);
  const double fx = f(x);
  for (std::size_t k = 0; k + 1 < nbhd.size(); ++k) {
    if (!(fx < f(nbhd[k]))) return false;
  }
  return true;
}

LatticeMinimum neighborhood_argmin(const LatticeFunction& f, const IntegerPoint& x,
                                   const BoxDomain& box) {
  auto nbhd = neighborhood(x, box);
  std::size_t best = 0;
  double best_value = f(nbhd[0]);
  for (std::size_t k = 1; k < nbhd.size(); ++k) {
    const double v = f(nbhd[k]);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  return {std::move(nbhd[best]), best_value};
}

IntegerPoint argmin_over_neighborhood(const LatticeFunction& f, const IntegerPoint& x,
                                      const BoxDomain& box) {
  return neighborhood_argmin(f, x, box).point;
}

IntegerPoint clamp_to_box(const IntegerPoint& x, const BoxDomain& box) {
  if (x.size() != box.dimension()) throw DomainError("clamp: dimension mismatch");
  IntegerPoint y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::clamp(y[i], box.lower(i), box.upper(i));
  return y;
}

IntegerPoint argmin_over_neighborhood(const Objective& f, const IntegerPoint& x) {
  return argmin_over_neighborhood(on_lattice(f), x, f.box());
}

std::string to_string(const IntegerPoint& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ')';
  return os.str();
}

std::string to_string(const RealPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ')';
  return os.str();
}

std::size_t IntegerPointHash::operator()(const IntegerPoint& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : p) {
    h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace dfill
