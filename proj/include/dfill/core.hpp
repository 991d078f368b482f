#pragma once

// Domain primitives for box-constrained integer optimization: lattice and
// real points, the feasible box, rounding, unit-step neighborhoods, discrete
// paths and evaluation counting.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfill {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of the integer lattice Z^n.
class IntegerPoint {
 public:
  using value_type = std::int64_t;

  IntegerPoint() = default;
  explicit IntegerPoint(std::vector<value_type> coords);
  IntegerPoint(std::initializer_list<value_type> coords);

  std::size_t size() const { return coords_.size(); }
  value_type operator[](std::size_t i) const { return coords_[i]; }
  value_type& operator[](std::size_t i) { return coords_[i]; }
  std::span<const value_type> coords() const { return coords_; }

  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  friend bool operator==(const IntegerPoint&, const IntegerPoint&) = default;
  friend auto operator<=>(const IntegerPoint&, const IntegerPoint&) = default;

 private:
  std::vector<value_type> coords_;
};

/// A point of R^n. Coordinates are always finite.
class RealPoint {
 public:
  RealPoint() = default;
  explicit RealPoint(std::vector<double> coords);
  RealPoint(std::initializer_list<double> coords);
  explicit RealPoint(const IntegerPoint& p);

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  /// Replaces one coordinate; non-finite values are rejected.
  void set(std::size_t i, double v);

  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  friend bool operator==(const RealPoint&, const RealPoint&) = default;

 private:
  std::vector<double> coords_;
};

/// X = { x in Z^n : lower_i <= x_i <= upper_i }.
class BoxDomain {
 public:
  BoxDomain(std::vector<std::int64_t> lower, std::vector<std::int64_t> upper);
  /// The cube [lo, hi]^n.
  static BoxDomain cube(std::size_t n, std::int64_t lo, std::int64_t hi);

  std::size_t dimension() const { return lower_.size(); }
  std::int64_t lower(std::size_t i) const { return lower_[i]; }
  std::int64_t upper(std::size_t i) const { return upper_[i]; }

  bool contains(const IntegerPoint& x) const;
  /// Closed-interval test with no tolerance.
  bool contains(const RealPoint& x) const;
  RealPoint clamp(const RealPoint& x) const;

  /// Number of lattice points, saturating at UINT64_MAX.
  std::uint64_t lattice_size() const;

  /// Every coordinate sits on one of its bounds.
  bool is_vertex(const IntegerPoint& x) const;

  friend bool operator==(const BoxDomain&, const BoxDomain&) = default;

 private:
  std::vector<std::int64_t> lower_;
  std::vector<std::int64_t> upper_;
};

/// One of the 2n lattice directions +-e_i.
struct Direction {
  std::size_t index;
  int sign;  // -1 or +1

  IntegerPoint apply(const IntegerPoint& x) const;
  friend bool operator==(const Direction&, const Direction&) = default;
};

/// D = {-e_1, +e_1, -e_2, +e_2, ...} in that fixed order.
std::vector<Direction> directions(std::size_t n);

enum class RoundingRule {
  // [x]_i = floor(x_i + x_i / (2|x_i|)) for non-integral x_i. For negative
  // x_i this is floor(x_i - 1/2), which lands one below the nearest integer
  // unless x_i is a half-integer.
  kOffsetFloor,
  // Nearest integer, halves away from zero.
  kHalfAwayFromZero,
};

std::string to_string(RoundingRule rule);
RoundingRule rounding_rule_from_string(const std::string& s);

IntegerPoint round_point(const RealPoint& x, RoundingRule rule = RoundingRule::kOffsetFloor);

/// Signed distance from each coordinate to its nearest integer, in [-1/2, 1/2].
std::vector<double> nearest_integer_offsets(const RealPoint& x);

/// N(x) = {x +- e_i} n X, plus x itself. Ordered -e_1, +e_1, ..., center last.
std::vector<IntegerPoint> neighborhood(const IntegerPoint& x, const BoxDomain& box);

/// Unit-step path from `from` to `to`, endpoints included, moving coordinates
/// in index order.
std::vector<IntegerPoint> discrete_path(const IntegerPoint& from, const IntegerPoint& to,
                                        const BoxDomain& box);

/// Checks feasibility, pairwise distinctness and unit Euclidean steps.
bool is_discrete_path(std::span<const IntegerPoint> path, const BoxDomain& box);

/// Evaluation counters: n_fu for the objective, n_fill for filled functions.
struct EvalCounter {
  std::uint64_t n_fu = 0;
  std::uint64_t n_fill = 0;

  std::uint64_t total() const { return n_fu + n_fill; }
  friend bool operator==(const EvalCounter&, const EvalCounter&) = default;
};

using RealFunction = std::function<double(std::span<const double>)>;

/// An objective over X that can also be evaluated on the real relaxation of X.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::size_t dimension() const = 0;
  virtual const BoxDomain& box() const = 0;
  virtual double value(std::span<const double> x) const = 0;

  double operator()(const RealPoint& x) const { return value(x.coords()); }
  double operator()(const IntegerPoint& x) const;
};

/// Wraps a plain callable as an Objective.
class FunctionObjective final : public Objective {
 public:
  FunctionObjective(BoxDomain box, RealFunction fn);
  std::size_t dimension() const override { return box_.dimension(); }
  const BoxDomain& box() const override { return box_; }
  double value(std::span<const double> x) const override { return fn_(x); }

 private:
  BoxDomain box_;
  RealFunction fn_;
};

/// Forwards to another objective and bumps counter.n_fu on every call.
class CountingObjective final : public Objective {
 public:
  CountingObjective(const Objective& inner, EvalCounter& counter)
      : inner_(inner), counter_(counter) {}
  std::size_t dimension() const override { return inner_.dimension(); }
  const BoxDomain& box() const override { return inner_.box(); }
  double value(std::span<const double> x) const override {
    ++counter_.n_fu;
    return inner_.value(x);
  }

 private:
  const Objective& inner_;
  EvalCounter& counter_;
};

using LatticeFunction = std::function<double(const IntegerPoint&)>;

/// f(x) <= f(y) for every y in N(x). Ties count as minima.
bool is_discrete_local_min(const LatticeFunction& f, const IntegerPoint& x, const BoxDomain& box);
bool is_discrete_local_min(const Objective& f, const IntegerPoint& x);

/// f(x) < f(y) for every y in N(x) other than x.
bool is_strict_discrete_local_min(const LatticeFunction& f, const IntegerPoint& x,
                                  const BoxDomain& box);

/// A point of N(x) with least f. Scans in neighborhood() order and keeps the
/// first strict improvement, so ties go to the lowest index, -e_i before +e_i,
/// and x itself only wins when every neighbor is strictly worse.
IntegerPoint argmin_over_neighborhood(const LatticeFunction& f, const IntegerPoint& x,
                                      const BoxDomain& box);

struct LatticeMinimum {
  IntegerPoint point;
  double value = 0.0;
};

/// argmin_over_neighborhood() that also returns the minimal value.
LatticeMinimum neighborhood_argmin(const LatticeFunction& f, const IntegerPoint& x,
                                   const BoxDomain& box);

/// Nearest point of the box to x.
IntegerPoint clamp_to_box(const IntegerPoint& x, const BoxDomain& box);
IntegerPoint argmin_over_neighborhood(const Objective& f, const IntegerPoint& x);

LatticeFunction on_lattice(const Objective& f);

std::string to_string(const IntegerPoint& p);
std::string to_string(const RealPoint& p);

struct IntegerPointHash {
  std::size_t operator()(const IntegerPoint& p) const noexcept;
};

}  // namespace dfill
