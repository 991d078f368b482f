#pragma once

// Filled functions anchored at a discrete local minimizer x*, and the sin^2
// augmentation that lets a continuous local search minimize them while
// keeping their values on the lattice.
//
// A discrete filled function F of f at x* is expected to make x* a strict
// local maximizer of F, to have no discrete local minimizers in the basin of
// x* or in any higher basin, and to have a point of every lower basin that
// minimizes F along some discrete path from x*. Only the first condition is
// checked at runtime (see solver.hpp); the other two are assumed.

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dfill/core.hpp"

namespace dfill {

struct FilledFunctionParams {
  double r = 1.0;
  double r_min = 1e-4;
  double r_max = 1.0;
  double shrink_factor = 0.1;

  /// Throws ParameterError unless 0 < r_min <= r <= r_max and shrink in (0,1).
  void validate() const;
  /// r <- r * shrink_factor. Returns false once r has dropped below r_min.
  bool shrink();
  bool exhausted() const { return r < r_min; }
  void reset() { r = r_max; }
};

/// Smoothed step: 0 for t <= -r, a cubic on (-r, 0], t + 1 for t > 0.
double h_r(double t, double r);

/// Smoothed switch: 0 for t <= 1/2, a cubic on (1/2, 1], 1 for t > 1.
double h(double t);

/// (1 / (|x - x*|^2 + 1) + 1) * h(h_r(f(x) - f(x*))), box-constrained form.
double ff4(std::span<const double> x, const IntegerPoint& anchor, double f_star, double f_at_x,
           const FilledFunctionParams& params);

/// Interface for a filled function of f anchored at x*. Implementations are
/// immutable once constructed apart from the parameter vector, which the
/// solver adjusts between minimizations.
class FilledFunction {
 public:
  FilledFunction(IntegerPoint anchor, double anchor_value, FilledFunctionParams params);
  virtual ~FilledFunction() = default;

  /// F(x*, x) given f(x).
  virtual double value(std::span<const double> x, double f_at_x) const = 0;
  virtual std::string id() const = 0;

  const IntegerPoint& anchor() const { return anchor_; }
  double anchor_value() const { return anchor_value_; }
  const FilledFunctionParams& params() const { return params_; }
  FilledFunctionParams& params() { return params_; }

 private:
  IntegerPoint anchor_;
  double anchor_value_;
  FilledFunctionParams params_;
};

class FilledFunction4 final : public FilledFunction {
 public:
  using FilledFunction::FilledFunction;
  double value(std::span<const double> x, double f_at_x) const override;
  std::string id() const override { return "ff4"; }
};

/// sum_i sin^2(pi x_i), computed from the fractional part so integral
/// coordinates contribute exactly zero.
double lattice_penalty(std::span<const double> x);

/// F_hat = F + |F| * sum_i sin^2(pi x_i). Equal to F bit-for-bit on Z^n.
double augment(double filled_value, std::span<const double> x);
double augment(const FilledFunction& F, std::span<const double> x, double f_at_x);

enum class BoundStatus { kHolds, kViolated, kSkipped };

std::string to_string(BoundStatus s);

struct BoundCheck {
  BoundStatus status = BoundStatus::kSkipped;
  bool anchor_zero = false;  // F(x*) == 0: bound is the constant 1/4
  double anchor_value = 0.0;
  double value_at_xprime = 0.0;
  double sum_delta_sq = 0.0;
  double bound = 0.0;
};

/// Rounding-error bound for the continuous minimizer x' of F_hat started next
/// to x*: sum_i delta_i^2 < (F(x*) - F(x')) / (4 |F(x')|), where delta_i is
/// the offset of x'_i to its nearest integer. Skipped when F(x') == 0.
BoundCheck check_rounding_bound(double anchor_value, double value_at_xprime,
                                const RealPoint& x_prime);

using FilledFactory =
    std::function<std::unique_ptr<FilledFunction>(IntegerPoint, double, FilledFunctionParams)>;

/// Name -> factory. Ships with "ff4"; further filled functions can be
/// registered by id.
class FilledRegistry {
 public:
  static FilledRegistry& instance();

  void add(const std::string& id, FilledFactory factory);
  bool contains(const std::string& id) const;
  std::vector<std::string> ids() const;
  std::unique_ptr<FilledFunction> make(const std::string& id, IntegerPoint anchor,
                                       double anchor_value, FilledFunctionParams params) const;

 private:
  FilledRegistry();
  std::map<std::string, FilledFactory> factories_;
};

}  // namespace dfill
