#include "dfill/filled.hpp"

#include <cmath>
#include <numbers>

namespace dfill {

void FilledFunctionParams::validate() const {
  if (!(r_min > 0.0)) throw ParameterError("filled params: r_min must be > 0");
  if (!(r_min <= r_max)) throw ParameterError("filled params: r_min must not exceed r_max");
  if (!(r >= r_min && r <= r_max)) throw ParameterError("filled params: r must lie in [r_min, r_max]");
  if (!(shrink_factor > 0.0 && shrink_factor < 1.0)) {
    throw ParameterError("filled params: shrink_factor must lie in (0, 1)");
  }
}

bool FilledFunctionParams::shrink() {
  r *= shrink_factor;
  return !exhausted();
}

double h_r(double t, double r) {
  if (!(r > 0.0)) throw ParameterError("h_r: r must be > 0");
  if (t <= -r) return 0.0;
  if (t <= 0.0) {
    const double a = (r - 2.0) / (r * r * r);
    const double b = (2.0 * r - 3.0) / (r * r);
    return ((a * t + b) * t + 1.0) * t + 1.0;
  }
  return t + 1.0;
}

double h(double t) {
  if (t <= 0.5) return 0.0;
  if (t <= 1.0) return ((-16.0 * t + 36.0) * t - 24.0) * t + 5.0;
  return 1.0;
}

double ff4(std::span<const double> x, const IntegerPoint& anchor, double f_star, double f_at_x,
           const FilledFunctionParams& params) {
  const double switch_value = h(h_r(f_at_x - f_star, params.r));
  if (switch_value == 0.0) return 0.0;
  double dist_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - static_cast<double>(anchor[i]);
    dist_sq += d * d;
  }
  return (1.0 / (dist_sq + 1.0) + 1.0) * switch_value;
}

FilledFunction::FilledFunction(IntegerPoint anchor, double anchor_value, FilledFunctionParams params)
    : anchor_(std::move(anchor)), anchor_value_(anchor_value), params_(params) {
  params_.validate();
}

double FilledFunction4::value(std::span<const double> x, double f_at_x) const {
  return ff4(x, anchor(), anchor_value(), f_at_x, params());
}

double lattice_penalty(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    const double frac = v - std::round(v);
    if (frac == 0.0) continue;
    const double sv = std::sin(std::numbers::pi * frac);
    s += sv * sv;
  }
  return s;
}

double augment(double filled_value, std::span<const double> x) {
  const double penalty = lattice_penalty(x);
  if (penalty == 0.0) return filled_value;
  return filled_value + std::fabs(filled_value) * penalty;
}

double augment(const FilledFunction& F, std::span<const double> x, double f_at_x) {
  return augment(F.value(x, f_at_x), x);
}

std::string to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::kHolds:
      return "holds";
    case BoundStatus::kViolated:
      return "violated";
    case BoundStatus::kSkipped:
      return "skipped";
  }
  return "?";
}

BoundCheck check_rounding_bound(double anchor_value, double value_at_xprime,
                                const RealPoint& x_prime) {
  BoundCheck check;
  check.anchor_value = anchor_value;
  check.value_at_xprime = value_at_xprime;
  check.anchor_zero = anchor_value == 0.0;
  for (double d : nearest_integer_offsets(x_prime)) check.sum_delta_sq += d * d;
  if (value_at_xprime == 0.0) {
    check.status = BoundStatus::kSkipped;
    return check;
  }
  check.bound = check.anchor_zero
                    ? 0.25
                    : (anchor_value - value_at_xprime) / (4.0 * std::fabs(value_at_xprime));
  check.status = check.sum_delta_sq < check.bound ? BoundStatus::kHolds : BoundStatus::kViolated;
  return check;
}

FilledRegistry& FilledRegistry::instance() {
  static FilledRegistry registry;
  return registry;
}

FilledRegistry::FilledRegistry() {
  add("ff4", [](IntegerPoint anchor, double value, FilledFunctionParams params) {
    return std::make_unique<FilledFunction4>(std::move(anchor), value, params);
  });
}

void FilledRegistry::add(const std::string& id, FilledFactory factory) {
  factories_[id] = std::move(factory);
}

bool FilledRegistry::contains(const std::string& id) const { return factories_.contains(id); }

std::vector<std::string> FilledRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : factories_) out.push_back(id);
  return out;
}

std::unique_ptr<FilledFunction> FilledRegistry::make(const std::string& id, IntegerPoint anchor,
                                                     double anchor_value,
                                                     FilledFunctionParams params) const {
  const auto it = factories_.find(id);
  if (it == factories_.end()) throw ParameterError("unknown filled function '" + id + "'");
  return it->second(std::move(anchor), anchor_value, params);
}

}  // namespace dfill
