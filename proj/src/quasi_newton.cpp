#include <algorithm>
#include <cmath>
#include <utility>

#include "dfill/local_search.hpp"

namespace dfill {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Dense symmetric inverse-Hessian approximation, row-major.
class InverseHessian {
 public:
  explicit InverseHessian(std::size_t n) : n_(n), h_(n * n, 0.0) { reset(1.0); }

  void reset(double scale) {
    std::fill(h_.begin(), h_.end(), 0.0);
    for (std::size_t i = 0; i < n_; ++i) h_[i * n_ + i] = scale;
    identity_ = true;
  }

  bool is_identity() const { return identity_; }

  Vec apply(const Vec& v) const {
    Vec out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += h_[i * n_ + j] * v[j];
      out[i] = s;
    }
    return out;
  }

  // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
  void update(const Vec& s, const Vec& y) {
    const double sy = dot(s, y);
    if (identity_) reset(sy / dot(y, y));
    const double rho = 1.0 / sy;
    const Vec hy = apply(y);
    const double yhy = dot(y, hy);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        h_[i * n_ + j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
      }
    }
    identity_ = false;
  }

 private:
  std::size_t n_;
  Vec h_;
  bool identity_ = true;
};

}  // namespace

QuasiNewton::QuasiNewton(Options options) : options_(options) {
  if (!(options_.tolerance > 0.0)) throw ParameterError("quasi-newton: tolerance must be > 0");
  if (!(options_.fd_relative_step > 0.0)) {
    throw ParameterError("quasi-newton: fd_relative_step must be > 0");
  }
  if (!(options_.armijo > 0.0 && options_.armijo < 1.0)) {
    throw ParameterError("quasi-newton: armijo constant must lie in (0, 1)");
  }
}

MinimizeResult QuasiNewton::minimize(const RealFunction& f, const RealPoint& x0,
                                     const BoxDomain& box) const {
  const std::size_t n = box.dimension();
  Vec lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = static_cast<double>(box.lower(i));
    hi[i] = static_cast<double>(box.upper(i));
  }

  MinimizeResult result;
  const RealPoint start = box.clamp(x0);
  Vec x(start.begin(), start.end());
  double fx = f(x);
  result.evaluations = 1;
  if (options_.record_trace) {
    result.trace.emplace();
    result.trace->iterates.emplace_back(x);
    result.trace->values.push_back(fx);
  }

  // Central differences inside the box, one-sided against a bound.
  auto gradient = [&](const Vec& at) {
    Vec g(n), probe = at;
    for (std::size_t i = 0; i < n; ++i) {
      const double h = options_.fd_relative_step * std::max(1.0, std::fabs(at[i]));
      const double up = std::min(at[i] + h, hi[i]);
      const double down = std::max(at[i] - h, lo[i]);
      if (up == down) {
        g[i] = 0.0;
        continue;
      }
      probe[i] = up;
      const double f_up = up == at[i] ? fx : f(probe);
      probe[i] = down;
      const double f_down = down == at[i] ? fx : f(probe);
      result.evaluations += (up != at[i]) + (down != at[i]);
      probe[i] = at[i];
      g[i] = (f_up - f_down) / (up - down);
    }
    return g;
  };

  auto project_step = [&](const Vec& from, const Vec& dir, double alpha) {
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::clamp(from[i] + alpha * dir[i], lo[i], hi[i]);
    return y;
  };

  InverseHessian hinv(n);
  Vec g = gradient(x);
  Termination termination = Termination::kBudget;

  while (result.iterations < options_.max_iterations) {
    Vec pg = g;
    for (std::size_t i = 0; i < n; ++i) {
      if ((x[i] <= lo[i] && g[i] > 0.0) || (x[i] >= hi[i] && g[i] < 0.0)) pg[i] = 0.0;
    }
    double pg_norm = 0.0;
    for (double v : pg) pg_norm = std::max(pg_norm, std::fabs(v));
    if (pg_norm < options_.tolerance) {
      termination = Termination::kConverged;
      break;
    }

    Vec d = hinv.apply(pg);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = pg[i] == 0.0 ? 0.0 : -d[i];
    }
    if (!(dot(d, pg) < 0.0)) {
      hinv.reset(1.0);
      for (std::size_t i = 0; i < n; ++i) d[i] = -pg[i];
    }
    if (hinv.is_identity()) {
      // Keep the first unscaled step on the order of the box size.
      double dmax = 0.0;
      for (double v : d) dmax = std::max(dmax, std::fabs(v));
      double width = 0.0;
      for (std::size_t i = 0; i < n; ++i) width = std::max(width, hi[i] - lo[i]);
      if (dmax > width) {
        for (double& v : d) v *= width / dmax;
      }
    }

    bool accepted = false;
    Vec y;
    double fy = fx;
    double alpha = 1.0;
    for (std::size_t k = 0; k < options_.max_backtracks; ++k, alpha *= 0.5) {
      y = project_step(x, d, alpha);
      if (y == x) break;
      Vec s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = y[i] - x[i];
      fy = f(y);
      ++result.evaluations;
      if (fy < fx && fy <= fx + options_.armijo * dot(g, s)) {
        accepted = true;
        break;
      }
    }
    ++result.iterations;

    if (!accepted) {
      if (hinv.is_identity()) {
        termination = Termination::kStalled;
        break;
      }
      hinv.reset(1.0);
      continue;
    }

    Vec s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = y[i] - x[i];
    x = std::move(y);
    fx = fy;
    if (options_.record_trace) {
      result.trace->iterates.emplace_back(x);
      result.trace->values.push_back(fx);
    }
    const Vec g_new = gradient(x);
    Vec dg(n);
    for (std::size_t i = 0; i < n; ++i) dg[i] = g_new[i] - g[i];
    const double sy = dot(s, dg);
    if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(dg, dg))) hinv.update(s, dg);
    g = g_new;
  }

  result.point = RealPoint(std::move(x));
  result.value = fx;
  result.termination = termination;
  if (result.trace) result.trace->termination = termination;
  return result;
}

}  // namespace dfill
