#include "dfill/benchmarks.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace dfill {

namespace {

using Span = std::span<const double>;

IntegerPoint filled(std::size_t n, std::int64_t v) { return IntegerPoint(std::vector<std::int64_t>(n, v)); }

IntegerPoint alternating(std::size_t n, std::int64_t first, std::int64_t second) {
  std::vector<std::int64_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = i % 2 == 0 ? first : second;
  return IntegerPoint(std::move(c));
}

double rosenbrock(Span x) {
  // Sum over i < n so that x_{i+1} exists.
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double rastrigin(Span x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  return s;
}

double colville(Span x) {
  const double a = x[1] - x[0] * x[0];
  const double b = x[3] - x[2] * x[2];
  return 100.0 * a * a + (1.0 - x[0]) * (1.0 - x[0]) + 90.0 * b * b + (1.0 - x[2]) * (1.0 - x[2]) +
         10.1 * ((x[1] - 1.0) * (x[1] - 1.0) + (x[3] - 1.0) * (x[3] - 1.0)) +
         19.8 * (x[1] - 1.0) * (x[3] - 1.0);
}

double goldstein_price(Span v) {
  const double x = v[0], y = v[1];
  const double a = x + y + 1.0;
  const double b = 2.0 * x - 3.0 * y;
  return (1.0 + a * a * (19.0 - 14.0 * x + 3.0 * x * x - 14.0 * y + 6.0 * x * y + 3.0 * y * y)) *
         (30.0 + b * b * (18.0 - 32.0 * x + 12.0 * x * x + 48.0 * y - 36.0 * x * y + 27.0 * y * y));
}

double beale(Span v) {
  const double x = v[0], y = v[1];
  const double a = 1.5 - x + x * y;
  const double b = 2.25 - x + x * y * y;
  const double c = 2.625 - x + x * y * y * y;
  return a * a + b * b + c * c;
}

double powell_singular(Span x) {
  const double a = x[0] + 10.0 * x[1];
  const double b = x[2] - x[3];
  const double c = x[1] - 2.0 * x[2];
  const double d = x[0] - x[3];
  return a * a + 5.0 * b * b + c * c * c * c + 10.0 * d * d * d * d;
}

double booth(Span x) {
  const double a = x[0] + 2.0 * x[1] - 7.0;
  const double b = 2.0 * x[0] + x[1] - 5.0;
  return a * a + b * b;
}

double problem10(Span x) {
  const double n = static_cast<double>(x.size());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double t = x[i] * x[i] - x[i + 1];
    s += (n - static_cast<double>(i + 1)) * t * t;
  }
  return (x[0] - 1.0) * (x[0] - 1.0) + (x[1] - 1.0) * (x[1] - 1.0) + n * s;
}

double three_hump_camel(Span v) {
  const double x = v[0], y = v[1];
  const double x2 = x * x;
  return 2.0 * x2 - 1.05 * x2 * x2 + x2 * x2 * x2 / 6.0 + x * y + y * y;
}

double schaffer1(Span v) {
  // sin^2 of the squared radius squared: sin^2((x^2 + y^2)^2).
  const double r2 = v[0] * v[0] + v[1] * v[1];
  const double s = std::sin(r2 * r2);
  const double d = 1.0 + 0.001 * r2;
  return 0.5 + (s * s - 0.5) / (d * d);
}

double leon(Span v) {
  const double a = v[1] - v[0] * v[0] * v[0];
  return 100.0 * a * a + (1.0 - v[0]) * (1.0 - v[0]);
}

double salomon(Span x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double r = std::sqrt(r2);
  return 1.0 - std::cos(2.0 * std::numbers::pi * r) + 0.1 * r;
}

BenchmarkProblem build(const std::string& name, std::size_t n) {
  BenchmarkProblem p{.name = name,
                     .title = {},
                     .parametric = false,
                     .box = BoxDomain::cube(2, 0, 0),
                     .scale = 1.0,
                     .formula = {},
                     .known_minimizers = {},
                     .known_value = 0.0,
                     .default_start = {},
                     .reference_value = 0.0};
  auto fixed = [&](std::size_t dim) {
    if (n != 0 && n != dim) {
      throw ParameterError("problem '" + name + "' has fixed dimension " + std::to_string(dim));
    }
    return dim;
  };
  auto variable = [&](std::size_t min_dim) {
    const std::size_t dim = n == 0 ? 2 : n;
    if (dim < min_dim) {
      throw ParameterError("problem '" + name + "' needs n >= " + std::to_string(min_dim));
    }
    p.parametric = true;
    return dim;
  };

  if (name == "rosenbrock") {
    const auto d = variable(2);
    p.title = "Rosenbrock";
    p.box = BoxDomain::cube(d, -5, 5);
    p.formula = rosenbrock;
    p.known_minimizers = {filled(d, 1)};
    p.default_start = filled(d, 3);
  } else if (name == "rastrigin") {
    const auto d = variable(1);
    p.title = "Rastrigin";
    p.box = BoxDomain::cube(d, -5, 5);
    p.formula = rastrigin;
    p.known_minimizers = {filled(d, 0)};
    p.default_start = filled(d, -1);
  } else if (name == "colville") {
    fixed(4);
    p.title = "Colville";
    p.box = BoxDomain::cube(4, -10, 10);
    p.formula = colville;
    p.known_minimizers = {filled(4, 1)};
    p.default_start = filled(4, 0);
  } else if (name == "goldstein-price") {
    fixed(2);
    p.title = "Goldstein and Price";
    p.box = BoxDomain::cube(2, -2000, 2000);
    p.scale = 1000.0;
    p.formula = goldstein_price;
    p.known_minimizers = {IntegerPoint{0, -1000}};
    p.known_value = 3.0;
    p.default_start = IntegerPoint{1000, -1000};
    p.reference_value = 3.0;
  } else if (name == "beale") {
    fixed(2);
    p.title = "Beale";
    p.box = BoxDomain::cube(2, -10000, 10000);
    p.scale = 1000.0;
    p.formula = beale;
    p.known_minimizers = {IntegerPoint{3000, 500}};
    p.default_start = IntegerPoint{0, 0};
  } else if (name == "powell") {
    fixed(4);
    p.title = "Powell singular";
    p.box = BoxDomain::cube(4, -10000, 10000);
    p.scale = 1000.0;
    p.formula = powell_singular;
    p.known_minimizers = {filled(4, 0)};
    p.default_start = alternating(4, 10000, -10000);
  } else if (name == "booth") {
    fixed(2);
    p.title = "Booth";
    p.box = BoxDomain::cube(2, -10, 10);
    p.formula = booth;
    p.known_minimizers = {IntegerPoint{1, 3}};
    p.default_start = IntegerPoint{0, 0};
  } else if (name == "problem10") {
    fixed(25);
    p.title = "Problem 10";
    p.box = BoxDomain::cube(25, -5, 5);
    p.formula = problem10;
    p.known_minimizers = {filled(25, 1)};
    p.default_start = filled(25, 2);
  } else if (name == "three-hump-camel") {
    fixed(2);
    p.title = "Three-Hump Camel";
    p.box = BoxDomain::cube(2, -5, 5);
    p.formula = three_hump_camel;
    p.known_minimizers = {IntegerPoint{0, 0}};
    p.default_start = IntegerPoint{2, 2};
    p.reference_value = 0.866667;
  } else if (name == "schaffer1") {
    fixed(2);
    p.title = "Schaffer N. 1";
    p.box = BoxDomain::cube(2, -100, 100);
    p.formula = schaffer1;
    p.known_minimizers = {IntegerPoint{0, 0}};
    p.default_start = IntegerPoint{-50, 50};
    p.reference_value = 0.487382;
  } else if (name == "leon") {
    fixed(2);
    p.title = "Leon";
    p.box = BoxDomain::cube(2, 0, 10);
    p.formula = leon;
    p.known_minimizers = {IntegerPoint{1, 1}};
    p.default_start = IntegerPoint{10, 10};
  } else if (name == "salomon") {
    const auto d = variable(1);
    p.title = "Salomon";
    p.box = BoxDomain::cube(d, -100, 100);
    p.formula = salomon;
    p.known_minimizers = {filled(d, 0)};
    p.default_start = alternating(d, -100, 100);
  } else {
    throw ParameterError("unknown problem '" + name + "'");
  }
  return p;
}

}  // namespace

double BenchmarkObjective::value(std::span<const double> z) const {
  if (problem_.scale == 1.0) return problem_.formula(z);
  double buf[32];
  std::vector<double> heap;
  double* x = buf;
  if (z.size() > 32) {
    heap.resize(z.size());
    x = heap.data();
  }
  for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i] / problem_.scale;
  return problem_.formula(std::span<const double>(x, z.size()));
}

std::vector<std::string> problem_names() {
  return {"rosenbrock", "rastrigin",        "colville",  "goldstein-price",
          "beale",      "powell",           "booth",     "problem10",
          "three-hump-camel", "schaffer1", "leon",      "salomon"};
}

const std::vector<BenchmarkProblem>& registry() {
  static const std::vector<BenchmarkProblem> problems = [] {
    std::vector<BenchmarkProblem> out;
    for (const auto& name : problem_names()) out.push_back(build(name, 0));
    return out;
  }();
  return problems;
}

BenchmarkProblem make_problem(const std::string& name, std::size_t n) { return build(name, n); }

double evaluate(const BenchmarkProblem& problem, const IntegerPoint& z) {
  if (!problem.box.contains(z)) {
    throw DomainError(to_string(z) + " is outside the box of '" + problem.name + "'");
  }
  return BenchmarkObjective(problem)(z);
}

double evaluate(const BenchmarkProblem& problem, const RealPoint& z) {
  if (!problem.box.contains(z)) {
    throw DomainError(to_string(z) + " is outside the box of '" + problem.name + "'");
  }
  return BenchmarkObjective(problem)(z);
}

OracleResult brute_force_min(const BenchmarkProblem& problem, const std::optional<BoxDomain>& box,
                             std::uint64_t limit) {
  const BoxDomain& b = box ? *box : problem.box;
  if (b.dimension() != problem.dimension()) throw DomainError("oracle box has the wrong dimension");
  const std::uint64_t size = b.lattice_size();
  if (size > limit) {
    double estimate = 1.0;
    for (std::size_t i = 0; i < b.dimension(); ++i) estimate *= static_cast<double>(b.upper(i) - b.lower(i) + 1);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", estimate);
    throw DomainError("refusing to enumerate about " + std::string(buf) + " points of '" + problem.name +
                      "' (limit " + std::to_string(limit) + ")");
  }
  const BenchmarkObjective f(problem);
  const std::size_t n = b.dimension();
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = static_cast<double>(b.lower(i));

  OracleResult best;
  best.value = f.value(z);
  best.minimizer = round_point(RealPoint(z));
  best.points = size;
  // Lexicographic odometer, last coordinate fastest; only strict improvements
  // replace the incumbent.
  for (;;) {
    std::size_t i = n;
    bool done = true;
    while (i > 0) {
      --i;
      if (z[i] < static_cast<double>(b.upper(i))) {
        z[i] += 1.0;
        done = false;
        break;
      }
      z[i] = static_cast<double>(b.lower(i));
    }
    if (done) break;
    const double v = f.value(z);
    if (v < best.value) {
      best.value = v;
      best.minimizer = round_point(RealPoint(z));
    }
  }
  return best;
}

}  // namespace dfill
