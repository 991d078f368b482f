#include <cmath>
#include <random>

#include "dfill/benchmarks.hpp"
#include "dfill/local_search.hpp"
#include "doctest.h"

using namespace dfill;

namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rosenbrock2(std::span<const double> x) {
  const double a = x[1] - x[0] * x[0];
  return 100.0 * a * a + (1.0 - x[0]) * (1.0 - x[0]);
}

double norm(const RealPoint& x) { return std::sqrt(sphere(x.coords())); }

// Negative control for the determinism check.
class RandomizedMinimizer final : public ContinuousMinimizer {
 public:
  MinimizeResult minimize(const RealFunction& f, const RealPoint& x0, const BoxDomain& box) const override {
    std::vector<double> x(x0.begin(), x0.end());
    x[0] += std::uniform_real_distribution<double>(-1e-3, 1e-3)(rng_);
    MinimizeResult r;
    r.point = box.clamp(RealPoint(x));
    r.value = f(r.point.coords());
    return r;
  }
  std::string_view name() const override { return "randomized"; }

 private:
  mutable std::mt19937_64 rng_{std::random_device{}()};
};

}  // namespace

TEST_CASE("both minimizers solve the sphere") {
  const auto box = BoxDomain::cube(2, -10, 10);
  for (auto kind : {MinimizerKind::kPatternSearch, MinimizerKind::kQuasiNewton}) {
    const auto m = make_minimizer(kind);
    const auto r = m->minimize(sphere, RealPoint{3.0, -2.0}, box);
    CAPTURE(m->name());
    CHECK(norm(r.point) <= 1e-6);
    CHECK(r.termination == Termination::kConverged);
  }
}

TEST_CASE("constant function returns the start") {
  const auto box = BoxDomain::cube(3, -10, 10);
  const RealFunction constant = [](std::span<const double>) { return 4.0; };
  const RealPoint x0{1.5, -2.0, 7.0};
  for (auto kind : {MinimizerKind::kPatternSearch, MinimizerKind::kQuasiNewton}) {
    const auto r = make_minimizer(kind)->minimize(constant, x0, box);
    CHECK(r.point == x0);
    CHECK(r.value == 4.0);
  }
}

TEST_CASE("continuous Rosenbrock descends") {
  const auto box = BoxDomain::cube(2, -5, 5);
  const RealPoint x0{-1.2, 1.0};
  for (auto kind : {MinimizerKind::kPatternSearch, MinimizerKind::kQuasiNewton}) {
    const auto r = make_minimizer(kind)->minimize(rosenbrock2, x0, box);
    CHECK(r.value < rosenbrock2(x0.coords()));
  }
  const auto qn = make_minimizer(MinimizerKind::kQuasiNewton)->minimize(rosenbrock2, x0, box);
  CHECK(qn.point[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(qn.point[1] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("bound constraints are respected") {
  const auto box = BoxDomain::cube(2, 1, 4);
  for (auto kind : {MinimizerKind::kPatternSearch, MinimizerKind::kQuasiNewton}) {
    const auto m = make_minimizer(kind, true);
    const auto r = m->minimize(sphere, RealPoint{3.0, 3.5}, box);
    CHECK(r.point[0] == doctest::Approx(1.0));
    CHECK(r.point[1] == doctest::Approx(1.0));
    REQUIRE(r.trace);
    for (const auto& it : r.trace->iterates) CHECK(box.contains(it));
  }
}

TEST_CASE("start outside the box is projected") {
  const auto box = BoxDomain::cube(1, 0, 2);
  const auto r = PatternSearch().minimize(sphere, RealPoint{-5.0}, box);
  CHECK(r.point == RealPoint{0.0});
}

TEST_CASE("iteration budget reports budget and still descends") {
  PatternSearch::Options o;
  o.max_iterations = 3;
  const auto box = BoxDomain::cube(2, -100, 100);
  const RealPoint x0{90.0, 90.0};
  const auto r = PatternSearch(o).minimize(sphere, x0, box);
  CHECK(r.termination == Termination::kBudget);
  CHECK(r.value <= sphere(x0.coords()));

  QuasiNewton::Options q;
  q.max_iterations = 1;
  const auto s = QuasiNewton(q).minimize(rosenbrock2, RealPoint{-1.2, 1.0}, BoxDomain::cube(2, -5, 5));
  CHECK(s.termination == Termination::kBudget);
}

TEST_CASE("invalid options are rejected") {
  PatternSearch::Options o;
  o.shrink = 1.0;
  CHECK_THROWS_AS(PatternSearch{o}, ParameterError);
  QuasiNewton::Options q;
  q.tolerance = 0.0;
  CHECK_THROWS_AS(QuasiNewton{q}, ParameterError);
  CHECK_THROWS_AS(minimizer_kind_from_string("nelder-mead"), ParameterError);
  CHECK(minimizer_kind_from_string("pattern") == MinimizerKind::kPatternSearch);
  CHECK(minimizer_kind_from_string("quasi-newton") == MinimizerKind::kQuasiNewton);
}

TEST_CASE("descent contract holds on the contract examples") {
  const auto box = BoxDomain::cube(2, -10, 10);
  CHECK(verify_descent_contract(PatternSearch(), sphere, RealPoint{3.0, -2.0}, box).ok());

  const auto beale = make_problem("beale");
  const BenchmarkObjective f(beale);
  const RealFunction g = [&](std::span<const double> x) { return f.value(x); };
  const auto check = verify_descent_contract(QuasiNewton(), g, RealPoint(beale.default_start), beale.box);
  CHECK(check.ok());
  CHECK(check.result_value <= check.start_value);
}

TEST_CASE("randomized mock fails determinism") {
  const auto box = BoxDomain::cube(2, -10, 10);
  const auto check = verify_descent_contract(RandomizedMinimizer(), sphere, RealPoint{3.0, -2.0}, box);
  CHECK_FALSE(check.deterministic);
  CHECK_FALSE(check.ok());
  CHECK(check.describe().find("non-deterministic") != std::string::npos);
}

TEST_CASE("contract across the registry from ten starts") {
  std::mt19937_64 rng(2024);
  for (const auto& name : problem_names()) {
    const auto p = make_problem(name);
    const BenchmarkObjective f(p);
    const RealFunction g = [&](std::span<const double> x) { return f.value(x); };
    for (int k = 0; k < 10; ++k) {
      std::vector<std::int64_t> c(p.dimension());
      for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = std::uniform_int_distribution<std::int64_t>(p.box.lower(i), p.box.upper(i))(rng);
      }
      const RealPoint x0{IntegerPoint(c)};
      for (auto kind : {MinimizerKind::kPatternSearch, MinimizerKind::kQuasiNewton}) {
        const auto m = make_minimizer(kind, true);
        const auto first = m->minimize(g, x0, p.box);
        const auto second = m->minimize(g, x0, p.box);
        CAPTURE(name);
        CAPTURE(m->name());
        CHECK(first.point == second.point);
        CHECK(first.value <= g(x0.coords()));
        for (const auto& it : first.trace->iterates) CHECK(p.box.contains(it));
      }
    }
  }
}

TEST_CASE("discrete steepest descent") {
  const auto booth = make_problem("booth");
  const BenchmarkObjective fb(booth);
  CHECK(steepest_descent_discrete(fb, IntegerPoint{0, 0}) == IntegerPoint{1, 3});

  const auto rast = make_problem("rastrigin", 2);
  const BenchmarkObjective fr(rast);
  const IntegerPoint x = steepest_descent_discrete(fr, IntegerPoint{1, 1});
  CHECK(is_discrete_local_min(fr, x));
  CHECK(fr(x) <= fr(IntegerPoint{1, 1}));
  CHECK(fr(IntegerPoint{1, 1}) == doctest::Approx(2.0));

  // Already at a local minimum: no move.
  CHECK(steepest_descent_discrete(fb, IntegerPoint{1, 3}) == IntegerPoint{1, 3});

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-5, 5);
  for (int k = 0; k < 200; ++k) {
    const IntegerPoint x0{u(rng), u(rng)};
    CHECK(is_discrete_local_min(fr, steepest_descent_discrete(fr, x0)));
  }
}

TEST_CASE("neighbour convergence probe reports a fraction") {
  const auto p = make_problem("booth");
  const BenchmarkObjective f(p);
  const RealFunction g = [&](std::span<const double> x) { return f.value(x); };
  const auto probe = probe_neighbor_convergence(PatternSearch(), g, p.box);
  CHECK(probe.points == p.box.lattice_size());
  CHECK(probe.satisfied <= probe.points);
  CHECK(probe.fraction() > 0.0);
  MESSAGE("pattern search neighbour-convergence fraction on Booth: " << probe.fraction());
  CHECK_THROWS(probe_neighbor_convergence(PatternSearch(), g, BoxDomain::cube(2, -500, 500), 1000));
}
