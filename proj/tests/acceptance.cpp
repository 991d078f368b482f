// Acceptance suite: one PASS/FAIL line per criterion on stdout, row details on
// stderr. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dfill/benchmarks.hpp"
#include "dfill/filled.hpp"
#include "dfill/harness.hpp"
#include "dfill/local_search.hpp"
#include "dfill/solver.hpp"

using namespace dfill;

namespace {

constexpr double kValueTolerance = 1e-9;
constexpr double kSuiteTimeLimit = 300.0;  // seconds
constexpr std::uint64_t kEvaluationLimit = 10'000'000;
constexpr std::uint64_t kOraclePointLimit = 10'000'000;
constexpr std::size_t kOracleMatchesRequired = 8;
constexpr double kSeamEps = 1e-9;
constexpr double kSeamTolerance = 1e-8;
constexpr int kLatticePoints = 1000;
constexpr int kContractStarts = 10;

const std::vector<std::string> kSuite = {"colville", "goldstein-price", "beale", "powell", "booth",
                                            "problem10", "three-hump-camel", "schaffer1", "leon", "salomon"};

struct Row {
  RunSpec spec;
  RunRecord record;
  SolveReport report;
};

int failures = 0;

void verdict(int k, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << k << ": " << what << "\n";
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

IntegerPoint random_lattice_point(const BoxDomain& box, std::mt19937_64& rng) {
  std::vector<std::int64_t> c(box.dimension());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = std::uniform_int_distribution<std::int64_t>(box.lower(i), box.upper(i))(rng);
  }
  return IntegerPoint(c);
}

RunSpec spec(const std::string& problem, std::size_t n = 0, const std::string& start = "default") {
  RunSpec s;
  s.problem = problem;
  s.n = n;
  s.start = start;
  return s;
}

// The acceptance matrix: ten-problem suite, then the scaled-down Rosenbrock and
// Rastrigin rows. Oracle rows reuse default-start rows where they coincide.
std::vector<RunSpec> acceptance_matrix() {
  std::vector<RunSpec> rows;
  for (const auto& name : kSuite) rows.push_back(spec(name));
  for (std::size_t n : {2, 5, 10}) rows.push_back(spec("rosenbrock", n, "(3,3,...,3)"));
  for (std::size_t n : {2, 5, 10}) {
    rows.push_back(spec("rastrigin", n, "(-1,-1,...,-1)"));
    rows.push_back(spec("rastrigin", n, "(-5,5,...)"));
  }
  return rows;
}

const Row* find_default_row(const std::vector<Row>& rows, const BenchmarkProblem& p) {
  for (const auto& r : rows) {
    if (r.record.problem != p.name || r.record.n != p.dimension()) continue;
    if (r.record.x0 == to_string(p.default_start)) return &r;
  }
  return nullptr;
}

}  // namespace

int main() {
  const auto specs = acceptance_matrix();
  std::vector<Row> rows;
  double suite_seconds = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    Row row{specs[i], {}, {}};
    const auto t0 = std::chrono::steady_clock::now();
    row.record = run(row.spec, &row.report);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (i < kSuite.size()) suite_seconds += dt;
    std::cerr << "  " << row.record.problem << " n=" << row.record.n << " x0=" << row.record.x0
              << " f_g=" << fmt(row.record.f_g) << " n_fu=" << row.record.n_fu
              << " n_fill=" << row.record.n_fill << " " << row.record.termination << " " << fmt(dt) << "s"
              << (row.record.error.empty() ? "" : " error: " + row.record.error) << "\n";
    rows.push_back(std::move(row));
  }

  // 1. Ten-problem suite against the reference values.
  {
    std::size_t met = 0;
    std::string missed;
    for (std::size_t i = 0; i < kSuite.size(); ++i) {
      const auto& r = rows[i];
      const auto p = make_problem(r.spec.problem);
      const double bar = std::max(p.reference_value, p.known_value) + kValueTolerance;
      if (r.record.error.empty() && r.record.f_g <= bar) {
        ++met;
      } else {
        missed += " " + p.name + "=" + fmt(r.record.f_g);
      }
    }
    const bool ok = met == kSuite.size() && suite_seconds < kSuiteTimeLimit;
    verdict(1, ok,
            "suite rows at or below reference values " + std::to_string(met) + "/" +
                std::to_string(kSuite.size()) + " in " + fmt(suite_seconds) + "s" + missed);
  }

  // 2. Rosenbrock and Rastrigin at n = 2, 5, 10.
  {
    std::size_t met = 0, total = 0;
    std::uint64_t worst = 0;
    for (const auto& r : rows) {
      if (r.spec.problem != "rosenbrock" && r.spec.problem != "rastrigin") continue;
      ++total;
      const std::uint64_t combined = r.record.n_fu + r.record.n_fill;
      worst = std::max(worst, combined);
      met += r.record.error.empty() && r.record.f_g == 0.0 && combined <= kEvaluationLimit;
    }
    verdict(2, met == total && total == 9,
            "scaled-down rows reach 0 " + std::to_string(met) + "/" + std::to_string(total) +
                ", max n_fu+n_fill " + std::to_string(worst));
  }

  // 3. Oracle equivalence on the enumerable problems.
  {
    std::size_t eligible = 0, oracle_ok = 0, solver_ok = 0;
    std::string notes;
    for (const auto& p : registry()) {
      if (p.box.lattice_size() > kOraclePointLimit) continue;
      ++eligible;
      const auto o = brute_force_min(p, std::nullopt, kOraclePointLimit);
      if (o.value == p.known_value) {
        ++oracle_ok;
      } else {
        notes += " oracle(" + p.name + ")=" + fmt(o.value);
      }
      const Row* r = find_default_row(rows, p);
      double f_g = 0.0;
      if (r) {
        f_g = r->record.f_g;
      } else {
        f_g = run(spec(p.name)).f_g;
      }
      if (f_g == o.value) {
        ++solver_ok;
      } else {
        notes += " solver(" + p.name + ")=" + fmt(f_g);
      }
    }
    verdict(3, oracle_ok == eligible && solver_ok >= kOracleMatchesRequired,
            "oracle matches known minimum " + std::to_string(oracle_ok) + "/" + std::to_string(eligible) +
                ", solver matches oracle " + std::to_string(solver_ok) + "/" + std::to_string(eligible) +
                notes);
  }

  // 4. Rounding bound on every filled minimization.
  {
    std::size_t held = 0, skipped = 0, violated = 0, zero_anchor = 0, zero_bad = 0, nonstandard_anchor = 0;
    for (const auto& r : rows) {
      for (const auto& e : r.report.trace.filled_minimizations) {
        switch (e.bound.status) {
          case BoundStatus::kHolds: ++held; break;
          case BoundStatus::kSkipped: ++skipped; break;
          case BoundStatus::kViolated: ++violated; break;
        }
        nonstandard_anchor += e.bound.anchor_value != 2.0;
        if (e.bound.anchor_zero && e.bound.status != BoundStatus::kSkipped) {
          ++zero_anchor;
          zero_bad += !(e.bound.bound == 0.25 && e.bound.sum_delta_sq < 0.25);
        }
      }
    }
    // ff4 gives F(x*) = 2 at every anchor, so the 1/4 form is also exercised
    // directly on a zero anchor.
    const auto direct = check_rounding_bound(0.0, 0.3, RealPoint{0.4, 0.0});
    const bool direct_ok = direct.anchor_zero && direct.bound == 0.25 && direct.status == BoundStatus::kHolds &&
                           check_rounding_bound(0.0, 0.3, RealPoint{0.5, 0.0}).status == BoundStatus::kViolated;
    verdict(4, violated == 0 && zero_bad == 0 && held > 0 && nonstandard_anchor == 0 && direct_ok,
            "bound held " + std::to_string(held) + ", violated " + std::to_string(violated) + ", skipped " +
                std::to_string(skipped) + ", zero-anchor 1/4 checks " + std::to_string(zero_anchor - zero_bad) +
                "/" + std::to_string(zero_anchor) + " in runs, direct 1/4 check " + (direct_ok ? "ok" : "failed"));
  }

  // 5. Piecewise pieces at their seams.
  {
    std::size_t bad = 0;
    for (double r : {1e-4, 0.1, 1.0, 10.0}) {
      bad += h_r(-r, r) != 0.0;
      bad += h_r(0.0, r) != 1.0;
      bad += !(std::fabs(h_r(-r - kSeamEps, r) - h_r(-r + kSeamEps, r)) < kSeamTolerance);
      bad += !(std::fabs(h_r(-kSeamEps, r) - h_r(kSeamEps, r)) < kSeamTolerance);
    }
    bad += h(0.5) != 0.0;
    bad += h(1.0) != 1.0;
    bad += !(std::fabs(h(0.5 - kSeamEps) - h(0.5 + kSeamEps)) < kSeamTolerance);
    bad += !(std::fabs(h(1.0 - kSeamEps) - h(1.0 + kSeamEps)) < kSeamTolerance);
    verdict(5, bad == 0, "h_r and h values and seams, " + std::to_string(bad) + " failed checks");
  }

  // 6. F_hat equals F bit for bit on the lattice.
  {
    std::mt19937_64 rng(20240601);
    std::size_t checked = 0, mismatched = 0;
    for (const auto& p : registry()) {
      const BenchmarkObjective f(p);
      const FilledFunction4 F(p.default_start, f(p.default_start), FilledFunctionParams{});
      for (int k = 0; k < kLatticePoints; ++k) {
        const RealPoint x{random_lattice_point(p.box, rng)};
        const double fx = f(x);
        ++checked;
        mismatched += augment(F, x.coords(), fx) != F.value(x.coords(), fx);
      }
    }
    verdict(6, mismatched == 0 && checked == registry().size() * kLatticePoints,
            "lattice identity on " + std::to_string(checked) + " points, " + std::to_string(mismatched) +
                " mismatches");
  }

  // 7. Minimizer contract, and the maximizer property at strict anchors.
  {
    std::mt19937_64 rng(7);
    std::size_t runs = 0, broken = 0;
    for (const auto& p : registry()) {
      const BenchmarkObjective f(p);
      const RealFunction g = [&](std::span<const double> x) { return f.value(x); };
      for (int k = 0; k < kContractStarts; ++k) {
        const RealPoint x0{random_lattice_point(p.box, rng)};
        for (auto kind : {MinimizerKind::kPatternSearch, MinimizerKind::kQuasiNewton}) {
          ++runs;
          const auto check = verify_descent_contract(*make_minimizer(kind), g, x0, p.box);
          if (!check.ok()) {
            ++broken;
            std::cerr << "  contract " << p.name << ": " << check.describe() << "\n";
          }
        }
      }
    }
    std::size_t strict = 0, checks = 0, held = 0;
    for (const auto& r : rows) {
      const auto& t = r.report.trace;
      for (const auto& e : t.maximizer_checks) {
        ++checks;
        held += e.holds;
      }
      for (const auto& e : t.local_minima) strict += e.strict;
    }
    verdict(7, broken == 0 && checks == held && checks > 0 && checks == strict,
            "A1/A2 on " + std::to_string(runs - broken) + "/" + std::to_string(runs) +
                " minimizer runs, D1 at " + std::to_string(held) + "/" + std::to_string(checks) +
                " strict anchors");
  }

  // 8. Second execution of the whole matrix.
  {
    MatrixConfig matrix;
    matrix.rows = specs;
    const auto again = run_matrix(matrix);
    std::size_t same = 0;
    for (std::size_t i = 0; i < rows.size() && i < again.size(); ++i) {
      const auto& a = rows[i].record;
      const auto& b = again[i];
      same += a.f_g == b.f_g && a.n_fu == b.n_fu && a.n_fill == b.n_fill && a.x_g == b.x_g;
    }
    verdict(8, same == rows.size() && again.size() == rows.size(),
            "identical f_g, n_fu, n_fill on rerun " + std::to_string(same) + "/" + std::to_string(rows.size()));
  }

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
