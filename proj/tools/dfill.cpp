#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dfill/benchmarks.hpp"
#include "dfill/harness.hpp"
#include "dfill/records.hpp"

namespace {

using namespace dfill;

// Relative output paths land under DFILL_OUTPUT_DIR when it is set.
std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("DFILL_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p;
}

void emit(const std::vector<RunRecord>& records, const std::string& format, std::ostream& os) {
  if (format == "json") {
    write_json(os, records);
  } else {
    write_csv(os, records);
  }
}

void emit_to(const std::vector<RunRecord>& records, const std::string& format, const std::string& out) {
  if (out.empty() || out == "-") {
    emit(records, format, std::cout);
    return;
  }
  const auto path = output_path(out);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path.string() + "'");
  emit(records, format, file);
}

void add_config_options(CLI::App* cmd, SolverConfig& cfg, std::string& rounding, std::string& counting,
                        std::string& objective_min, std::string& filled_min) {
  cmd->add_option("--m", cfg.max_iterations, "outer iterations")->capture_default_str();
  cmd->add_option("--m-prime", cfg.revisit_cap, "revisit cap")->capture_default_str();
  cmd->add_option("--r-max", cfg.filled.r_max, "initial filled parameter r")->capture_default_str();
  cmd->add_option("--r-min", cfg.filled.r_min, "smallest r before giving up")->capture_default_str();
  cmd->add_option("--shrink", cfg.filled.shrink_factor, "factor applied to r")->capture_default_str();
  cmd->add_option("--rounding", rounding, "offset-floor | half-away")->capture_default_str();
  cmd->add_option("--counting", counting, "full | filled-only")->capture_default_str();
  cmd->add_option("--objective-minimizer", objective_min, "pattern | quasi-newton")->capture_default_str();
  cmd->add_option("--filled-minimizer", filled_min, "pattern | quasi-newton")->capture_default_str();
  cmd->add_option("--objective-tolerance", cfg.objective_tolerance)->capture_default_str();
  cmd->add_option("--filled-tolerance", cfg.filled_tolerance)->capture_default_str();
  cmd->add_option("--max-evaluations", cfg.max_evaluations, "evaluation budget, 0 = none")
      ->capture_default_str();
  cmd->add_flag("--check-descent", cfg.check_descent_property, "log descent-property checks");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete filled function solver for box-constrained integer problems"};
  app.require_subcommand(1);

  // run
  RunSpec spec;
  std::string rounding = to_string(spec.config.rounding);
  std::string counting = to_string(spec.config.counting);
  std::string objective_min = to_string(spec.config.objective_minimizer);
  std::string filled_min = to_string(spec.config.filled_minimizer);
  std::string run_format = "csv";
  std::string run_out;
  auto* run_cmd = app.add_subcommand("run", "solve one problem from one start");
  run_cmd->add_option("problem", spec.problem, "problem name (see `list`)")->required();
  run_cmd->add_option("-n,--dimension", spec.n, "dimension for parametric problems");
  run_cmd->add_option("-x,--start", spec.start, "start point, e.g. \"(3,3,...,3)\"")->capture_default_str();
  run_cmd->add_option("--ff", spec.config.filled_id, "filled function id")->capture_default_str();
  run_cmd->add_option("--label", spec.label, "config label in the record")->capture_default_str();
  add_config_options(run_cmd, spec.config, rounding, counting, objective_min, filled_min);
  run_cmd->add_option("--format", run_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  run_cmd->add_option("-o,--out", run_out, "output file (default stdout)");

  // matrix
  std::string matrix_file;
  std::string matrix_format = "csv";
  std::string matrix_out;
  std::string matrix_csv;
  std::string matrix_json;
  unsigned jobs = 1;
  auto* matrix_cmd = app.add_subcommand("matrix", "run a matrix of specs from a JSON file");
  matrix_cmd->add_option("config", matrix_file, "matrix file")->required()->check(CLI::ExistingFile);
  matrix_cmd->add_option("--format", matrix_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  matrix_cmd->add_option("-o,--out", matrix_out, "output file (default stdout)");
  matrix_cmd->add_option("--csv", matrix_csv, "also write CSV here");
  matrix_cmd->add_option("--json", matrix_json, "also write JSON here");
  matrix_cmd->add_option("-j,--jobs", jobs, "rows to run concurrently")->capture_default_str();

  // oracle
  std::string oracle_problem;
  std::size_t oracle_n = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive minimum of a small problem");
  oracle_cmd->add_option("problem", oracle_problem)->required();
  oracle_cmd->add_option("-n,--dimension", oracle_n, "dimension for parametric problems");

  // list
  auto* list_cmd = app.add_subcommand("list", "show the problem registry");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      spec.config.rounding = rounding_rule_from_string(rounding);
      spec.config.counting = counting_mode_from_string(counting);
      spec.config.objective_minimizer = minimizer_kind_from_string(objective_min);
      spec.config.filled_minimizer = minimizer_kind_from_string(filled_min);
      spec.config.filled.r = spec.config.filled.r_max;
      const RunRecord rec = run(spec);
      emit_to({rec}, run_format, run_out);
      if (!rec.error.empty()) std::cerr << "solver error: " << rec.error << '\n';
    } else if (*matrix_cmd) {
      const MatrixConfig matrix = load_matrix(matrix_file);
      const auto records = run_matrix(matrix, jobs);
      emit_to(records, matrix_format, matrix_out);
      if (!matrix_csv.empty()) emit_to(records, "csv", matrix_csv);
      if (!matrix_json.empty()) emit_to(records, "json", matrix_json);
      std::size_t hits = 0;
      std::size_t errors = 0;
      for (const auto& r : records) {
        hits += r.hit;
        errors += !r.error.empty();
      }
      std::cerr << "hits " << hits << "/" << records.size();
      if (errors) std::cerr << ", errors " << errors;
      std::cerr << '\n';
    } else if (*oracle_cmd) {
      const BenchmarkProblem problem = make_problem(oracle_problem, oracle_n);
      const OracleResult res = brute_force_min(problem);
      std::cout << problem.name << " n=" << problem.dimension() << " minimizer " << to_string(res.minimizer)
                << " value " << format_double(res.value) << " points " << res.points << '\n';
    } else if (*list_cmd) {
      for (const auto& p : registry()) {
        std::cout << p.name << "\t" << p.title << "\tn=" << p.dimension() << (p.parametric ? "+" : "")
                  << "\tbox=[" << p.box.lower(0) << "," << p.box.upper(0) << "]"
                  << "\tscale=" << format_double(p.scale) << "\tf*=" << format_double(p.known_value)
                  << "\tstart=" << to_string(p.default_start) << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "dfill: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
