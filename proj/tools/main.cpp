// Experiment runner for the standard and QR-based fixed-rank Nystrom
// pipelines: approximation error sweeps, theorem verification suites, and
// factorization timing, all emitting CSV.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "nyqr/experiment.hpp"

namespace {

struct CommonOpts {
  std::string data_path;
  std::string fixture;
  long long subsample = 0;
  long long rank = 2;
  std::vector<long long> m_grid;
  int trials = 50;
  std::string selection = "uniform";
  std::vector<long long> columns;
  std::vector<std::string> methods = {"standard", "modified", "evd"};
  std::vector<std::string> norms = {"trace"};
  std::uint64_t seed = 0;
  double pinv_tol = 1e-12;
  long long dense_cap = 8000;
  long long declared_dim = 0;
  std::string out_path;
};

void add_common(CLI::App& cmd, CommonOpts& o) {
  cmd.add_option("--data", o.data_path, "LIBSVM data file");
  cmd.add_option("--fixture", o.fixture, "paper fixture name (example1, remark2)");
  cmd.add_option("--subsample", o.subsample, "subsample to N points");
  cmd.add_option("--rank", o.rank, "target rank r");
  cmd.add_option("--m-grid", o.m_grid, "landmark counts (default r,2r,...,5r)")->delimiter(',');
  cmd.add_option("--trials", o.trials, "trials per grid point");
  cmd.add_option("--selection", o.selection, "uniform|kmeans|fixed");
  cmd.add_option("--columns", o.columns, "explicit in-sample columns, 1-based (selection fixed)")->delimiter(',');
  cmd.add_option("--methods", o.methods, "subset of standard,modified,evd")->delimiter(',');
  cmd.add_option("--norms", o.norms, "subset of trace,frobenius,spectral")->delimiter(',');
  cmd.add_option("--seed", o.seed, "base RNG seed");
  cmd.add_option("--pinv-tol", o.pinv_tol, "relative pseudo-inverse cutoff");
  cmd.add_option("--dense-cap", o.dense_cap, "max n for dense kernel matrices");
  cmd.add_option("--dim", o.declared_dim, "declared dimensionality override");
  cmd.add_option("--out", o.out_path, "CSV output path (default stdout)");
}

nyqr::ExperimentConfig to_config(const CommonOpts& o) {
  nyqr::ExperimentConfig cfg;
  cfg.data_path = o.data_path;
  cfg.fixture = o.fixture;
  cfg.subsample_n = o.subsample;
  cfg.rank = o.rank;
  for (long long m : o.m_grid) cfg.m_grid.push_back(m);
  cfg.trials = o.trials;
  cfg.selection = nyqr::parse_selection(o.selection);
  for (long long c : o.columns) cfg.columns.push_back(c - 1);  // to 0-based
  if (!o.columns.empty() && o.selection == "uniform") {
    cfg.selection = nyqr::Selection::fixed;
  }
  cfg.methods.clear();
  for (const auto& m : o.methods) cfg.methods.push_back(nyqr::parse_method(m));
  cfg.norms.clear();
  for (const auto& n : o.norms) cfg.norms.push_back(nyqr::parse_norm(n));
  cfg.base_seed = o.seed;
  cfg.pinv_tol = o.pinv_tol;
  cfg.dense_cap = o.dense_cap;
  cfg.declared_dim = o.declared_dim;
  return cfg;
}

// Stream sink: --out path or stdout.
class OutSink {
 public:
  explicit OutSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw nyqr::ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-rank Nystrom approximation experiments"};
  app.require_subcommand(1);

  CommonOpts approx_opts;
  CLI::App* approx = app.add_subcommand("approx", "approximation error experiment");
  add_common(*approx, approx_opts);

  std::string suite = "thm1";
  int instances = 500;
  std::uint64_t verify_seed = 0;
  std::string verify_out;
  CLI::App* verify = app.add_subcommand("verify", "theorem/remark verification suites");
  verify->add_option("--suite", suite, "thm1|thm2|thm3|remarks");
  verify->add_option("--instances", instances, "number of random instances");
  verify->add_option("--seed", verify_seed, "base RNG seed");
  verify->add_option("--out", verify_out, "CSV output path (default stdout)");

  CommonOpts time_opts;
  CLI::App* timing = app.add_subcommand("time", "factorization wall-time comparison");
  add_common(*timing, time_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems collapse to exit code 1
  }

  try {
    if (approx->parsed()) {
      const auto result = nyqr::run_experiment(to_config(approx_opts));
      OutSink sink(approx_opts.out_path);
      nyqr::write_csv(result.records, sink.stream());
      nyqr::write_summary(result, std::cerr);
    } else if (verify->parsed()) {
      const auto report = nyqr::run_verification(suite, instances, verify_seed);
      OutSink sink(verify_out);
      nyqr::write_verification_csv(report, sink.stream());
      std::cerr << report.suite << ": " << report.passed << " passed, " << report.failed
                << " failed, worst slack " << report.worst_slack << "\n";
      if (!report.ok()) return 2;
    } else if (timing->parsed()) {
      const auto rows = nyqr::run_timing(to_config(time_opts));
      OutSink sink(time_opts.out_path);
      nyqr::write_timing_csv(rows, sink.stream());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
