#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nyqr/data_matrix.hpp"
#include "nyqr/kernel.hpp"

namespace nyqr {

enum class Selection { uniform, kmeans, fixed };
enum class Method { standard, modified, evd };
enum class NormKind { trace, frobenius, spectral };

std::string to_string(Selection s);
std::string to_string(Method m);
std::string to_string(NormKind n);
Selection parse_selection(const std::string& s);
Method parse_method(const std::string& s);
NormKind parse_norm(const std::string& s);

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string data_path;   // LIBSVM file, or
  std::string fixture;     // paper fixture name
  Eigen::Index subsample_n = 0;  // 0 = use all points
  Eigen::Index declared_dim = 0;
  Eigen::Index rank = 2;
  std::vector<Eigen::Index> m_grid;  // default r, 2r, ..., 5r
  int trials = 50;
  Selection selection = Selection::uniform;
  std::vector<Eigen::Index> columns;  // explicit in-sample columns (selection=fixed)
  std::vector<Method> methods = {Method::standard, Method::modified, Method::evd};
  std::vector<NormKind> norms = {NormKind::trace};
  std::uint64_t base_seed = 0;
  double pinv_tol = 1e-12;
  Eigen::Index dense_cap = 8000;
};

struct ExperimentRecord {
  Method method = Method::standard;
  Selection selection = Selection::uniform;
  Eigen::Index m = 0;
  int trial = 0;
  NormKind norm = NormKind::trace;
  double rel_error = 0.0;
  double seconds = 0.0;  // factorization wall time only
};

struct SummaryRow {
  Method method;
  Selection selection;
  Eigen::Index m;
  NormKind norm;
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::vector<SummaryRow> summary;
};

struct TimingRow {
  Method method;
  Selection selection;
  Eigen::Index m;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
  int trials = 0;
};

/// Kernel matrix plus (for file-backed configs) the underlying data.
struct ExperimentInstance {
  Eigen::MatrixXd kernel;
  std::optional<DataMatrix> data;
  KernelConfig kernel_cfg;
};

ExperimentInstance load_instance(const ExperimentConfig& cfg);

/// One record per (method, selection, m, trial, norm); trial t draws landmarks
/// from a seed derived from base_seed + t (shared across methods, mixed with m
/// so grids are drawn independently per m).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Factorization wall time per (method, m), averaged over trials. No error
/// metrics are computed.
std::vector<TimingRow> run_timing(const ExperimentConfig& cfg);

struct VerificationReport {
  std::string suite;
  int passed = 0;
  int failed = 0;
  double worst_slack = 0.0;  // most adverse signed margin seen
  std::vector<std::string> csv_rows;  // suite,instance,passed,lhs,rhs,slack
  bool ok() const { return failed == 0; }
};

/// suite in {thm1, thm2, thm3, remarks}.
VerificationReport run_verification(const std::string& suite, int instances,
                                    std::uint64_t seed);

void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);
void write_timing_csv(const std::vector<TimingRow>& rows, std::ostream& out);
void write_verification_csv(const VerificationReport& report, std::ostream& out);
void write_summary(const ExperimentResult& result, std::ostream& out);

}  // namespace nyqr
