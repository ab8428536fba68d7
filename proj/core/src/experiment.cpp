#include "nyqr/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>

#include "nyqr/data_io.hpp"
#include "nyqr/landmark.hpp"
#include "nyqr/nystrom.hpp"
#include "nyqr/verify.hpp"

namespace nyqr {

std::string to_string(Selection s) {
  switch (s) {
    case Selection::uniform: return "uniform";
    case Selection::kmeans: return "kmeans";
    case Selection::fixed: return "fixed";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::standard: return "standard";
    case Method::modified: return "modified";
    case Method::evd: return "evd";
  }
  return "?";
}

std::string to_string(NormKind n) {
  switch (n) {
    case NormKind::trace: return "trace";
    case NormKind::frobenius: return "frobenius";
    case NormKind::spectral: return "spectral";
  }
  return "?";
}

Selection parse_selection(const std::string& s) {
  if (s == "uniform") return Selection::uniform;
  if (s == "kmeans") return Selection::kmeans;
  if (s == "fixed") return Selection::fixed;
  throw ConfigError("unknown selection '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "standard") return Method::standard;
  if (s == "modified") return Method::modified;
  if (s == "evd") return Method::evd;
  throw ConfigError("unknown method '" + s + "'");
}

NormKind parse_norm(const std::string& s) {
  if (s == "trace") return NormKind::trace;
  if (s == "frobenius") return NormKind::frobenius;
  if (s == "spectral") return NormKind::spectral;
  throw ConfigError("unknown norm '" + s + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-(trial, m) seed: shared across methods within a trial so comparisons
// are paired, mixed with m so each grid point draws independently.
RngSeed cell_seed(std::uint64_t base_seed, int trial, Eigen::Index m) {
  return RngSeed{splitmix64((base_seed + static_cast<std::uint64_t>(trial)) ^
                            (static_cast<std::uint64_t>(m) << 32))};
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.rank < 1) throw ConfigError("rank must be >= 1");
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.data_path.empty() == cfg.fixture.empty()) {
    throw ConfigError("exactly one of data path or fixture required");
  }
  if (cfg.methods.empty()) throw ConfigError("at least one method required");
  if (cfg.norms.empty()) throw ConfigError("at least one norm required");
  if (cfg.selection == Selection::fixed && cfg.columns.empty()) {
    throw ConfigError("selection 'fixed' requires explicit columns");
  }
  if (cfg.selection == Selection::kmeans && cfg.fixture.size() > 0) {
    throw ConfigError("kmeans selection needs point data, not a fixture");
  }
}

std::vector<Eigen::Index> effective_m_grid(const ExperimentConfig& cfg) {
  if (cfg.selection == Selection::fixed) {
    return {static_cast<Eigen::Index>(cfg.columns.size())};
  }
  if (!cfg.m_grid.empty()) {
    for (Eigen::Index m : cfg.m_grid) {
      if (m < cfg.rank) throw ConfigError("every m in the grid must be >= rank");
    }
    return cfg.m_grid;
  }
  std::vector<Eigen::Index> grid;
  for (int k = 1; k <= 5; ++k) grid.push_back(cfg.rank * k);
  return grid;
}

double rel_error_of(const MatrixNorms& diff, const MatrixNorms& base, NormKind n) {
  switch (n) {
    case NormKind::trace: return diff.trace / base.trace;
    case NormKind::frobenius: return diff.frobenius / base.frobenius;
    case NormKind::spectral: return diff.spectral / base.spectral;
  }
  return 0.0;
}

LandmarkSet draw_landmarks(const ExperimentConfig& cfg, const ExperimentInstance& inst,
                           Eigen::Index m, RngSeed seed) {
  switch (cfg.selection) {
    case Selection::uniform:
      return uniform_sample(inst.kernel.rows(), m, seed);
    case Selection::kmeans:
      return kmeans_landmarks(*inst.data, m, seed);
    case Selection::fixed:
      return LandmarkSet::in_sample(cfg.columns);
  }
  throw ConfigError("bad selection");
}

NystromPair pair_for(const ExperimentInstance& inst, const LandmarkSet& lm) {
  if (lm.kind == LandmarkSet::Kind::in_sample) {
    return sample_columns(inst.kernel, lm.indices);
  }
  return build_nystrom_pair(*inst.data, lm, inst.kernel_cfg);
}

}  // namespace

ExperimentInstance load_instance(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentInstance inst;
  if (!cfg.fixture.empty()) {
    inst.kernel = paper_fixture(cfg.fixture).matrix;
    return inst;
  }
  DataMatrix data = read_libsvm(cfg.data_path, cfg.declared_dim);
  if (cfg.subsample_n > 0 && cfg.subsample_n < data.size()) {
    data = subsample(data, cfg.subsample_n, RngSeed{cfg.base_seed});
  }
  inst.kernel_cfg.bandwidth_c = bandwidth_heuristic(data);
  inst.kernel = build_kernel_matrix(data, inst.kernel_cfg, cfg.dense_cap);
  inst.data = std::move(data);
  return inst;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const ExperimentInstance inst = load_instance(cfg);
  const std::vector<Eigen::Index> grid = effective_m_grid(cfg);
  const MatrixNorms k_norms = norms(inst.kernel);
  const Eigen::Index n = inst.kernel.rows();

  ExperimentResult result;

  // EVD baseline does not depend on landmarks; factor once.
  bool want_evd =
      std::find(cfg.methods.begin(), cfg.methods.end(), Method::evd) != cfg.methods.end();
  MatrixNorms evd_diff;
  double evd_seconds = 0.0;
  if (want_evd) {
    const auto t0 = Clock::now();
    const FixedRankFactors f = evd_baseline(inst.kernel, cfg.rank, cfg.dense_cap);
    evd_seconds = seconds_since(t0);
    evd_diff = norms(inst.kernel - reconstruct(f, n));
  }

  for (Eigen::Index m : grid) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const RngSeed seed = cell_seed(cfg.base_seed, trial, m);
      const LandmarkSet lm = draw_landmarks(cfg, inst, m, seed);
      const NystromPair pair = pair_for(inst, lm);
      for (Method method : cfg.methods) {
        MatrixNorms diff;
        double secs = 0.0;
        if (method == Method::evd) {
          diff = evd_diff;
          secs = evd_seconds;
        } else {
          const auto t0 = Clock::now();
          const FixedRankFactors f = method == Method::standard
                                         ? standard_nystrom(pair, cfg.rank, cfg.pinv_tol)
                                         : modified_nystrom(pair, cfg.rank, cfg.pinv_tol);
          secs = seconds_since(t0);
          diff = norms(inst.kernel - reconstruct(f, n));
        }
        for (NormKind norm : cfg.norms) {
          result.records.push_back({method, cfg.selection, m, trial, norm,
                                    rel_error_of(diff, k_norms, norm), secs});
        }
      }
    }
  }

  // Per-cell mean and standard deviation.
  std::map<std::tuple<int, int, Eigen::Index, int>, std::vector<double>> cells;
  for (const auto& rec : result.records) {
    cells[{static_cast<int>(rec.method), static_cast<int>(rec.selection), rec.m,
           static_cast<int>(rec.norm)}]
        .push_back(rec.rel_error);
  }
  for (const auto& [key, vals] : cells) {
    SummaryRow row{static_cast<Method>(std::get<0>(key)),
                   static_cast<Selection>(std::get<1>(key)), std::get<2>(key),
                   static_cast<NormKind>(std::get<3>(key))};
    row.count = static_cast<int>(vals.size());
    double sum = 0.0;
    for (double v : vals) sum += v;
    row.mean = sum / row.count;
    double ss = 0.0;
    for (double v : vals) ss += (v - row.mean) * (v - row.mean);
    row.stddev = vals.size() > 1 ? std::sqrt(ss / (row.count - 1)) : 0.0;
    result.summary.push_back(row);
  }
  return result;
}

std::vector<TimingRow> run_timing(const ExperimentConfig& cfg) {
  const ExperimentInstance inst = load_instance(cfg);
  const std::vector<Eigen::Index> grid = effective_m_grid(cfg);

  std::vector<TimingRow> rows;
  for (Eigen::Index m : grid) {
    std::map<int, std::vector<double>> times;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const RngSeed seed = cell_seed(cfg.base_seed, trial, m);
      const LandmarkSet lm = draw_landmarks(cfg, inst, m, seed);
      const NystromPair pair = pair_for(inst, lm);
      for (Method method : cfg.methods) {
        const auto t0 = Clock::now();
        if (method == Method::standard) {
          standard_nystrom(pair, cfg.rank, cfg.pinv_tol);
        } else if (method == Method::modified) {
          modified_nystrom(pair, cfg.rank, cfg.pinv_tol);
        } else {
          evd_baseline(inst.kernel, cfg.rank, cfg.dense_cap);
        }
        times[static_cast<int>(method)].push_back(seconds_since(t0));
      }
    }
    for (const auto& [method, vals] : times) {
      TimingRow row;
      row.method = static_cast<Method>(method);
      row.selection = cfg.selection;
      row.m = m;
      row.trials = static_cast<int>(vals.size());
      double sum = 0.0;
      for (double v : vals) sum += v;
      row.mean_seconds = sum / row.trials;
      double ss = 0.0;
      for (double v : vals) ss += (v - row.mean_seconds) * (v - row.mean_seconds);
      row.std_seconds = vals.size() > 1 ? std::sqrt(ss / (row.trials - 1)) : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

std::string fmt10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void report_row(VerificationReport& rep, int instance, bool passed, double lhs,
                double rhs, double slack) {
  passed ? ++rep.passed : ++rep.failed;
  rep.worst_slack = std::max(rep.worst_slack, slack);
  rep.csv_rows.push_back(rep.suite + "," + std::to_string(instance) + "," +
                         (passed ? "1" : "0") + "," + fmt10(lhs) + "," + fmt10(rhs) +
                         "," + fmt10(slack));
}

VerificationReport verify_thm1(int instances, std::uint64_t seed) {
  VerificationReport rep;
  rep.suite = "thm1";
  for (int i = 0; i < instances; ++i) {
    std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(i)));
    const Eigen::Index n = std::uniform_int_distribution<Eigen::Index>(5, 40)(rng);
    const Eigen::Index m =
        std::uniform_int_distribution<Eigen::Index>(2, std::min<Eigen::Index>(10, n))(rng);
    const Eigen::Index r = std::uniform_int_distribution<Eigen::Index>(1, m - 1)(rng);
    const Eigen::Index rank_hint = std::uniform_int_distribution<Eigen::Index>(1, n)(rng);
    const Eigen::MatrixXd k = random_spsd(n, rank_hint, RngSeed{rng()});
    const LandmarkSet lm = uniform_sample(n, m, RngSeed{rng()});
    const Theorem1Check chk = check_theorem1(k, lm.indices, r);
    report_row(rep, i, chk.holds, chk.trace_opt, chk.trace_nys,
               (chk.trace_opt - chk.trace_nys) / std::max(norms(k).trace, 1e-300));
  }
  return rep;
}

VerificationReport verify_thm2(int instances, std::uint64_t seed) {
  VerificationReport rep;
  rep.suite = "thm2";
  for (int i = 0; i < instances; ++i) {
    std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(i)));
    const Eigen::Index n = std::uniform_int_distribution<Eigen::Index>(6, 40)(rng);
    const Eigen::Index m2 =
        std::uniform_int_distribution<Eigen::Index>(3, std::min<Eigen::Index>(10, n))(rng);
    const Eigen::Index m1 = std::uniform_int_distribution<Eigen::Index>(2, m2 - 1)(rng);
    const Eigen::Index r = std::uniform_int_distribution<Eigen::Index>(1, m1)(rng);
    const Eigen::Index rank_hint = std::uniform_int_distribution<Eigen::Index>(1, n)(rng);
    const Eigen::MatrixXd k = random_spsd(n, rank_hint, RngSeed{rng()});
    const LandmarkSet lm = uniform_sample(n, m2, RngSeed{rng()});
    const std::vector<Eigen::Index> small(lm.indices.begin(), lm.indices.begin() + m1);
    const Theorem2Check chk = check_theorem2(k, small, lm.indices, r);
    report_row(rep, i, chk.holds, chk.err_large, chk.err_small,
               (chk.err_large - chk.err_small) / std::max(norms(k).trace, 1e-300));
  }
  return rep;
}

VerificationReport verify_thm3(int instances, std::uint64_t seed) {
  VerificationReport rep;
  rep.suite = "thm3";
  for (int i = 0; i < instances; ++i) {
    std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(i)));
    const Eigen::Index n = std::uniform_int_distribution<Eigen::Index>(20, 300)(rng);
    const Eigen::Index p = std::uniform_int_distribution<Eigen::Index>(4, 8)(rng);
    const Eigen::Index m = std::uniform_int_distribution<Eigen::Index>(2, 10)(rng);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd pts(n, p);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < p; ++b) pts(a, b) = gauss(rng);
    }
    const DataMatrix data = DataMatrix::dense(std::move(pts));
    KernelConfig kc;
    kc.bandwidth_c = bandwidth_heuristic(data);
    const Eigen::MatrixXd k = build_kernel_matrix(data, kc);
    const LandmarkSet lm = kmeans_landmarks(data, m, RngSeed{rng()});
    const NystromPair pair = build_nystrom_pair(data, lm, kc);
    const OutOfSampleDiagnostics d = theorem3_diagnostics(k, pair);
    report_row(rep, i, d.bound_holds, d.observed_rel_spec, d.bound,
               d.observed_rel_spec - d.bound);
  }
  return rep;
}

VerificationReport verify_remarks(std::uint64_t seed) {
  VerificationReport rep;
  rep.suite = "remarks";

  // Remark 1: zero off-diagonal block -> identical reconstructions.
  {
    std::mt19937_64 rng(splitmix64(seed));
    const Eigen::Index m = 4, rest = 6;
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(m + rest, m + rest);
    k.topLeftCorner(m, m) = random_spsd(m, m, RngSeed{rng()});
    k.bottomRightCorner(rest, rest) = random_spsd(rest, rest, RngSeed{rng()});
    const bool holds = check_remark1(k, m, 2);
    report_row(rep, 0, holds, holds ? 0.0 : 1.0, 0.0, 0.0);
  }

  // Remark 2: trace-norm ordering favors modified, Frobenius reverses.
  {
    const Eigen::MatrixXd k = paper_fixture("remark2").matrix;
    const NystromPair pair = sample_columns(k, {0, 1});
    const MatrixNorms d_nys = norms(k - reconstruct(standard_nystrom(pair, 1)));
    const MatrixNorms d_opt = norms(k - reconstruct(modified_nystrom(pair, 1)));
    report_row(rep, 1, d_opt.trace <= d_nys.trace, d_opt.trace, d_nys.trace,
               d_opt.trace - d_nys.trace);
    report_row(rep, 2, d_opt.frobenius > d_nys.frobenius, d_nys.frobenius,
               d_opt.frobenius, d_nys.frobenius - d_opt.frobenius);
  }

  // Remark 3: the standard method regresses when the second column is added;
  // the modified method does not.
  {
    const Eigen::MatrixXd k = paper_fixture("example1").matrix;
    const NystromPair one = sample_columns(k, {0});
    const NystromPair two = sample_columns(k, {0, 1});
    const MatrixNorms std1 = norms(k - reconstruct(standard_nystrom(one, 1)));
    const MatrixNorms std2 = norms(k - reconstruct(standard_nystrom(two, 1)));
    const MatrixNorms opt1 = norms(k - reconstruct(modified_nystrom(one, 1)));
    const MatrixNorms opt2 = norms(k - reconstruct(modified_nystrom(two, 1)));
    report_row(rep, 3, std2.trace > std1.trace && std2.frobenius > std1.frobenius,
               std1.trace, std2.trace, std1.trace - std2.trace);
    report_row(rep, 4, opt2.trace <= opt1.trace + 1e-12, opt2.trace, opt1.trace,
               opt2.trace - opt1.trace);
  }
  return rep;
}

}  // namespace

VerificationReport run_verification(const std::string& suite, int instances,
                                    std::uint64_t seed) {
  if (instances < 1) throw ConfigError("instances must be >= 1");
  if (suite == "thm1") return verify_thm1(instances, seed);
  if (suite == "thm2") return verify_thm2(instances, seed);
  if (suite == "thm3") return verify_thm3(instances, seed);
  if (suite == "remarks") return verify_remarks(seed);
  throw ConfigError("unknown suite '" + suite + "'");
}

void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  out << "method,selection,m,trial,norm,rel_error,seconds\n";
  for (const auto& r : records) {
    out << to_string(r.method) << ',' << to_string(r.selection) << ',' << r.m << ','
        << r.trial << ',' << to_string(r.norm) << ',' << fmt10(r.rel_error) << ','
        << fmt10(r.seconds) << '\n';
  }
}

void write_timing_csv(const std::vector<TimingRow>& rows, std::ostream& out) {
  out << "method,selection,m,mean_seconds,std_seconds,trials\n";
  for (const auto& r : rows) {
    out << to_string(r.method) << ',' << to_string(r.selection) << ',' << r.m << ','
        << fmt10(r.mean_seconds) << ',' << fmt10(r.std_seconds) << ',' << r.trials
        << '\n';
  }
}

void write_verification_csv(const VerificationReport& report, std::ostream& out) {
  out << "suite,instance,passed,lhs,rhs,slack\n";
  for (const auto& row : report.csv_rows) {
    out << row << '\n';
  }
}

void write_summary(const ExperimentResult& result, std::ostream& out) {
  out << "method      selection  m     norm        mean          std       trials\n";
  for (const auto& s : result.summary) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-11s %-10s %-5lld %-10s %-13.6g %-10.3g %d\n",
                  to_string(s.method).c_str(), to_string(s.selection).c_str(),
                  static_cast<long long>(s.m), to_string(s.norm).c_str(), s.mean,
                  s.stddev, s.count);
    out << buf;
  }
}

}  // namespace nyqr
