#include <doctest.h>

#include <map>
#include <sstream>

#include "nyqr/experiment.hpp"

namespace {

nyqr::ExperimentConfig fixture_config() {
  nyqr::ExperimentConfig cfg;
  cfg.fixture = "example1";
  cfg.rank = 1;
  cfg.selection = nyqr::Selection::fixed;
  cfg.columns = {0, 1};
  cfg.m_grid = {2};
  cfg.trials = 1;
  cfg.norms = {nyqr::NormKind::trace, nyqr::NormKind::frobenius};
  return cfg;
}

}  // namespace

TEST_CASE("enum names round trip") {
  for (auto s : {nyqr::Selection::uniform, nyqr::Selection::kmeans,
                 nyqr::Selection::fixed})
    CHECK(nyqr::parse_selection(nyqr::to_string(s)) == s);
  for (auto m : {nyqr::Method::standard, nyqr::Method::modified, nyqr::Method::evd})
    CHECK(nyqr::parse_method(nyqr::to_string(m)) == m);
  for (auto n : {nyqr::NormKind::trace, nyqr::NormKind::frobenius,
                 nyqr::NormKind::spectral})
    CHECK(nyqr::parse_norm(nyqr::to_string(n)) == n);
  CHECK_THROWS_AS(nyqr::parse_method("qr"), nyqr::ConfigError);
  CHECK_THROWS_AS(nyqr::parse_selection(""), nyqr::ConfigError);
  CHECK_THROWS_AS(nyqr::parse_norm("nuclear!"), nyqr::ConfigError);
}

TEST_CASE("invalid configurations are rejected before any work") {
  auto cfg = fixture_config();
  cfg.rank = 0;
  CHECK_THROWS_AS(nyqr::run_experiment(cfg), nyqr::ConfigError);

  cfg = fixture_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(nyqr::run_experiment(cfg), nyqr::ConfigError);

  cfg = fixture_config();
  cfg.data_path = "somewhere.libsvm";
  CHECK_THROWS_AS(nyqr::run_experiment(cfg), nyqr::ConfigError);

  cfg = fixture_config();
  cfg.selection = nyqr::Selection::uniform;
  cfg.columns.clear();
  cfg.m_grid = {0};  // below the target rank
  CHECK_THROWS_AS(nyqr::run_experiment(cfg), nyqr::ConfigError);

  cfg = fixture_config();
  cfg.selection = nyqr::Selection::fixed;
  cfg.columns.clear();  // fixed selection with no columns
  CHECK_THROWS_AS(nyqr::run_experiment(cfg), nyqr::ConfigError);

  cfg = nyqr::ExperimentConfig{};  // neither a fixture nor a data file
  CHECK_THROWS_AS(nyqr::run_experiment(cfg), nyqr::ConfigError);
}

TEST_CASE("the worked example flows through the experiment driver") {
  const auto result = nyqr::run_experiment(fixture_config());
  // 3 methods x 1 m x 1 trial x 2 norms.
  REQUIRE(result.records.size() == 6);
  std::map<std::pair<nyqr::Method, nyqr::NormKind>, double> err;
  for (const auto& rec : result.records) {
    CHECK(rec.m == 2);
    CHECK(rec.trial == 0);
    CHECK(rec.seconds >= 0.0);
    err[{rec.method, rec.norm}] = rec.rel_error;
  }
  CHECK(err[{nyqr::Method::standard, nyqr::NormKind::trace}] ==
        doctest::Approx(101.0 / 102.01).epsilon(1e-9));
  CHECK(err[{nyqr::Method::modified, nyqr::NormKind::trace}] ==
        doctest::Approx(1.01 / 102.01).epsilon(1e-9));
  CHECK(err[{nyqr::Method::evd, nyqr::NormKind::trace}] ==
        doctest::Approx(1.01 / 102.01).epsilon(1e-9));
  CHECK(err[{nyqr::Method::standard, nyqr::NormKind::frobenius}] ==
        doctest::Approx(0.9999500037).epsilon(1e-8));
  CHECK(err[{nyqr::Method::modified, nyqr::NormKind::frobenius}] ==
        doctest::Approx(0.009999500037).epsilon(1e-8));
  CHECK(result.summary.size() == 6);  // one row per (method, m, norm)
}

TEST_CASE("experiment errors are deterministic for a fixed seed") {
  auto cfg = fixture_config();
  cfg.selection = nyqr::Selection::uniform;
  cfg.columns.clear();
  cfg.m_grid = {1, 2};
  cfg.trials = 4;
  cfg.base_seed = 17;
  // The seconds column is wall time and never reproducible; everything that
  // identifies a record, plus the error itself, must be.
  auto stable_part = [](const nyqr::ExperimentConfig& c) {
    std::ostringstream out;
    for (const auto& rec : nyqr::run_experiment(c).records)
      out << nyqr::to_string(rec.method) << ',' << rec.m << ',' << rec.trial << ','
          << nyqr::to_string(rec.norm) << ',' << rec.rel_error << '\n';
    return out.str();
  };
  CHECK(stable_part(cfg) == stable_part(cfg));

  std::ostringstream header_probe;
  nyqr::write_csv(nyqr::run_experiment(cfg).records, header_probe);
  CHECK(header_probe.str().rfind("method,selection,m,trial,norm,rel_error,seconds\n",
                                 0) == 0);

  // On a 3x3 instance two specific seeds can draw the same columns, so look
  // for any variation across a range of seeds instead of one pair.
  bool any_different = false;
  for (std::uint64_t s = 0; s < 20 && !any_different; ++s) {
    auto other = cfg;
    other.base_seed = s;
    any_different = stable_part(cfg) != stable_part(other);
  }
  CHECK(any_different);
}

TEST_CASE("the exact baseline dominates in every record") {
  auto cfg = fixture_config();
  cfg.fixture = "remark2";
  cfg.selection = nyqr::Selection::uniform;
  cfg.columns.clear();
  cfg.m_grid = {2, 3};
  cfg.trials = 6;
  cfg.norms = {nyqr::NormKind::trace, nyqr::NormKind::frobenius,
               nyqr::NormKind::spectral};
  const auto result = nyqr::run_experiment(cfg);
  std::map<std::tuple<Eigen::Index, int, nyqr::NormKind>, double> evd_err;
  for (const auto& rec : result.records)
    if (rec.method == nyqr::Method::evd)
      evd_err[{rec.m, rec.trial, rec.norm}] = rec.rel_error;
  for (const auto& rec : result.records)
    if (rec.method != nyqr::Method::evd)
      CHECK(evd_err.at({rec.m, rec.trial, rec.norm}) <= rec.rel_error + 1e-9);
}

TEST_CASE("timing rows aggregate without error metrics") {
  auto cfg = fixture_config();
  cfg.selection = nyqr::Selection::uniform;
  cfg.columns.clear();
  cfg.m_grid = {2};
  cfg.trials = 5;
  cfg.methods = {nyqr::Method::standard, nyqr::Method::modified};
  const auto rows = nyqr::run_timing(cfg);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.trials == 5);
    CHECK(row.mean_seconds >= 0.0);
    CHECK(row.std_seconds >= 0.0);
  }
  std::ostringstream out;
  nyqr::write_timing_csv(rows, out);
  CHECK(out.str().rfind("method,selection,m,mean_seconds,std_seconds,trials\n", 0) ==
        0);
}

TEST_CASE("verification suites run end to end") {
  const auto report = nyqr::run_verification("thm1", 10, 1);
  CHECK(report.ok());
  CHECK(report.passed == 10);
  std::ostringstream out;
  nyqr::write_verification_csv(report, out);
  CHECK(out.str().rfind("suite,instance,passed,lhs,rhs,slack\n", 0) == 0);
  CHECK_THROWS_AS(nyqr::run_verification("thm9", 1, 1), nyqr::ConfigError);
}
