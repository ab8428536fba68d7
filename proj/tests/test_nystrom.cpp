#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "nyqr/data_io.hpp"
#include "nyqr/nystrom.hpp"
#include "nyqr/verify.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

void check_factor_invariants(const nyqr::FixedRankFactors& f, Eigen::Index r) {
  REQUIRE(f.lambda_hat.size() == r);
  REQUIRE(f.u_hat.cols() == r);
  CHECK((f.u_hat.transpose() * f.u_hat - MatrixXd::Identity(r, r))
            .cwiseAbs()
            .maxCoeff() < 1e-8);
  for (Eigen::Index i = 0; i < r; ++i) {
    CHECK(f.lambda_hat(i) >= 0.0);
    if (i > 0) CHECK(f.lambda_hat(i) <= f.lambda_hat(i - 1) + 1e-12);
  }
}

double rel_trace_error(const MatrixXd& k, const nyqr::FixedRankFactors& f) {
  return nyqr::norms(k - nyqr::reconstruct(f)).trace / nyqr::norms(k).trace;
}

}  // namespace

TEST_CASE("column sampling slices rows and columns consistently") {
  const MatrixXd k = nyqr::random_spsd(9, 9, nyqr::RngSeed{2});
  const std::vector<Eigen::Index> idx = {5, 0, 8};
  const auto pair = nyqr::sample_columns(k, idx);
  CHECK(pair.c_block.rows() == 9);
  CHECK(pair.c_block.cols() == 3);
  for (size_t a = 0; a < idx.size(); ++a) {
    CHECK((pair.c_block.col(a) - k.col(idx[a])).cwiseAbs().maxCoeff() == 0.0);
    for (size_t b = 0; b < idx.size(); ++b)
      CHECK(pair.w_block(a, b) == k(idx[a], idx[b]));
  }
  CHECK_THROWS_AS(nyqr::sample_columns(k, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(nyqr::sample_columns(k, {9}), std::invalid_argument);
}

TEST_CASE("rank-m approximation is exact on the small fixture columns") {
  const auto fx = nyqr::paper_fixture("example1");
  const auto pair = nyqr::sample_columns(fx.matrix, {0, 1});
  const MatrixXd g = nyqr::rank_m_nystrom(pair);
  CHECK((g - fx.matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rank-m approximation with all columns reproduces a PD matrix") {
  const MatrixXd k = nyqr::random_spsd(10, 10, nyqr::RngSeed{8});
  std::vector<Eigen::Index> all(10);
  for (Eigen::Index i = 0; i < 10; ++i) all[i] = i;
  const MatrixXd g = nyqr::rank_m_nystrom(nyqr::sample_columns(k, all));
  CHECK((g - k).norm() < 1e-8 * k.norm());
}

TEST_CASE("rank-m approximation of zero blocks is zero") {
  nyqr::NystromPair pair;
  pair.c_block = MatrixXd::Zero(6, 2);
  pair.w_block = MatrixXd::Zero(2, 2);
  CHECK(nyqr::rank_m_nystrom(pair).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the two pipelines reproduce the worked 3x3 example") {
  const auto fx = nyqr::paper_fixture("example1");
  const auto pair = nyqr::sample_columns(fx.matrix, {0, 1});

  const auto std_f = nyqr::standard_nystrom(pair, 1);
  MatrixXd g_std_expected = MatrixXd::Zero(3, 3);
  g_std_expected(1, 1) = 1.01;
  CHECK((nyqr::reconstruct(std_f) - g_std_expected).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(rel_trace_error(fx.matrix, std_f) ==
        doctest::Approx(101.0 / 102.01).epsilon(1e-10));

  const auto mod_f = nyqr::modified_nystrom(pair, 1);
  MatrixXd g_mod_expected(3, 3);
  g_mod_expected << 1, 0, 10, 0, 0, 0, 10, 0, 100;
  CHECK((nyqr::reconstruct(mod_f) - g_mod_expected).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(rel_trace_error(fx.matrix, mod_f) ==
        doctest::Approx(1.01 / 102.01).epsilon(1e-10));

  // Frobenius counterparts of the same errors.
  const double kf = nyqr::norms(fx.matrix).frobenius;
  CHECK(nyqr::norms(fx.matrix - nyqr::reconstruct(std_f)).frobenius / kf ==
        doctest::Approx(0.9999500037).epsilon(1e-8));
  CHECK(nyqr::norms(fx.matrix - nyqr::reconstruct(mod_f)).frobenius / kf ==
        doctest::Approx(0.009999500037).epsilon(1e-8));
}

TEST_CASE("the 4x4 reversal fixture reproduces its published errors") {
  const auto fx = nyqr::paper_fixture("remark2");
  const auto pair = nyqr::sample_columns(fx.matrix, {0, 1});
  const auto std_f = nyqr::standard_nystrom(pair, 1);
  const auto mod_f = nyqr::modified_nystrom(pair, 1);
  const auto en_std = nyqr::norms(fx.matrix - nyqr::reconstruct(std_f));
  const auto en_mod = nyqr::norms(fx.matrix - nyqr::reconstruct(mod_f));
  CHECK(en_std.trace == doctest::Approx(1.3441).epsilon(2e-4));
  CHECK(en_mod.trace == doctest::Approx(1.3299).epsilon(2e-4));
  CHECK(en_std.frobenius == doctest::Approx(0.9397).epsilon(2e-4));
  CHECK(en_mod.frobenius == doctest::Approx(0.9409).epsilon(2e-4));
  // Trace favors the QR route; Frobenius reverses on this instance.
  CHECK(en_mod.trace < en_std.trace);
  CHECK(en_std.frobenius < en_mod.frobenius);
}

TEST_CASE("with r == m both pipelines equal the untruncated approximation") {
  for (std::uint64_t seed : {4ull, 5ull, 6ull}) {
    const MatrixXd k = nyqr::random_spsd(20, 20, nyqr::RngSeed{seed});
    const auto lm = nyqr::uniform_sample(20, 6, nyqr::RngSeed{seed + 1});
    const auto pair = nyqr::sample_columns(k, lm.indices);
    const MatrixXd g_full = nyqr::rank_m_nystrom(pair);
    const MatrixXd g_std = nyqr::reconstruct(nyqr::standard_nystrom(pair, 6));
    const MatrixXd g_mod = nyqr::reconstruct(nyqr::modified_nystrom(pair, 6));
    CHECK((g_std - g_full).norm() < 1e-8 * (1.0 + g_full.norm()));
    CHECK((g_mod - g_full).norm() < 1e-8 * (1.0 + g_full.norm()));
  }
}

TEST_CASE("the QR pipeline equals truncating the materialized approximation") {
  int checked = 0;
  std::mt19937_64 rng(101);
  while (checked < 25) {
    const MatrixXd k = nyqr::random_spsd(25, 25, nyqr::RngSeed{rng()});
    const auto lm = nyqr::uniform_sample(25, 7, nyqr::RngSeed{rng()});
    const auto pair = nyqr::sample_columns(k, lm.indices);
    const MatrixXd g_full = nyqr::rank_m_nystrom(pair);
    const VectorXd ev = nyqr::sym_eigenvalues(g_full);
    if (ev(2) - ev(3) <= 1e-6) continue;  // truncation only unique with a gap
    const MatrixXd g_mod = nyqr::reconstruct(nyqr::modified_nystrom(pair, 3));
    const MatrixXd g_best = nyqr::reconstruct(nyqr::best_rank_r(g_full, 3));
    CHECK((g_mod - g_best).norm() <= 1e-8 * g_full.norm());
    ++checked;
  }
}

TEST_CASE("factor invariants hold for both pipelines, including deficient W") {
  std::mt19937_64 rng(55);
  for (int it = 0; it < 20; ++it) {
    const Eigen::Index n = 15 + static_cast<Eigen::Index>(rng() % 20);
    const Eigen::Index m = 4 + static_cast<Eigen::Index>(rng() % 5);
    // Half the instances get a low-rank K so W is rank deficient.
    const Eigen::Index hint = (it % 2 == 0) ? n : 2;
    const MatrixXd k = nyqr::random_spsd(n, hint, nyqr::RngSeed{rng()});
    const auto lm = nyqr::uniform_sample(n, m, nyqr::RngSeed{rng()});
    const auto pair = nyqr::sample_columns(k, lm.indices);
    const Eigen::Index r = 1 + static_cast<Eigen::Index>(rng() % m);
    check_factor_invariants(nyqr::standard_nystrom(pair, r), r);
    check_factor_invariants(nyqr::modified_nystrom(pair, r), r);
  }
}

TEST_CASE("rank arguments are validated") {
  const MatrixXd k = nyqr::random_spsd(8, 8, nyqr::RngSeed{3});
  const auto pair = nyqr::sample_columns(k, {0, 1, 2});
  CHECK_THROWS_AS(nyqr::standard_nystrom(pair, 4), nyqr::DimensionError);
  CHECK_THROWS_AS(nyqr::modified_nystrom(pair, 4), nyqr::DimensionError);
  CHECK_THROWS_AS(nyqr::standard_nystrom(pair, 0), nyqr::DimensionError);
  CHECK_THROWS_AS(nyqr::evd_baseline(k, 9), nyqr::DimensionError);
}

TEST_CASE("the exact eigendecomposition baseline dominates both pipelines") {
  std::mt19937_64 rng(303);
  for (int it = 0; it < 10; ++it) {
    const MatrixXd k = nyqr::random_spsd(18, 18, nyqr::RngSeed{rng()});
    const auto lm = nyqr::uniform_sample(18, 6, nyqr::RngSeed{rng()});
    const auto pair = nyqr::sample_columns(k, lm.indices);
    const auto base = nyqr::evd_baseline(k, 3);
    const auto std_f = nyqr::standard_nystrom(pair, 3);
    const auto mod_f = nyqr::modified_nystrom(pair, 3);
    for (auto norm_of : {+[](const nyqr::MatrixNorms& n) { return n.trace; },
                         +[](const nyqr::MatrixNorms& n) { return n.frobenius; },
                         +[](const nyqr::MatrixNorms& n) { return n.spectral; }}) {
      const double e0 = norm_of(nyqr::norms(k - nyqr::reconstruct(base)));
      CHECK(e0 <= norm_of(nyqr::norms(k - nyqr::reconstruct(std_f))) + 1e-9);
      CHECK(e0 <= norm_of(nyqr::norms(k - nyqr::reconstruct(mod_f))) + 1e-9);
    }
  }
}

TEST_CASE("reconstruction round-trips the factors") {
  const MatrixXd k = nyqr::random_spsd(10, 10, nyqr::RngSeed{77});
  const auto f = nyqr::best_rank_r(k, 4);
  const MatrixXd g = nyqr::reconstruct(f);
  CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const VectorXd ev = nyqr::sym_eigenvalues(g);
  for (Eigen::Index i = 0; i < 4; ++i)
    CHECK(ev(i) == doctest::Approx(f.lambda_hat(i)).epsilon(1e-10));
  for (Eigen::Index i = 4; i < 10; ++i) CHECK(std::abs(ev(i)) < 1e-10);

  nyqr::FixedRankFactors zero;
  zero.u_hat = MatrixXd::Identity(5, 2);
  zero.lambda_hat = VectorXd::Zero(2);
  CHECK(nyqr::reconstruct(zero).cwiseAbs().maxCoeff() == 0.0);
}
