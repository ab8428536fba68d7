#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "nyqr/data_matrix.hpp"
#include "nyqr/landmark.hpp"

namespace nyqr {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse a LIBSVM ASCII file: "label idx:val idx:val ...", 1-based indices,
/// strictly increasing per line. Labels are discarded. The dimensionality is
/// the maximum index seen unless declared_dim overrides it upward.
DataMatrix read_libsvm(const std::string& path, Eigen::Index declared_dim = 0);
DataMatrix read_libsvm(std::istream& in, Eigen::Index declared_dim = 0);

/// Write sparse LIBSVM lines with label 0 (inverse of read_libsvm up to labels).
void write_libsvm(const DataMatrix& x, std::ostream& out);

/// Uniform subsample without replacement, original order preserved.
DataMatrix subsample(const DataMatrix& x, Eigen::Index n_sub, RngSeed seed);

/// Small built-in SPSD matrices with hand-checkable approximation errors.
struct PaperFixture {
  std::string name;
  Eigen::MatrixXd matrix;
};

/// name in {example1, remark2}.
PaperFixture paper_fixture(const std::string& name);

/// K = X^T X for a random rank_hint x n standard normal X.
Eigen::MatrixXd random_spsd(Eigen::Index n, Eigen::Index rank_hint, RngSeed seed);

}  // namespace nyqr
