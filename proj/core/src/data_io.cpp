#include "nyqr/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace nyqr {

namespace {

bool parse_double(std::string_view s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

DataMatrix read_libsvm(std::istream& in, Eigen::Index declared_dim) {
  std::vector<DataMatrix::SparsePoint> points;
  Eigen::Index max_index = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string token;
    if (!(ls >> token)) {
      continue;  // blank line
    }
    double label;
    if (!parse_double(token, label)) {
      throw ParseError("line " + std::to_string(line_no) + ": bad label '" + token + "'");
    }
    DataMatrix::SparsePoint pt;
    Eigen::Index prev = 0;
    while (ls >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": expected idx:val, got '" +
                         token + "'");
      }
      long idx;
      {
        const char* b = token.data();
        const char* e = b + colon;
        auto [ptr, ec] = std::from_chars(b, e, idx);
        if (ec != std::errc{} || ptr != e || idx < 1) {
          throw ParseError("line " + std::to_string(line_no) + ": bad index in '" + token + "'");
        }
      }
      double val;
      if (!parse_double(std::string_view(token).substr(colon + 1), val)) {
        throw ParseError("line " + std::to_string(line_no) + ": bad value in '" + token + "'");
      }
      if (idx <= prev) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": feature indices not strictly increasing");
      }
      prev = idx;
      pt.emplace_back(static_cast<Eigen::Index>(idx - 1), val);  // to 0-based
      max_index = std::max<Eigen::Index>(max_index, idx);
    }
    points.push_back(std::move(pt));
  }
  const Eigen::Index p = std::max(declared_dim, max_index);
  if (p == 0) {
    throw ParseError("read_libsvm: no features found and no declared dimension");
  }
  return DataMatrix::sparse(std::move(points), p);
}

DataMatrix read_libsvm(const std::string& path, Eigen::Index declared_dim) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("read_libsvm: cannot open '" + path + "'");
  }
  return read_libsvm(in, declared_dim);
}

void write_libsvm(const DataMatrix& x, std::ostream& out) {
  out.precision(17);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out << 0;
    if (x.is_sparse()) {
      for (const auto& [idx, val] : x.sparse_points()[static_cast<std::size_t>(i)]) {
        out << ' ' << (idx + 1) << ':' << val;
      }
    } else {
      const Eigen::VectorXd pt = x.point(i);
      for (Eigen::Index j = 0; j < pt.size(); ++j) {
        if (pt(j) != 0.0) {
          out << ' ' << (j + 1) << ':' << pt(j);
        }
      }
    }
    out << '\n';
  }
}

DataMatrix subsample(const DataMatrix& x, Eigen::Index n_sub, RngSeed seed) {
  if (n_sub < 1 || n_sub > x.size()) {
    throw DimensionError("subsample: need 1 <= n_sub <= n");
  }
  LandmarkSet pick = uniform_sample(x.size(), n_sub, seed);
  std::sort(pick.indices.begin(), pick.indices.end());  // original order
  return x.select(pick.indices);
}

PaperFixture paper_fixture(const std::string& name) {
  PaperFixture f;
  f.name = name;
  if (name == "example1") {
    f.matrix.resize(3, 3);
    f.matrix << 1, 0, 10,
                0, 1.01, 0,
                10, 0, 100;
  } else if (name == "remark2") {
    f.matrix.resize(4, 4);
    f.matrix << 1.0, 0.7, 0.9, 0.4,
                0.7, 1.0, 0.6, 0.6,
                0.9, 0.6, 1.0, 0.6,
                0.4, 0.6, 0.6, 1.0;
  } else {
    throw std::invalid_argument("paper_fixture: unknown name '" + name + "'");
  }
  return f;
}

Eigen::MatrixXd random_spsd(Eigen::Index n, Eigen::Index rank_hint, RngSeed seed) {
  if (rank_hint < 1 || rank_hint > n) {
    throw DimensionError("random_spsd: need 1 <= rank_hint <= n");
  }
  std::mt19937_64 rng(seed.value);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd x(rank_hint, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < rank_hint; ++i) {
      x(i, j) = gauss(rng);
    }
  }
  Eigen::MatrixXd k = x.transpose() * x;
  return 0.5 * (k + k.transpose());
}

}  // namespace nyqr
