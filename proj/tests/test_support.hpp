#pragma once

#include <unistd.h>

#include <Eigen/Dense>
#include <filesystem>
#include <fstream>
#include <string>

#include "lpqb/dataset.hpp"
#include "lpqb/lp_design.hpp"
#include "lpqb/rng.hpp"

namespace lpqb::test {

inline std::vector<Date> daily_dates(Eigen::Index n, const std::string& start = "2015-01-01") {
  std::vector<Date> dates(static_cast<std::size_t>(n));
  const Date d0 = parse_date(start);
  for (Eigen::Index i = 0; i < n; ++i) dates[static_cast<std::size_t>(i)] = d0 + std::chrono::days(i);
  return dates;
}

// Minimal one-treatment dataset with user-supplied series; nothing
// standardized so tests control the exact numbers.
inline Dataset tiny_dataset(const Eigen::VectorXd& y, const Eigen::VectorXd& r,
                            const Eigen::VectorXd& z) {
  DatasetOptions opts;
  opts.standardize_treatments = false;
  opts.standardize_controls = false;
  return build_dataset(daily_dates(y.size()), "y", y, {"r"}, r, {"z"}, z, {},
                       Eigen::MatrixXd(y.size(), 0), {}, Eigen::MatrixXd(y.size(), 0), opts);
}

// Random just-identified design (instruments correlated with regressors) for
// estimator algebra tests; X, Z, Y are handed straight to the struct.
inline LpDesign random_design(RngStream& rng, Eigen::Index t_count, int j, int horizon) {
  LpDesign d;
  d.kind = SpecKind::LongDifference;
  d.horizon = horizon;
  d.lags = 0;
  d.X.resize(t_count, j);
  d.Z.resize(t_count, j);
  d.Y.resize(t_count, horizon + 1);
  for (Eigen::Index i = 0; i < t_count; ++i) {
    for (int c = 0; c < j; ++c) {
      const double x = rng.normal();
      d.X(i, c) = x;
      d.Z(i, c) = x + 0.4 * rng.normal();  // relevant, imperfect instrument
    }
    for (int h = 0; h <= horizon; ++h) d.Y(i, h) = rng.normal();
  }
  d.column_names.resize(static_cast<std::size_t>(j));
  for (int c = 0; c < j; ++c) d.column_names[static_cast<std::size_t>(c)] = "x" + std::to_string(c);
  d.treatment_names = {"x0"};
  d.origins.resize(static_cast<std::size_t>(t_count));
  for (Eigen::Index i = 0; i < t_count; ++i) d.origins[static_cast<std::size_t>(i)] = i;
  d.y_offsets.resize(static_cast<std::size_t>(horizon) + 1);
  for (int h = 0; h <= horizon; ++h) d.y_offsets[static_cast<std::size_t>(h)] = h;
  return d;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("lpqb_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string dir() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace lpqb::test
