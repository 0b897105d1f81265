#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "lpqb/calendar.hpp"

namespace lpqb {

/// Stored standardization constants; de-standardizing with (mean, sd)
/// recovers the original series.
struct Standardization {
  double mean = 0.0;
  double sd = 1.0;
};

struct StandardizeResult {
  Eigen::VectorXd values;
  double mean = 0.0;
  double sd = 1.0;
};

/// Centers and scales to sample mean 0 and variance 1 (T-1 denominator).
/// Throws DataError for length < 2 or a constant series.
StandardizeResult standardize(const Eigen::VectorXd& series);

/// Calendar-derived regressors for one date sequence.
struct CalendarFeatures {
  Eigen::VectorXd s;        // within-year position in [0, 1)
  Eigen::MatrixXd fourier;  // T x 2N: sin(2*pi*n*s) for n=1..N, then cosines
  Eigen::MatrixXd dow;      // T x 6: Tue..Sun indicators, Monday omitted
};

/// Fourier seasonal columns on the leap-year-normalized within-year
/// position; dow left empty.
CalendarFeatures fourier_features(const std::vector<Date>& dates, int n_terms);

/// Six 0/1 columns (Tue..Sun); Monday rows are all-zero.
Eigen::MatrixXd day_of_week_indicators(const std::vector<Date>& dates);

/// Column-role map for load_csv.
struct DataSchema {
  std::string date;
  std::string outcome;
  std::vector<std::string> treatments;
  std::vector<std::string> instruments;  // one per treatment
  std::vector<std::string> controls;     // continuous, standardized on load
  std::vector<std::string> indicators;   // 0/1 event columns, kept as-is
};

struct DatasetOptions {
  bool standardize_treatments = true;
  bool standardize_controls = true;
};

/// Aligned daily series after validation. Treatments and continuous
/// controls are standardized (when the options say so) with the constants
/// retained; outcome and instruments stay in their original units.
struct Dataset {
  std::vector<Date> dates;

  std::string outcome_name;
  Eigen::VectorXd outcome;

  std::vector<std::string> treatment_names;
  Eigen::MatrixXd treatments;
  std::vector<Standardization> treatment_scale;

  std::vector<std::string> instrument_names;
  Eigen::MatrixXd instruments;

  std::vector<std::string> control_names;
  Eigen::MatrixXd controls;
  std::vector<Standardization> control_scale;

  std::vector<std::string> indicator_names;
  Eigen::MatrixXd indicators;

  Eigen::Index n() const { return static_cast<Eigen::Index>(dates.size()); }
  int n_treatments() const { return static_cast<int>(treatment_names.size()); }
};

/// Validates and assembles a Dataset from raw columns: daily spacing,
/// finite values, treatment/instrument count match, indicator 0/1 check,
/// then standardization per options.
Dataset build_dataset(std::vector<Date> dates, std::string outcome_name, Eigen::VectorXd outcome,
                      std::vector<std::string> treatment_names, Eigen::MatrixXd treatments,
                      std::vector<std::string> instrument_names, Eigen::MatrixXd instruments,
                      std::vector<std::string> control_names, Eigen::MatrixXd controls,
                      std::vector<std::string> indicator_names, Eigen::MatrixXd indicators,
                      const DatasetOptions& options = {});

/// Loads a CSV per the schema and validates. Missing values are fatal;
/// nothing is imputed.
Dataset load_csv(const std::string& path, const DataSchema& schema,
                 const DatasetOptions& options = {});

}  // namespace lpqb
