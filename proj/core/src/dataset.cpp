#include "lpqb/dataset.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "lpqb/csv.hpp"
#include "lpqb/errors.hpp"

namespace lpqb {

StandardizeResult standardize(const Eigen::VectorXd& series) {
  const auto n = series.size();
  if (n < 2) throw DataError("standardize: need at least 2 observations");
  const double mean = series.mean();
  const double ss = (series.array() - mean).square().sum();
  const double var = ss / static_cast<double>(n - 1);
  if (var <= 0.0) throw DataError("standardize: series has zero variance");
  const double sd = std::sqrt(var);
  StandardizeResult r;
  r.values = (series.array() - mean) / sd;
  r.mean = mean;
  r.sd = sd;
  return r;
}

CalendarFeatures fourier_features(const std::vector<Date>& dates, int n_terms) {
  if (n_terms < 0) throw DataError("fourier_features: n_terms must be non-negative");
  const auto t = static_cast<Eigen::Index>(dates.size());
  CalendarFeatures f;
  f.s.resize(t);
  for (Eigen::Index i = 0; i < t; ++i) f.s[i] = year_position(dates[static_cast<std::size_t>(i)]);
  f.fourier.resize(t, 2 * n_terms);
  constexpr double two_pi = 6.283185307179586476;
  for (int n = 1; n <= n_terms; ++n) {
    for (Eigen::Index i = 0; i < t; ++i) {
      f.fourier(i, n - 1) = std::sin(two_pi * n * f.s[i]);
      f.fourier(i, n_terms + n - 1) = std::cos(two_pi * n * f.s[i]);
    }
  }
  return f;
}

Eigen::MatrixXd day_of_week_indicators(const std::vector<Date>& dates) {
  const auto t = static_cast<Eigen::Index>(dates.size());
  Eigen::MatrixXd dow = Eigen::MatrixXd::Zero(t, 6);
  for (Eigen::Index i = 0; i < t; ++i) {
    const int w = weekday_index(dates[static_cast<std::size_t>(i)]);  // 0 = Monday
    if (w >= 1) dow(i, w - 1) = 1.0;
  }
  return dow;
}

namespace {

void require_finite(const Eigen::MatrixXd& m, const std::vector<std::string>& names,
                    const char* what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (!m.col(j).allFinite())
      throw DataError(std::string("dataset: non-finite value in ") + what + " '" +
                      names[static_cast<std::size_t>(j)] + "'");
  }
}

}  // namespace

Dataset build_dataset(std::vector<Date> dates, std::string outcome_name, Eigen::VectorXd outcome,
                      std::vector<std::string> treatment_names, Eigen::MatrixXd treatments,
                      std::vector<std::string> instrument_names, Eigen::MatrixXd instruments,
                      std::vector<std::string> control_names, Eigen::MatrixXd controls,
                      std::vector<std::string> indicator_names, Eigen::MatrixXd indicators,
                      const DatasetOptions& options) {
  const auto n = static_cast<Eigen::Index>(dates.size());
  if (n < 2) throw DataError("dataset: need at least 2 observations");
  require_daily_spacing(dates);

  if (treatment_names.size() != instrument_names.size())
    throw DataError("dataset: " + std::to_string(treatment_names.size()) + " treatment(s) but " +
                    std::to_string(instrument_names.size()) +
                    " instrument(s); the design is just-identified");
  if (treatment_names.empty()) throw DataError("dataset: at least one treatment is required");

  auto check_len = [n](Eigen::Index got, const char* what) {
    if (got != n)
      throw DataError(std::string("dataset: ") + what + " length " + std::to_string(got) +
                      " does not match " + std::to_string(n) + " dates");
  };
  check_len(outcome.size(), "outcome");
  check_len(treatments.rows(), "treatments");
  check_len(instruments.rows(), "instruments");
  if (controls.size() > 0) check_len(controls.rows(), "controls");
  if (indicators.size() > 0) check_len(indicators.rows(), "indicators");

  if (!outcome.allFinite()) throw DataError("dataset: non-finite value in outcome");
  require_finite(treatments, treatment_names, "treatment");
  require_finite(instruments, instrument_names, "instrument");
  if (controls.cols() > 0) require_finite(controls, control_names, "control");

  for (Eigen::Index j = 0; j < indicators.cols(); ++j) {
    for (Eigen::Index i = 0; i < indicators.rows(); ++i) {
      const double v = indicators(i, j);
      if (v != 0.0 && v != 1.0)
        throw DataError("dataset: indicator '" + indicator_names[static_cast<std::size_t>(j)] +
                        "' has non-0/1 value at row " + std::to_string(i));
    }
  }

  Dataset d;
  d.dates = std::move(dates);
  d.outcome_name = std::move(outcome_name);
  d.outcome = std::move(outcome);
  d.treatment_names = std::move(treatment_names);
  d.instrument_names = std::move(instrument_names);
  d.instruments = std::move(instruments);
  d.control_names = std::move(control_names);
  d.indicator_names = std::move(indicator_names);
  d.indicators = std::move(indicators);

  d.treatments = std::move(treatments);
  d.treatment_scale.assign(d.treatment_names.size(), Standardization{});
  if (options.standardize_treatments) {
    for (Eigen::Index j = 0; j < d.treatments.cols(); ++j) {
      auto r = standardize(d.treatments.col(j));
      d.treatments.col(j) = r.values;
      d.treatment_scale[static_cast<std::size_t>(j)] = {r.mean, r.sd};
    }
  }
  d.controls = std::move(controls);
  d.control_scale.assign(d.control_names.size(), Standardization{});
  if (options.standardize_controls) {
    for (Eigen::Index j = 0; j < d.controls.cols(); ++j) {
      auto r = standardize(d.controls.col(j));
      d.controls.col(j) = r.values;
      d.control_scale[static_cast<std::size_t>(j)] = {r.mean, r.sd};
    }
  }
  return d;
}

Dataset load_csv(const std::string& path, const DataSchema& schema, const DatasetOptions& options) {
  const CsvTable table = read_csv(path);
  if (schema.date.empty() || schema.outcome.empty())
    throw ConfigError("load_csv: schema must name a date column and an outcome column");

  // Duplicate roles are almost certainly a schema mistake.
  {
    std::set<std::string> seen;
    auto check = [&seen](const std::string& name) {
      if (!seen.insert(name).second)
        throw ConfigError("load_csv: column '" + name + "' assigned to more than one role");
    };
    check(schema.date);
    check(schema.outcome);
    for (const auto& c : schema.treatments) check(c);
    for (const auto& c : schema.instruments) check(c);
    for (const auto& c : schema.controls) check(c);
    for (const auto& c : schema.indicators) check(c);
  }

  auto numeric_column = [&table](const std::string& name) {
    const int idx = table.require_column(name);
    Eigen::VectorXd col(static_cast<Eigen::Index>(table.n_rows()));
    for (std::size_t i = 0; i < table.n_rows(); ++i)
      col[static_cast<Eigen::Index>(i)] =
          parse_double(table.rows[i][static_cast<std::size_t>(idx)],
                       "column '" + name + "', row " + std::to_string(i + 2));
    return col;
  };
  auto numeric_block = [&numeric_column, &table](const std::vector<std::string>& names) {
    Eigen::MatrixXd block(static_cast<Eigen::Index>(table.n_rows()),
                          static_cast<Eigen::Index>(names.size()));
    for (std::size_t j = 0; j < names.size(); ++j) block.col(static_cast<Eigen::Index>(j)) = numeric_column(names[j]);
    return block;
  };

  const int date_idx = table.require_column(schema.date);
  std::vector<Date> dates;
  dates.reserve(table.n_rows());
  for (std::size_t i = 0; i < table.n_rows(); ++i)
    dates.push_back(parse_date(table.rows[i][static_cast<std::size_t>(date_idx)]));

  return build_dataset(std::move(dates), schema.outcome, numeric_column(schema.outcome),
                       schema.treatments, numeric_block(schema.treatments), schema.instruments,
                       numeric_block(schema.instruments), schema.controls,
                       numeric_block(schema.controls), schema.indicators,
                       numeric_block(schema.indicators), options);
}

}  // namespace lpqb
