#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "lpqb/dataset.hpp"

namespace lpqb {

enum class SpecKind { Level, LongDifference };

struct SpecConfig {
  SpecKind kind = SpecKind::LongDifference;
  int horizon = 7;      // H: max projection horizon
  int lags = 7;         // L: outcome-lag controls
  int n_fourier = 4;    // N: annual Fourier pairs
  bool day_of_week = true;
};

/// Inclusive range of usable projection origins (0-based indices into the
/// raw series).
struct TrimBounds {
  Eigen::Index first = 0;
  Eigen::Index last = 0;
  Eigen::Index count() const { return last - first + 1; }
};

/// Origins t keep L lags behind and H leads ahead inside the sample; the
/// long-differenced case needs one extra lag for the first difference.
TrimBounds trim_bounds(Eigen::Index raw_length, int lags, int horizon, SpecKind kind);

/// Horizon-stacked regression system on a common trimmed origin set.
///
/// Column order in X (and Z): treatments, intercept, outcome lags, Fourier
/// sines, Fourier cosines, controls (continuous, then day-of-week, then
/// event indicators). Z equals X with the treatment columns replaced by the
/// instruments. Y column h holds the horizon-h dependent variable.
struct LpDesign {
  SpecKind kind = SpecKind::LongDifference;
  int horizon = 0;  // H; Y has H+1 columns
  int lags = 0;

  Eigen::MatrixXd X;  // T x J
  Eigen::MatrixXd Z;  // T x J
  Eigen::MatrixXd Y;  // T x (H+1)

  std::vector<std::string> column_names;    // J entries
  std::vector<std::string> treatment_names; // leading columns of X
  std::vector<Eigen::Index> origins;        // row -> raw index t
  std::vector<int> y_offsets;               // Y column -> offset of y_{t+offset}

  Eigen::Index n_obs() const { return X.rows(); }           // T
  int n_cols() const { return static_cast<int>(X.cols()); } // J
  int n_treatments() const { return static_cast<int>(treatment_names.size()); }
  int stacked_dim() const { return n_cols() * (horizon + 1); }  // K

  /// Horizon-major stacked coordinate of covariate j at horizon h.
  int stacked_index(int h, int j) const { return h * n_cols() + j; }
  /// Inverse of stacked_index.
  std::pair<int, int> coord(int k) const { return {k / n_cols(), k % n_cols()}; }
};

LpDesign build_design(const Dataset& data, const SpecConfig& config);

/// Level-specification design whose dependent variables are the pre-origin
/// leads y_{t-n_leads}, ..., y_{t-1} (y_offsets = -n_leads..-1). The outcome
/// lag controls are shifted back to y_{t-n_leads-1}, ..., y_{t-n_leads-L} so
/// that no dependent lead appears among the regressors.
LpDesign build_lead_design(const Dataset& data, const SpecConfig& config, int n_leads);

}  // namespace lpqb
