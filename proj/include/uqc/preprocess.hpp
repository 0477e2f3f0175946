#pragma once

#include <span>
#include <vector>

#include "uqc/dataset.hpp"

namespace uqc {

// Standardize -> PCA -> min-max to [0,1], fitted on the training split only.
// Out-of-range test projections are clamped to [0,1].
struct PreprocessPlan {
  std::vector<double> mean;        // per raw feature
  std::vector<double> stddev;      // per raw feature (zero variance -> 1)
  std::vector<std::vector<double>> components;  // n_components rows of length n_features
  std::vector<double> explained_variance;       // eigenvalues, descending
  std::vector<double> pc_min;      // per component, from transformed train data
  std::vector<double> pc_max;

  std::size_t n_components() const { return components.size(); }
};

// Standardization stats and PCA components from the train covariance
// (eigendecomposition, components ordered by descending eigenvalue, sign
// fixed so each component's largest-magnitude entry is positive), then
// min-max stats on the PCA-projected train data.
PreprocessPlan fit_preprocess(const Dataset& train, int n_components);

// Deterministic transform of one raw feature row into [0,1]^n_components.
std::vector<double> apply_plan(const PreprocessPlan& plan, std::span<const double> raw);

// Whole-dataset transform; feature names become pc0, pc1, ...
Dataset transform_dataset(const PreprocessPlan& plan, const Dataset& ds);

}  // namespace uqc
