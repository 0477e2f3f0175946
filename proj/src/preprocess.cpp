#include "uqc/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "uqc/linalg.hpp"

namespace uqc {

PreprocessPlan fit_preprocess(const Dataset& train, int n_components) {
  const std::size_t n = train.size();
  const std::size_t f = train.feature_count();
  if (n == 0) throw std::invalid_argument("fit_preprocess: empty training set");
  if (n_components < 1 || static_cast<std::size_t>(n_components) > f)
    throw std::invalid_argument("fit_preprocess: n_components must lie in [1, feature count]");

  PreprocessPlan plan;
  plan.mean.assign(f, 0.0);
  plan.stddev.assign(f, 0.0);

  for (const auto& row : train.features)
    for (std::size_t j = 0; j < f; ++j) plan.mean[j] += row[j];
  for (std::size_t j = 0; j < f; ++j) plan.mean[j] /= static_cast<double>(n);

  for (const auto& row : train.features)
    for (std::size_t j = 0; j < f; ++j) {
      const double d = row[j] - plan.mean[j];
      plan.stddev[j] += d * d;
    }
  for (std::size_t j = 0; j < f; ++j) {
    plan.stddev[j] = std::sqrt(plan.stddev[j] / static_cast<double>(n));
    if (plan.stddev[j] < 1e-12) {
      std::cerr << "warning: feature '" << train.feature_names[j]
                << "' has zero variance; std set to 1\n";
      plan.stddev[j] = 1.0;
    }
  }

  // covariance of the standardized data, denominator n-1
  std::vector<double> cov(f * f, 0.0);
  for (const auto& row : train.features) {
    for (std::size_t a = 0; a < f; ++a) {
      const double za = (row[a] - plan.mean[a]) / plan.stddev[a];
      for (std::size_t b = a; b < f; ++b) {
        const double zb = (row[b] - plan.mean[b]) / plan.stddev[b];
        cov[a * f + b] += za * zb;
      }
    }
  }
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  for (std::size_t a = 0; a < f; ++a)
    for (std::size_t b = a; b < f; ++b) {
      cov[a * f + b] /= denom;
      cov[b * f + a] = cov[a * f + b];
    }

  const SymEigen eig = jacobi_eigensym(cov, static_cast<int>(f));

  // requesting more components than the data's rank is an error
  const double rank_tol = 1e-10 * std::max(eig.values.front(), 1.0);
  int rank = 0;
  for (double v : eig.values) rank += (v > rank_tol) ? 1 : 0;
  if (n_components > rank)
    throw std::invalid_argument("fit_preprocess: n_components exceeds data rank " +
                                std::to_string(rank));

  for (int c = 0; c < n_components; ++c) {
    std::vector<double> comp(eig.vectors.begin() + c * f, eig.vectors.begin() + (c + 1) * f);
    // sign convention: largest-magnitude entry positive
    std::size_t arg = 0;
    for (std::size_t j = 1; j < f; ++j)
      if (std::abs(comp[j]) > std::abs(comp[arg])) arg = j;
    if (comp[arg] < 0.0)
      for (double& v : comp) v = -v;
    plan.components.push_back(std::move(comp));
    plan.explained_variance.push_back(eig.values[c]);
  }

  plan.pc_min.assign(n_components, std::numeric_limits<double>::infinity());
  plan.pc_max.assign(n_components, -std::numeric_limits<double>::infinity());
  for (const auto& row : train.features) {
    for (int c = 0; c < n_components; ++c) {
      double proj = 0.0;
      for (std::size_t j = 0; j < f; ++j)
        proj += plan.components[c][j] * (row[j] - plan.mean[j]) / plan.stddev[j];
      plan.pc_min[c] = std::min(plan.pc_min[c], proj);
      plan.pc_max[c] = std::max(plan.pc_max[c], proj);
    }
  }
  return plan;
}

std::vector<double> apply_plan(const PreprocessPlan& plan, std::span<const double> raw) {
  const std::size_t f = plan.mean.size();
  if (raw.size() != f) throw std::invalid_argument("apply_plan: wrong feature count");
  std::vector<double> out(plan.n_components());
  for (std::size_t c = 0; c < plan.n_components(); ++c) {
    double proj = 0.0;
    for (std::size_t j = 0; j < f; ++j)
      proj += plan.components[c][j] * (raw[j] - plan.mean[j]) / plan.stddev[j];
    const double range = plan.pc_max[c] - plan.pc_min[c];
    double v = range > 0.0 ? (proj - plan.pc_min[c]) / range : 0.0;
    out[c] = std::clamp(v, 0.0, 1.0);
  }
  return out;
}

Dataset transform_dataset(const PreprocessPlan& plan, const Dataset& ds) {
  Dataset out;
  out.provenance = ds.provenance + " [pca]";
  for (std::size_t c = 0; c < plan.n_components(); ++c)
    out.feature_names.push_back("pc" + std::to_string(c));
  out.labels = ds.labels;
  out.features.reserve(ds.size());
  for (const auto& row : ds.features) out.features.push_back(apply_plan(plan, row));
  return out;
}

}  // namespace uqc
