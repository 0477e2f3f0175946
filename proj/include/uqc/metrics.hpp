#pragma once

#include <cstdint>
#include <span>

namespace uqc {

struct ConfusionCounts {
  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::uint64_t total() const { return tp + fp + tn + fn; }
};

// Positive class is label 1.
ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred);

struct ScoreSet {
  double accuracy = 0.0;
  double precision = 0.0;  // 0 when no positive predictions
  double recall = 0.0;     // 0 when no positive truths
  double f1 = 0.0;         // harmonic mean, 0 when precision + recall = 0
};

ScoreSet scores_from_confusion(const ConfusionCounts& c);

// Rank-based (Mann-Whitney) AUC with average ranks for ties; 0.5 when one
// class is absent.
double roc_auc(std::span<const int> y_true, std::span<const double> score);

}  // namespace uqc
