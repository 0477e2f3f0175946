#include "uqc/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace uqc {

ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size())
    throw std::invalid_argument("confusion: length mismatch");
  ConfusionCounts c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_pred[i] == 1)
      (y_true[i] == 1 ? c.tp : c.fp)++;
    else
      (y_true[i] == 1 ? c.fn : c.tn)++;
  }
  return c;
}

ScoreSet scores_from_confusion(const ConfusionCounts& c) {
  ScoreSet s;
  const std::uint64_t total = c.total();
  s.accuracy = total ? static_cast<double>(c.tp + c.tn) / total : 0.0;
  s.precision = (c.tp + c.fp) ? static_cast<double>(c.tp) / (c.tp + c.fp) : 0.0;
  s.recall = (c.tp + c.fn) ? static_cast<double>(c.tp) / (c.tp + c.fn) : 0.0;
  s.f1 = (s.precision + s.recall > 0.0)
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

double roc_auc(std::span<const int> y_true, std::span<const double> score) {
  if (y_true.size() != score.size()) throw std::invalid_argument("roc_auc: length mismatch");
  const std::size_t n = y_true.size();
  std::size_t n_pos = 0;
  for (int y : y_true) n_pos += (y == 1) ? 1 : 0;
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) return 0.5;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });

  // average ranks over tie groups
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && score[order[j + 1]] == score[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
    for (std::size_t t = i; t <= j; ++t)
      if (y_true[order[t]] == 1) rank_sum_pos += avg_rank;
    i = j + 1;
  }
  const double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) * (n_pos + 1);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

}  // namespace uqc
