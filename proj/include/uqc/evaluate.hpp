#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uqc/dataset.hpp"
#include "uqc/decision.hpp"
#include "uqc/metrics.hpp"
#include "uqc/noise.hpp"
#include "uqc/vqc.hpp"

namespace uqc {

enum class ModelKind { M1, M2, M3 };

std::string model_kind_name(ModelKind m);
ModelKind model_kind_from_name(const std::string& name);

struct EvalOptions {
  ModelKind model = ModelKind::M2;
  std::uint32_t shots = 1024;                       // M1/M2
  ThresholdPolicy policy{-1, 50};                   // M3; accept_level < 0 means l = N
  RejectFallback fallback = RejectFallback::MajorityOfAttempts;
  std::optional<NoiseSpec> noise;
  std::uint32_t runs = 25;
};

// One decision record per (run, point).
struct DecisionRecord {
  std::uint32_t run = 0;
  std::uint32_t point_id = 0;
  Label label = Label::Class0;   // final label (after fallback for M3 rejects)
  std::uint32_t shots_used = 0;
  bool accepted = true;          // false only for M3 rejections
};

struct RunRecord {
  std::uint32_t run = 0;
  ScoreSet scores;
  double roc_auc = 0.5;
  std::uint64_t executions = 0;
};

struct MetricsReport {
  std::string model;
  bool noisy = false;
  std::string backend;  // "statevector" | "density"
  std::uint32_t runs = 0;
  std::uint32_t test_rows = 0;

  ScoreSet mean_scores;
  double mean_roc_auc = 0.5;
  double avg_executions = 0.0;   // per point per run
  std::uint64_t total_draws = 0; // instrumented sampler tally

  std::vector<RunRecord> per_run;
  std::vector<DecisionRecord> decisions;
};

// Runs `runs` independent classification passes over the full test set,
// aggregating mean metrics and execution counts. Per-point randomness is
// keyed by (run, point), so results are independent of evaluation order.
// M1/M2 score points by sampled p_hat; M3's ROC score per point is the
// signed acceptance statistic over the runs.
MetricsReport evaluate(const Dataset& test, const CircuitSpec& spec, const AnsatzWeights& weights,
                       const EvalOptions& opts, Rng& rng);

}  // namespace uqc
