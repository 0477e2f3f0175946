#include "uqc/evaluate.hpp"

#include <stdexcept>

namespace uqc {

std::string model_kind_name(ModelKind m) {
  switch (m) {
    case ModelKind::M1: return "m1";
    case ModelKind::M2: return "m2";
    case ModelKind::M3: return "m3";
  }
  return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "m1" || name == "M1") return ModelKind::M1;
  if (name == "m2" || name == "M2") return ModelKind::M2;
  if (name == "m3" || name == "M3") return ModelKind::M3;
  throw std::invalid_argument("unknown model: " + name);
}

MetricsReport evaluate(const Dataset& test, const CircuitSpec& spec, const AnsatzWeights& weights,
                       const EvalOptions& opts, Rng& rng) {
  spec.validate();
  weights.validate();
  if (test.size() == 0) throw std::invalid_argument("evaluate: empty test set");
  if (test.feature_count() != static_cast<std::size_t>(spec.qubits))
    throw std::invalid_argument("evaluate: feature count must equal qubit count");
  if (opts.runs < 1) throw std::invalid_argument("evaluate: runs must be >= 1");

  ThresholdPolicy policy = opts.policy;
  if (policy.accept_level < 0) policy.accept_level = spec.qubits;
  if (opts.model == ModelKind::M3) {
    policy.validate(spec.qubits);
    if (policy.max_attempts == 0)
      throw std::invalid_argument("evaluate: M3 needs a finite attempt cap");
  }

  const std::size_t n = test.size();

  // the final state per point is deterministic; compute the sampling
  // distribution once and reuse it across runs
  std::vector<std::vector<double>> probs(n);
  const NoiseSpec* noise = opts.noise ? &*opts.noise : nullptr;
  for (std::size_t i = 0; i < n; ++i)
    probs[i] = diagonal_probs(run_vqc(test.features[i], weights, spec, noise));

  MetricsReport report;
  report.model = model_kind_name(opts.model);
  report.noisy = opts.noise.has_value();
  report.backend = report.noisy ? "density" : "statevector";
  report.runs = opts.runs;
  report.test_rows = static_cast<std::uint32_t>(n);

  std::uint64_t total_draws = 0;
  std::uint64_t total_shots_used = 0;

  // per-point signed acceptance tallies for the M3 ROC score
  std::vector<double> m3_score(n, 0.0);

  for (std::uint32_t run = 0; run < opts.runs; ++run) {
    std::vector<int> pred(n);
    std::vector<double> score(n);
    std::uint64_t run_exec = 0;

    for (std::size_t i = 0; i < n; ++i) {
      Rng stream = rng.split((static_cast<std::uint64_t>(run) << 32) | i);
      if (opts.model == ModelKind::M3) {
        std::vector<int> attempt_weights;
        const DecisionOutcome out = classify_m3(probs[i], spec.qubits, policy, stream,
                                                &total_draws, &attempt_weights);
        Label final_label = out.label;
        if (!out.accepted)
          final_label = resolve_reject(out, attempt_weights, spec.qubits, opts.fallback);
        pred[i] = (final_label == Label::Class1) ? 1 : 0;
        if (out.accepted) m3_score[i] += (out.label == Label::Class1) ? 1.0 : -1.0;
        score[i] = 0.0;  // filled after all runs
        run_exec += out.shots_used;
        total_shots_used += out.shots_used;
        report.decisions.push_back(
            {run, static_cast<std::uint32_t>(i), final_label, out.shots_used, out.accepted});
      } else {
        const SampledClassification out =
            (opts.model == ModelKind::M1)
                ? classify_m1(probs[i], spec.qubits, opts.shots, stream, &total_draws)
                : classify_m2(probs[i], spec.qubits, opts.shots, stream, &total_draws);
        pred[i] = (out.label == Label::Class1) ? 1 : 0;
        score[i] = out.p_hat;
        run_exec += out.shots_used;
        total_shots_used += out.shots_used;
        report.decisions.push_back(
            {run, static_cast<std::uint32_t>(i), out.label, out.shots_used, true});
      }
    }

    RunRecord rec;
    rec.run = run;
    rec.scores = scores_from_confusion(confusion(test.labels, pred));
    rec.roc_auc = (opts.model == ModelKind::M3) ? 0.5 : roc_auc(test.labels, score);
    rec.executions = run_exec;
    report.per_run.push_back(rec);
  }

  for (const RunRecord& r : report.per_run) {
    report.mean_scores.accuracy += r.scores.accuracy / opts.runs;
    report.mean_scores.precision += r.scores.precision / opts.runs;
    report.mean_scores.recall += r.scores.recall / opts.runs;
    report.mean_scores.f1 += r.scores.f1 / opts.runs;
  }

  if (opts.model == ModelKind::M3) {
    // signed acceptance statistic over the runs, one score per point
    for (std::size_t i = 0; i < n; ++i) m3_score[i] /= static_cast<double>(opts.runs);
    report.mean_roc_auc = roc_auc(test.labels, m3_score);
    for (RunRecord& r : report.per_run) r.roc_auc = report.mean_roc_auc;
  } else {
    report.mean_roc_auc = 0.0;
    for (const RunRecord& r : report.per_run) report.mean_roc_auc += r.roc_auc / opts.runs;
  }

  report.total_draws = total_draws;
  report.avg_executions = static_cast<double>(total_shots_used) /
                          (static_cast<double>(opts.runs) * static_cast<double>(n));
  return report;
}

}  // namespace uqc
