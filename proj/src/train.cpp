#include "uqc/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace uqc {

namespace {

constexpr double kProbClip = 1e-7;

double clip_prob(double p) { return std::clamp(p, kProbClip, 1.0 - kProbClip); }

std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_u64() % (i + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

void check_features(const Dataset& data, const CircuitSpec& spec) {
  if (data.size() == 0) throw std::invalid_argument("train: empty dataset");
  if (data.feature_count() != static_cast<std::size_t>(spec.qubits))
    throw std::invalid_argument("train: feature count must equal qubit count");
}

// mean smooth BCE over the full set; one execution per point
double full_cost(const Dataset& data, const CircuitSpec& spec, const AnsatzWeights& w,
                 Observable obs, std::uint64_t& executions) {
  double acc = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double e = observable_value(run_vqc(data.features[i], w, spec), obs);
    ++executions;
    acc += bce_cost(p_hat_from_observable(e), data.labels[i]);
  }
  return acc / static_cast<double>(data.size());
}

struct EarlyStop {
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;

  // true when the run should stop
  bool update(double cost, int patience, double min_delta) {
    if (cost < best - min_delta) {
      best = cost;
      stall = 0;
      return false;
    }
    return ++stall >= patience;
  }
};

}  // namespace

void TrainConfig::validate() const {
  if (batch_size < 1) throw std::invalid_argument("TrainConfig: batch_size must be >= 1");
  if (max_epochs < 0) throw std::invalid_argument("TrainConfig: max_epochs must be >= 0");
  if (patience < 1) throw std::invalid_argument("TrainConfig: patience must be >= 1");
}

double bce_cost(double p_hat, int label) {
  const double p = clip_prob(p_hat);
  return label == 1 ? -std::log(p) : -std::log(1.0 - p);
}

double bce_grad_p(double p_hat, int label) {
  const double p = clip_prob(p_hat);
  return label == 1 ? -1.0 / p : 1.0 / (1.0 - p);
}

TrainResult train(const Dataset& train_data, const CircuitSpec& spec, const TrainConfig& cfg,
                  ModelVariant variant, Rng& rng) {
  cfg.validate();
  spec.validate();
  check_features(train_data, spec);

  const Observable obs = (variant == ModelVariant::M1) ? Observable::Z0 : Observable::MeanZ;
  Rng init_rng = rng.split(0);
  AnsatzWeights weights = AnsatzWeights::random_init(spec.qubits, spec.ansatz_layers, init_rng);
  AnsatzWeights best_weights = weights;

  const std::size_t dim = weights.size();
  std::vector<double> m(dim, 0.0), v(dim, 0.0);  // Adam moments
  std::uint64_t adam_step = 0;
  std::uint64_t spsa_step = 0;

  TrainResult result;
  EarlyStop stop;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::uint64_t exec_epoch = 0;
    Rng epoch_rng = rng.split(1000 + static_cast<std::uint64_t>(epoch));
    const auto order = shuffled_indices(train_data.size(), epoch_rng);

    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const std::size_t bs = end - start;

      if (!cfg.is_spsa()) {
        // parameter-shift gradient of the mean batch BCE
        std::vector<double> grad(dim, 0.0);
        for (std::size_t i = start; i < end; ++i) {
          const auto& x = train_data.features[order[i]];
          const int y = train_data.labels[order[i]];
          const double e = observable_value(run_vqc(x, weights, spec), obs);
          ++exec_epoch;
          const double dc_dp = bce_grad_p(p_hat_from_observable(e), y);
          const AnsatzWeights de = parameter_shift_grad(x, weights, spec, obs, &exec_epoch);
          for (std::size_t j = 0; j < dim; ++j)
            grad[j] += dc_dp * (-0.5) * de.theta[j] / static_cast<double>(bs);
        }
        const auto& ap = std::get<AdamParams>(cfg.optimizer);
        ++adam_step;
        const double bc1 = 1.0 - std::pow(ap.beta1, static_cast<double>(adam_step));
        const double bc2 = 1.0 - std::pow(ap.beta2, static_cast<double>(adam_step));
        for (std::size_t j = 0; j < dim; ++j) {
          m[j] = ap.beta1 * m[j] + (1.0 - ap.beta1) * grad[j];
          v[j] = ap.beta2 * v[j] + (1.0 - ap.beta2) * grad[j] * grad[j];
          weights.theta[j] -= ap.lr * (m[j] / bc1) / (std::sqrt(v[j] / bc2) + ap.eps);
        }
      } else {
        const auto& sp = std::get<SpsaParams>(cfg.optimizer);
        const double ck = sp.c / std::pow(static_cast<double>(spsa_step) + 1.0, sp.gamma);
        const double ak =
            sp.a / std::pow(static_cast<double>(spsa_step) + 1.0 + sp.stability, sp.alpha);
        Rng step_rng = rng.split(2'000'000 + spsa_step);
        std::vector<int> delta(dim);
        for (auto& d : delta) d = step_rng.rademacher();

        auto batch_loss = [&](const AnsatzWeights& w) {
          double acc = 0.0;
          for (std::size_t i = start; i < end; ++i) {
            const double e =
                observable_value(run_vqc(train_data.features[order[i]], w, spec), obs);
            ++exec_epoch;
            acc += bce_cost(p_hat_from_observable(e), train_data.labels[order[i]]);
          }
          return acc / static_cast<double>(bs);
        };

        AnsatzWeights probe = weights;
        for (std::size_t j = 0; j < dim; ++j) probe.theta[j] = weights.theta[j] + ck * delta[j];
        const double lp = batch_loss(probe);
        for (std::size_t j = 0; j < dim; ++j) probe.theta[j] = weights.theta[j] - ck * delta[j];
        const double lm = batch_loss(probe);
        for (std::size_t j = 0; j < dim; ++j)
          weights.theta[j] -= ak * (lp - lm) / (2.0 * ck * delta[j]);
        ++spsa_step;
      }
    }

    const double cost = full_cost(train_data, spec, weights, obs, exec_epoch);
    result.history.push_back({epoch, cost, exec_epoch});
    result.total_executions += exec_epoch;

    if (!std::isfinite(cost)) {
      result.diverged = true;
      break;
    }
    if (cost < stop.best) best_weights = weights;
    if (stop.update(cost, cfg.patience, cfg.min_delta)) break;
  }

  result.weights = result.history.empty() ? weights : best_weights;
  return result;
}

TrainResult train_m3_constrained(const Dataset& train_data, const CircuitSpec& spec,
                                 const TrainConfig& cfg, const ThresholdPolicy& policy,
                                 Rng& rng) {
  cfg.validate();
  spec.validate();
  check_features(train_data, spec);
  if (!cfg.is_spsa())
    throw std::invalid_argument(
        "train_m3_constrained: sampled loss has no gradient path; select SPSA");
  policy.validate(spec.qubits);
  if (policy.max_attempts == 0)
    throw std::invalid_argument("train_m3_constrained: max_attempts must be >= 1");

  const auto& sp = std::get<SpsaParams>(cfg.optimizer);
  Rng init_rng = rng.split(0);
  AnsatzWeights weights = AnsatzWeights::random_init(spec.qubits, spec.ansatz_layers, init_rng);
  AnsatzWeights best_weights = weights;

  const std::size_t dim = weights.size();
  std::uint64_t step = 0;

  TrainResult result;
  EarlyStop stop;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::uint64_t exec_epoch = 0;
    double cost_sum = 0.0;
    std::size_t cost_terms = 0;
    Rng epoch_rng = rng.split(1000 + static_cast<std::uint64_t>(epoch));
    const auto order = shuffled_indices(train_data.size(), epoch_rng);

    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const std::size_t bs = end - start;

      const double ck = sp.c / std::pow(static_cast<double>(step) + 1.0, sp.gamma);
      const double ak =
          sp.a / std::pow(static_cast<double>(step) + 1.0 + sp.stability, sp.alpha);
      Rng step_rng = rng.split(2'000'000 + step);
      std::vector<int> delta(dim);
      for (auto& d : delta) d = step_rng.rademacher();

      // single-attempt unambiguous loss: accepted labels hit the BCE rails,
      // rejects sit at maximal uncertainty
      auto sampled_loss = [&](const AnsatzWeights& w, std::uint64_t eval_key) {
        double acc = 0.0;
        for (std::size_t i = start; i < end; ++i) {
          const auto probs = diagonal_probs(run_vqc(train_data.features[order[i]], w, spec));
          Rng point_rng = step_rng.split(eval_key * 1'000'003 + order[i]);
          const DecisionOutcome out =
              classify_m3(probs, spec.qubits, policy, point_rng, &exec_epoch);
          double p_hat = 0.5;
          if (out.accepted)
            p_hat = (out.label == Label::Class1) ? 1.0 - kProbClip : kProbClip;
          acc += bce_cost(p_hat, train_data.labels[order[i]]);
        }
        return acc / static_cast<double>(bs);
      };

      AnsatzWeights probe = weights;
      for (std::size_t j = 0; j < dim; ++j) probe.theta[j] = weights.theta[j] + ck * delta[j];
      const double lp = sampled_loss(probe, 1);
      for (std::size_t j = 0; j < dim; ++j) probe.theta[j] = weights.theta[j] - ck * delta[j];
      const double lm = sampled_loss(probe, 2);
      for (std::size_t j = 0; j < dim; ++j)
        weights.theta[j] -= ak * (lp - lm) / (2.0 * ck * delta[j]);
      ++step;

      cost_sum += 0.5 * (lp + lm);
      ++cost_terms;
    }

    const double cost = cost_terms ? cost_sum / static_cast<double>(cost_terms) : 0.0;
    result.history.push_back({epoch, cost, exec_epoch});
    result.total_executions += exec_epoch;

    if (!std::isfinite(cost)) {
      result.diverged = true;
      break;
    }
    if (cost < stop.best) best_weights = weights;
    if (stop.update(cost, cfg.patience, cfg.min_delta)) break;
  }

  result.weights = result.history.empty() ? weights : best_weights;
  return result;
}

std::string model_variant_name(ModelVariant v) {
  return v == ModelVariant::M1 ? "m1" : "m2";
}

}  // namespace uqc
