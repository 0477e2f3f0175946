#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "uqc/dataset.hpp"
#include "uqc/decision.hpp"
#include "uqc/vqc.hpp"

namespace uqc {

struct AdamParams {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Gain sequences a_k = a / (k+1+A)^alpha, c_k = c / (k+1)^gamma.
struct SpsaParams {
  double a = 0.2;
  double c = 0.2;
  double stability = 10.0;  // A
  double alpha = 0.602;
  double gamma = 0.101;
};

struct TrainConfig {
  std::variant<AdamParams, SpsaParams> optimizer = AdamParams{};
  int batch_size = 8;
  int max_epochs = 300;
  int patience = 20;       // early stop after this many epochs without
  double min_delta = 1e-5; // an improvement larger than min_delta
  std::uint64_t seed = 42;

  void validate() const;
  bool is_spsa() const { return std::holds_alternative<SpsaParams>(optimizer); }
};

// Binary cross entropy with p_hat clipped to [1e-7, 1 - 1e-7].
double bce_cost(double p_hat, int label);
double bce_grad_p(double p_hat, int label);  // d cost / d p_hat at the clipped point

struct EpochRecord {
  int epoch = 0;
  double cost = 0.0;
  std::uint64_t executions = 0;  // circuit executions spent in this epoch
};

struct TrainResult {
  AnsatzWeights weights;
  std::vector<EpochRecord> history;
  std::uint64_t total_executions = 0;
  bool diverged = false;
};

// Which smooth probability map drives the cost: M1 reads <Z_0>, M2 the mean
// of <Z_i>; p_hat = (1 - <O>)/2 in both cases. M3 shares M2-trained weights.
enum class ModelVariant { M1, M2 };

// Minimizes mean BCE over shuffled batches. Adam uses parameter-shift
// gradients; SPSA uses two-point perturbation on the same smooth loss.
// Returns the best-cost weights seen; a non-finite cost aborts with the last
// good weights.
TrainResult train(const Dataset& train_data, const CircuitSpec& spec, const TrainConfig& cfg,
                  ModelVariant variant, Rng& rng);

// SPSA over the stochastic single-attempt unambiguous loss: an accepted
// label scores BCE at p_hat in {clip, 1-clip}, a rejection scores BCE at
// p_hat = 0.5. Tracks sampled executions per epoch. Throws unless the
// config selects SPSA (the loss has no gradient path).
TrainResult train_m3_constrained(const Dataset& train_data, const CircuitSpec& spec,
                                 const TrainConfig& cfg, const ThresholdPolicy& policy,
                                 Rng& rng);

std::string model_variant_name(ModelVariant v);

}  // namespace uqc
