#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uqc/rng.hpp"
#include "uqc/states.hpp"

namespace uqc {

using uint128 = unsigned __int128;

// Exact binomial coefficient; supported up to n = 127 (the sums below stay
// within 128 bits because they are bounded by 2^n).
uint128 binomial_u128(int n, int k);

// tr(Pi_r) = sum_{j=0}^{N-r} C(N, j), the number of bitstrings the projector
// accepts. Exact integer for 1 <= r <= N <= 127.
uint128 projector_trace_u128(int n_qubits, int r);
double projector_trace(int n_qubits, int r);

std::string u128_to_string(uint128 v);

// Diagonal projector onto bitstrings within Hamming distance N-r of the
// all-zero string.
struct HammingProjector {
  int n_qubits;
  int r;

  bool accepts(std::uint64_t bits) const;
  uint128 trace() const { return projector_trace_u128(n_qubits, r); }
};

enum class Label : std::uint8_t { Class0 = 0, Class1 = 1, Reject = 2 };

std::string label_name(Label l);

// Per-shot classification result with execution accounting.
struct DecisionOutcome {
  Label label = Label::Reject;
  std::uint32_t shots_used = 0;
  bool accepted = false;
};

// Acceptance parameter l and retry cap T_c for the unambiguous loop.
// accept_level = n_qubits reproduces the experiments' all-identical rule;
// max_attempts = 0 means unbounded (Monte Carlo oracles only).
struct ThresholdPolicy {
  int accept_level;
  std::uint32_t max_attempts;

  static ThresholdPolicy all_identical(int n_qubits, std::uint32_t max_attempts = 50) {
    return {n_qubits, max_attempts};
  }
  void validate(int n_qubits) const;
};

// Majority rule on one bitstring: Class1 iff weight > N/2 (ties at even N
// resolve to Class1). Never returns Reject.
Label m2_vote(std::uint64_t bits, int n_qubits);

// Ternary rule on one bitstring: weight >= l -> Class1, weight <= N-l ->
// Class0, otherwise Reject.
Label m3_vote(std::uint64_t bits, int n_qubits, int accept_level);

struct SampledClassification {
  Label label = Label::Class0;
  double p_hat = 0.0;  // estimated P(class 1)
  std::uint32_t shots_used = 0;
};

// Model M1: T full-register samples, only qubit 0 read; p_hat = ones / T;
// Class1 iff p_hat >= 0.5 (ties resolve to Class1).
SampledClassification classify_m1(std::span<const double> probs, int n_qubits,
                                  std::uint32_t shots, Rng& rng,
                                  std::uint64_t* draw_tally = nullptr);

// Model M2: T samples, each voting by majority weight; p_hat = class-1
// votes / T.
SampledClassification classify_m2(std::span<const double> probs, int n_qubits,
                                  std::uint32_t shots, Rng& rng,
                                  std::uint64_t* draw_tally = nullptr);

// Model M3 (unambiguous): one bitstring per attempt until m3_vote accepts or
// max_attempts runs out. Every attempt counts as exactly one execution.
// attempt_weights, when given, records the weight of every drawn bitstring
// (used by the reject fallback).
DecisionOutcome classify_m3(std::span<const double> probs, int n_qubits,
                            const ThresholdPolicy& policy, Rng& rng,
                            std::uint64_t* draw_tally = nullptr,
                            std::vector<int>* attempt_weights = nullptr);

// What to output after max_attempts rejections.
enum class RejectFallback { MajorityOfAttempts, FixedClass0 };

Label resolve_reject(const DecisionOutcome& outcome, std::span<const int> attempt_weights,
                     int n_qubits, RejectFallback fallback);

// Smooth training-time probability maps. Ansatz output drives
// p_hat(class 1) = (1 - <O>)/2 so the all-zeros state gives p_hat = 0.
double p_hat_from_observable(double expectation);

}  // namespace uqc
