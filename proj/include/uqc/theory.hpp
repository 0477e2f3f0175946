#pragma once

#include <cstdint>
#include <utility>

#include "uqc/decision.hpp"
#include "uqc/states.hpp"

namespace uqc {

// Closed forms for the success probability of the trained classifier and the
// unambiguous acceptance loop, parameterized by the odd qubit count
// N = 2k+1, the separation level delta, the per-qubit depolarizing
// probability eps, the acceptance parameter l and the shot count T.

// One-shot success probability (1 + delta) / 2.
double p_succ_oneshot(double delta);

// First-qubit measurement under per-qubit depolarizing:
// (1 + delta)/2 - (delta/2) eps. Exact, not just first order.
double p_succ_noisy_first_qubit(double delta, double eps);

// First-order coefficient C(N,k)(k+1)/2^N of the average-case expansion.
// Exact 128-bit arithmetic for N <= 127, log-gamma beyond.
double noise_coefficient(int n_qubits);

// Two-term expansion (1 + delta)/2 - coefficient * delta * eps; valid to
// O(eps^2).
double p_succ_avg_noisy(int n_qubits, double delta, double eps);

// Stirling approximation sqrt(k / pi) of noise_coefficient(2k+1).
double stirling_coefficient(int k);

// Lifted training: success probability (1 + delta)/2 (noise enters only at
// O(eps^2); the constant term is what this returns).
double p_lifted(double delta);

// Majority vote over T shots, normal-CDF form
// Phi(sqrt(T) (p - 1/2) / sqrt(p (1-p))). p = 0 or 1 returns 0/1 exactly.
double p_multishot(double p, std::uint64_t shots);

// Zeroth-order acceptance probabilities of the average-case state:
// p0 = (1+delta)/2^N tr(Pi_l), p1 = (1-delta)/2^N tr(Pi_l).
std::pair<double, double> unambiguous_probs(int n_qubits, double delta, int accept_level);

// p^u = p0 / (p0 + p1).
double p_unambiguous(double p0, double p1);

// E(T) = 2^{N-1} / tr(Pi_l), exact ratio of 128-bit integers. The <= 2
// bound holds asymptotically in N for l near k+1 but fails at small N
// (N=5, l=4 gives 16/6).
double expected_shots(int n_qubits, int accept_level);

// Diagonal state putting mass (1+delta)/2 uniformly on weight <= k strings
// and (1-delta)/2 on the rest ("same weight for each bitstring").
MixedState average_case_state(int n_qubits, double delta);

// (1+delta)/2 |0...0><0...0| + (1-delta)/2 |1...1><1...1|.
MixedState lifted_state(int n_qubits, double delta);

// Monte Carlo oracle: samples the (optionally depolarized) average-case
// state under the unambiguous loop with unbounded retries.
struct McUnambiguousResult {
  double p_u = 0.0;
  double p_u_stderr = 0.0;
  double mean_shots = 0.0;
  double mean_shots_stderr = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t total_draws = 0;
};

McUnambiguousResult mc_unambiguous(int n_qubits, double delta, int accept_level, double eps,
                                   std::uint64_t trials, Rng& rng);

}  // namespace uqc
