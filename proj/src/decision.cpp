#include "uqc/decision.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace uqc {

uint128 binomial_u128(int n, int k) {
  if (n < 0 || n > 127) throw std::out_of_range("binomial_u128: n out of [0,127]");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // additive Pascal rows: no intermediate ever exceeds the binomial itself,
  // which stays below 2^n <= 2^127
  std::vector<uint128> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = std::min(i, k); j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

uint128 projector_trace_u128(int n_qubits, int r) {
  if (n_qubits < 1 || n_qubits > 127)
    throw std::out_of_range("projector_trace: n_qubits out of [1,127]");
  if (r < 1 || r > n_qubits) throw std::out_of_range("projector_trace: r out of [1,N]");
  uint128 acc = 0;
  for (int j = 0; j <= n_qubits - r; ++j) acc += binomial_u128(n_qubits, j);
  return acc;
}

double projector_trace(int n_qubits, int r) {
  return static_cast<double>(projector_trace_u128(n_qubits, r));
}

std::string u128_to_string(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

bool HammingProjector::accepts(std::uint64_t bits) const {
  return std::popcount(bits) <= n_qubits - r;
}

std::string label_name(Label l) {
  switch (l) {
    case Label::Class0: return "0";
    case Label::Class1: return "1";
    case Label::Reject: return "reject";
  }
  return "?";
}

void ThresholdPolicy::validate(int n_qubits) const {
  const int k = (n_qubits - 1) / 2;
  if (accept_level < k + 1 || accept_level > n_qubits)
    throw std::invalid_argument("ThresholdPolicy: accept_level outside [k+1, N]");
}

Label m2_vote(std::uint64_t bits, int n_qubits) {
  const int w = std::popcount(bits);
  return (2 * w >= n_qubits) ? Label::Class1 : Label::Class0;
}

Label m3_vote(std::uint64_t bits, int n_qubits, int accept_level) {
  const int w = std::popcount(bits);
  if (w >= accept_level) return Label::Class1;
  if (w <= n_qubits - accept_level) return Label::Class0;
  return Label::Reject;
}

namespace {
std::uint64_t draw(std::span<const double> probs, Rng& rng, std::uint64_t* tally) {
  const std::uint64_t bits = rng.sample_index(probs);
  if (tally) ++*tally;
  return bits;
}
}  // namespace

SampledClassification classify_m1(std::span<const double> probs, int n_qubits,
                                  std::uint32_t shots, Rng& rng, std::uint64_t* draw_tally) {
  if (shots < 1) throw std::invalid_argument("classify_m1: shots must be >= 1");
  std::uint32_t ones = 0;
  for (std::uint32_t t = 0; t < shots; ++t) {
    const std::uint64_t bits = draw(probs, rng, draw_tally);
    ones += static_cast<std::uint32_t>(bit_of(bits, 0, n_qubits));
  }
  SampledClassification r;
  r.p_hat = static_cast<double>(ones) / shots;
  r.label = (r.p_hat >= 0.5) ? Label::Class1 : Label::Class0;
  r.shots_used = shots;
  return r;
}

SampledClassification classify_m2(std::span<const double> probs, int n_qubits,
                                  std::uint32_t shots, Rng& rng, std::uint64_t* draw_tally) {
  if (shots < 1) throw std::invalid_argument("classify_m2: shots must be >= 1");
  std::uint32_t ones = 0;
  for (std::uint32_t t = 0; t < shots; ++t) {
    const std::uint64_t bits = draw(probs, rng, draw_tally);
    ones += (m2_vote(bits, n_qubits) == Label::Class1) ? 1 : 0;
  }
  SampledClassification r;
  r.p_hat = static_cast<double>(ones) / shots;
  r.label = (r.p_hat >= 0.5) ? Label::Class1 : Label::Class0;
  r.shots_used = shots;
  return r;
}

DecisionOutcome classify_m3(std::span<const double> probs, int n_qubits,
                            const ThresholdPolicy& policy, Rng& rng,
                            std::uint64_t* draw_tally, std::vector<int>* attempt_weights) {
  // safety stop for the unbounded mode; acceptance probability would have to
  // be below ~1e-7 for a healthy state to get near it
  const std::uint64_t cap =
      policy.max_attempts == 0 ? std::uint64_t{100'000'000} : policy.max_attempts;
  if (attempt_weights) attempt_weights->clear();
  for (std::uint64_t t = 1; t <= cap; ++t) {
    const std::uint64_t bits = draw(probs, rng, draw_tally);
    if (attempt_weights) attempt_weights->push_back(std::popcount(bits));
    const Label v = m3_vote(bits, n_qubits, policy.accept_level);
    if (v != Label::Reject)
      return {v, static_cast<std::uint32_t>(t), true};
  }
  if (policy.max_attempts == 0)
    throw std::runtime_error("classify_m3: unbounded loop exceeded safety cap");
  return {Label::Reject, policy.max_attempts, false};
}

Label resolve_reject(const DecisionOutcome& outcome, std::span<const int> attempt_weights,
                     int n_qubits, RejectFallback fallback) {
  if (outcome.label != Label::Reject)
    throw std::invalid_argument("resolve_reject: outcome was not a rejection");
  if (fallback == RejectFallback::FixedClass0) return Label::Class0;
  if (attempt_weights.empty())
    throw std::invalid_argument("resolve_reject: no attempts recorded");
  std::size_t ones = 0;
  for (int w : attempt_weights) ones += (2 * w >= n_qubits) ? 1 : 0;
  return (2 * ones >= attempt_weights.size()) ? Label::Class1 : Label::Class0;
}

double p_hat_from_observable(double expectation) { return 0.5 * (1.0 - expectation); }

}  // namespace uqc
