#include "uqc/theory.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "uqc/noise.hpp"

namespace uqc {

namespace {
void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

void check_odd(int n_qubits) {
  if (n_qubits < 1 || n_qubits % 2 == 0)
    throw std::invalid_argument("n_qubits must be odd (N = 2k+1)");
}
}  // namespace

double p_succ_oneshot(double delta) {
  check_unit(delta, "delta");
  return 0.5 * (1.0 + delta);
}

double p_succ_noisy_first_qubit(double delta, double eps) {
  check_unit(delta, "delta");
  check_unit(eps, "eps");
  return 0.5 * (1.0 + delta) - 0.5 * delta * eps;
}

double noise_coefficient(int n_qubits) {
  check_odd(n_qubits);
  const int k = (n_qubits - 1) / 2;
  if (n_qubits <= 127) {
    // the multiply happens in double: C(127,63)*(k+1) would overflow u128
    return static_cast<double>(binomial_u128(n_qubits, k)) * (k + 1) *
           std::ldexp(1.0, -n_qubits);
  }
  const double log_c = std::lgamma(n_qubits + 1.0) - std::lgamma(k + 1.0) -
                       std::lgamma(n_qubits - k + 1.0) + std::log(k + 1.0) -
                       n_qubits * std::numbers::ln2;
  return std::exp(log_c);
}

double p_succ_avg_noisy(int n_qubits, double delta, double eps) {
  check_unit(delta, "delta");
  check_unit(eps, "eps");
  return 0.5 * (1.0 + delta) - noise_coefficient(n_qubits) * delta * eps;
}

double stirling_coefficient(int k) {
  if (k < 1) throw std::invalid_argument("stirling_coefficient: k must be >= 1");
  return std::sqrt(static_cast<double>(k) / std::numbers::pi);
}

double p_lifted(double delta) {
  check_unit(delta, "delta");
  return 0.5 * (1.0 + delta);
}

double p_multishot(double p, std::uint64_t shots) {
  if (shots < 1) throw std::invalid_argument("p_multishot: shots must be >= 1");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  check_unit(p, "p");
  const double z = std::sqrt(static_cast<double>(shots)) * (p - 0.5) / std::sqrt(p * (1.0 - p));
  // Phi(z) via erfc, accurate to ~1e-15 over the needed range
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

std::pair<double, double> unambiguous_probs(int n_qubits, double delta, int accept_level) {
  check_odd(n_qubits);
  check_unit(delta, "delta");
  ThresholdPolicy{accept_level, 1}.validate(n_qubits);
  const double tr = projector_trace(n_qubits, accept_level);
  const double scale = std::ldexp(tr, -n_qubits);  // tr(Pi_l) / 2^N
  return {(1.0 + delta) * scale, (1.0 - delta) * scale};
}

double p_unambiguous(double p0, double p1) {
  if (p0 < 0.0 || p1 < 0.0) throw std::invalid_argument("p_unambiguous: negative probability");
  if (p0 + p1 <= 0.0)
    throw std::invalid_argument("p_unambiguous: degenerate policy (p0 + p1 = 0)");
  return p0 / (p0 + p1);
}

double expected_shots(int n_qubits, int accept_level) {
  check_odd(n_qubits);
  ThresholdPolicy{accept_level, 1}.validate(n_qubits);
  const uint128 half = uint128{1} << (n_qubits - 1);
  const uint128 tr = projector_trace_u128(n_qubits, accept_level);
  return static_cast<double>(half) / static_cast<double>(tr);
}

MixedState average_case_state(int n_qubits, double delta) {
  check_odd(n_qubits);
  check_unit(delta, "delta");
  if (n_qubits > 12) throw std::invalid_argument("average_case_state: dense build capped at 12");
  const int k = (n_qubits - 1) / 2;
  const std::size_t d = state_dim(n_qubits);
  const double lo = (1.0 + delta) / static_cast<double>(d);
  const double hi = (1.0 - delta) / static_cast<double>(d);
  std::vector<double> diag(d);
  for (std::size_t b = 0; b < d; ++b)
    diag[b] = (std::popcount(b) <= k) ? lo : hi;
  return MixedState::from_diagonal(n_qubits, diag);
}

MixedState lifted_state(int n_qubits, double delta) {
  check_unit(delta, "delta");
  if (n_qubits > 12) throw std::invalid_argument("lifted_state: dense build capped at 12");
  const std::size_t d = state_dim(n_qubits);
  std::vector<double> diag(d, 0.0);
  diag.front() = 0.5 * (1.0 + delta);
  diag.back() = 0.5 * (1.0 - delta);
  return MixedState::from_diagonal(n_qubits, diag);
}

McUnambiguousResult mc_unambiguous(int n_qubits, double delta, int accept_level, double eps,
                                   std::uint64_t trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("mc_unambiguous: trials must be >= 1");
  MixedState rho = average_case_state(n_qubits, delta);
  if (eps > 0.0) global_depolarize(rho, eps);
  const std::vector<double> probs = diagonal_probs(rho);

  const ThresholdPolicy policy{accept_level, 0};  // unbounded retries
  policy.validate(n_qubits);

  std::uint64_t class0 = 0;
  std::uint64_t draws = 0;
  double sum_shots = 0.0;
  double sum_shots_sq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng stream = rng.split(t);
    const DecisionOutcome out = classify_m3(probs, n_qubits, policy, stream, &draws);
    class0 += (out.label == Label::Class0) ? 1 : 0;
    sum_shots += out.shots_used;
    sum_shots_sq += static_cast<double>(out.shots_used) * out.shots_used;
  }

  McUnambiguousResult r;
  r.trials = trials;
  r.total_draws = draws;
  r.p_u = static_cast<double>(class0) / static_cast<double>(trials);
  r.p_u_stderr = std::sqrt(std::max(r.p_u * (1.0 - r.p_u), 0.0) / static_cast<double>(trials));
  r.mean_shots = sum_shots / static_cast<double>(trials);
  const double var =
      std::max(sum_shots_sq / static_cast<double>(trials) - r.mean_shots * r.mean_shots, 0.0);
  r.mean_shots_stderr = std::sqrt(var / static_cast<double>(trials));
  return r;
}

}  // namespace uqc
