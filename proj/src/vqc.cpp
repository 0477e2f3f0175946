#include "uqc/vqc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uqc {

void CircuitSpec::validate() const {
  if (qubits < 2) throw std::invalid_argument("CircuitSpec: qubits must be >= 2");
  if (feature_map_layers < 1)
    throw std::invalid_argument("CircuitSpec: feature_map_layers must be >= 1");
  if (ansatz_layers < 1) throw std::invalid_argument("CircuitSpec: ansatz_layers must be >= 1");
}

AnsatzWeights AnsatzWeights::zeros(int qubits, int layers) {
  AnsatzWeights w;
  w.qubits = qubits;
  w.layers = layers;
  w.theta.assign(static_cast<std::size_t>(layers + 1) * qubits, 0.0);
  return w;
}

AnsatzWeights AnsatzWeights::random_init(int qubits, int layers, Rng& rng) {
  AnsatzWeights w = zeros(qubits, layers);
  for (double& t : w.theta) t = rng.uniform(0.0, std::numbers::pi);
  return w;
}

void AnsatzWeights::validate() const {
  if (qubits < 1 || layers < 1) throw std::invalid_argument("AnsatzWeights: bad shape");
  if (theta.size() != static_cast<std::size_t>(layers + 1) * qubits)
    throw std::invalid_argument("AnsatzWeights: shape mismatch");
  for (double t : theta)
    if (!std::isfinite(t)) throw std::invalid_argument("AnsatzWeights: non-finite entry");
}

Circuit build_feature_map(std::span<const double> x, int layers) {
  const int k = static_cast<int>(x.size());
  if (k < 2) throw std::invalid_argument("build_feature_map: needs k >= 2 features");
  if (layers < 1) throw std::invalid_argument("build_feature_map: layers must be >= 1");

  const double pi = std::numbers::pi;
  Circuit c;
  c.n_qubits = k;
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < k; ++q) c.push(Gate::h(q));
    for (int q = 0; q < k; ++q) c.push(Gate::p(q, 2.0 * x[q]));
    for (int j = 0; j + 1 < k; ++j) {
      c.push(Gate::cnot(j + 1, j));
      c.push(Gate::p(j + 1, 2.0 * (pi - x[j]) * (pi - x[j + 1])));
      c.push(Gate::cnot(j + 1, j));
    }
  }
  return c;
}

Circuit build_ansatz(std::span<const double> x, const AnsatzWeights& weights) {
  weights.validate();
  const int k = weights.qubits;
  if (static_cast<int>(x.size()) != k)
    throw std::invalid_argument("build_ansatz: feature count must equal qubit count");

  Circuit c;
  c.n_qubits = k;
  for (int q = 0; q < k; ++q) c.push(Gate::ry(q, weights.at(0, q)));
  for (int l = 1; l <= weights.layers; ++l) {
    for (int q = 0; q < k; ++q) c.push(Gate::ry(q, x[q]));  // data re-uploading
    for (int j = k - 2; j >= 0; --j) c.push(Gate::cnot(j + 1, j));
    for (int q = 0; q < k; ++q) c.push(Gate::ry(q, weights.at(l, q)));
  }
  return c;
}

Circuit build_vqc_circuit(std::span<const double> x, const AnsatzWeights& weights,
                          const CircuitSpec& spec) {
  spec.validate();
  if (weights.qubits != spec.qubits || weights.layers != spec.ansatz_layers)
    throw std::invalid_argument("build_vqc_circuit: weights do not match spec");
  Circuit c = build_feature_map(x, spec.feature_map_layers);
  Circuit a = build_ansatz(x, weights);
  c.ops.insert(c.ops.end(), a.ops.begin(), a.ops.end());
  return c;
}

std::size_t feature_map_gate_count(int qubits, int layers) {
  // per layer: k H + k P + (k-1) * (CNOT, P, CNOT)
  return static_cast<std::size_t>(layers) * (2 * qubits + 3 * (qubits - 1));
}

std::size_t ansatz_gate_count(int qubits, int layers) {
  // initial column + per layer: k RY re-upload, (k-1) CNOT, k RY
  return static_cast<std::size_t>(qubits) +
         static_cast<std::size_t>(layers) * (2 * qubits + (qubits - 1));
}

StateOutput run_vqc(std::span<const double> x, const AnsatzWeights& weights,
                    const CircuitSpec& spec, const NoiseSpec* noise) {
  Circuit c = build_vqc_circuit(x, weights, spec);
  if (noise == nullptr) return run_pure(c);
  return run_mixed(noisy_transform(c, *noise));
}

std::vector<double> diagonal_probs(const StateOutput& out) {
  if (std::holds_alternative<PureState>(out))
    return diagonal_probs(std::get<PureState>(out));
  return diagonal_probs(std::get<MixedState>(out));
}

double observable_value(const PureState& psi, Observable obs) {
  if (obs == Observable::Z0) return expval_z(psi, 0);
  double s = 0.0;
  for (int q = 0; q < psi.n_qubits; ++q) s += expval_z(psi, q);
  return s / psi.n_qubits;
}

double observable_value(const StateOutput& out, Observable obs) {
  if (std::holds_alternative<PureState>(out))
    return observable_value(std::get<PureState>(out), obs);
  const MixedState& rho = std::get<MixedState>(out);
  if (obs == Observable::Z0) return expval_z(rho, 0);
  double s = 0.0;
  for (int q = 0; q < rho.n_qubits; ++q) s += expval_z(rho, q);
  return s / rho.n_qubits;
}

AnsatzWeights parameter_shift_grad(std::span<const double> x, const AnsatzWeights& weights,
                                   const CircuitSpec& spec, Observable obs,
                                   std::uint64_t* executions) {
  const double shift = std::numbers::pi / 2.0;
  AnsatzWeights grad = AnsatzWeights::zeros(weights.qubits, weights.layers);
  AnsatzWeights shifted = weights;
  for (std::size_t i = 0; i < weights.theta.size(); ++i) {
    shifted.theta[i] = weights.theta[i] + shift;
    const double plus = observable_value(run_vqc(x, shifted, spec), obs);
    shifted.theta[i] = weights.theta[i] - shift;
    const double minus = observable_value(run_vqc(x, shifted, spec), obs);
    shifted.theta[i] = weights.theta[i];
    grad.theta[i] = 0.5 * (plus - minus);
    if (executions) *executions += 2;
  }
  return grad;
}

}  // namespace uqc
