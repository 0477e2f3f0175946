#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "uqc/circuit.hpp"
#include "uqc/rng.hpp"

namespace uqc {

// Geometry of the classifier circuit: one qubit per encoded feature,
// feature-map layers, ansatz (re-uploading) layers.
struct CircuitSpec {
  int qubits = 3;
  int feature_map_layers = 1;
  int ansatz_layers = 2;

  void validate() const;
};

// Trainable rotation angles, shape (ansatz_layers + 1) x qubits; row 0 is the
// initial rotation column, row l the column closing re-uploading layer l.
struct AnsatzWeights {
  int qubits = 0;
  int layers = 0;  // re-uploading layers (rows = layers + 1)
  std::vector<double> theta;

  static AnsatzWeights zeros(int qubits, int layers);
  static AnsatzWeights random_init(int qubits, int layers, Rng& rng);  // uniform [0, pi)

  double& at(int layer, int qubit) { return theta[layer * qubits + qubit]; }
  double at(int layer, int qubit) const { return theta[layer * qubits + qubit]; }
  std::size_t size() const { return theta.size(); }
  void validate() const;
};

// Layered ZZ-entangling feature map. Per layer: H on every qubit,
// P(2 x_j) on every qubit, then over adjacent pairs (j, j+1) ascending:
// CNOT(j+1 -> j), P(2 (pi - x_j)(pi - x_{j+1})) on qubit j+1, CNOT(j+1 -> j).
Circuit build_feature_map(std::span<const double> x, int layers);

// Reverse-entangling, data re-uploading ansatz. Initial column RY(theta_0j);
// per layer: RY(x_j) on every qubit, CNOT entanglers over adjacent pairs in
// descending order (control = j+1, target = j), closing column RY(theta_lj).
Circuit build_ansatz(std::span<const double> x, const AnsatzWeights& weights);

// Full classifier circuit U_A(x, theta) U_FM(x).
Circuit build_vqc_circuit(std::span<const double> x, const AnsatzWeights& weights,
                          const CircuitSpec& spec);

// Closed-form gate counts, asserted exactly in tests.
std::size_t feature_map_gate_count(int qubits, int layers);
std::size_t ansatz_gate_count(int qubits, int layers);

using StateOutput = std::variant<PureState, MixedState>;

// Runs the classifier from |0...0>. A NoiseSpec forces the MixedState
// backend with channels interleaved after every gate.
StateOutput run_vqc(std::span<const double> x, const AnsatzWeights& weights,
                    const CircuitSpec& spec, const NoiseSpec* noise = nullptr);

std::vector<double> diagonal_probs(const StateOutput& out);

// Measured observable for training: Z on qubit 0 (model M1) or the mean of
// Z over all qubits (model M2).
enum class Observable { Z0, MeanZ };

double observable_value(const StateOutput& out, Observable obs);
double observable_value(const PureState& psi, Observable obs);

// d<O>/d theta_{l,j} via the two-point shift (+-pi/2) exact for RY
// generators; noiseless backend only. Each evaluated circuit adds one to
// *executions when given.
AnsatzWeights parameter_shift_grad(std::span<const double> x, const AnsatzWeights& weights,
                                   const CircuitSpec& spec, Observable obs,
                                   std::uint64_t* executions = nullptr);

}  // namespace uqc
