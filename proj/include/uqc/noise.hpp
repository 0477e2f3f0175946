#pragma once

#include <array>
#include <string>
#include <vector>

#include "uqc/states.hpp"

namespace uqc {

struct Circuit;  // defined in circuit.hpp

// Single-qubit noise channels. Two depolarizing parameterizations coexist:
//   DepolarizingPauli(p):  rho -> (1-p) rho + (p/3)(X rho X + Y rho Y + Z rho Z)
//   DepolarizingMixing(e): rho -> (1-e) rho + e * 1/2
// They coincide under e = 4p/3 (unit-tested identity).
enum class ChannelKind { DepolarizingPauli, DepolarizingMixing, AmplitudeDamping, PhaseDamping };

struct Channel {
  ChannelKind kind;
  double parameter;  // probability in [0,1]

  static Channel depolarizing_pauli(double p) { return {ChannelKind::DepolarizingPauli, p}; }
  static Channel depolarizing_mixing(double eps) { return {ChannelKind::DepolarizingMixing, eps}; }
  static Channel amplitude_damping(double gamma) { return {ChannelKind::AmplitudeDamping, gamma}; }
  static Channel phase_damping(double gamma) { return {ChannelKind::PhaseDamping, gamma}; }
};

// Kraus operators of the channel; completeness sum K_i^dag K_i = 1 holds
// within 1e-12 for any parameter in [0,1].
std::vector<std::array<cplx, 4>> kraus_ops(const Channel& ch);

// rho -> sum_i K_i rho K_i^dagger on the given qubit.
void apply_channel(MixedState& rho, const Channel& ch, int qubit);

// DepolarizingMixing(eps) applied independently to every qubit.
void global_depolarize(MixedState& rho, double eps);

// Ordered channel list applied per touched qubit after each gate; default
// sequence is depolarizing -> amplitude damping -> phase damping.
struct NoiseSpec {
  std::vector<Channel> channels;

  static NoiseSpec defaults() {
    return {{Channel::depolarizing_pauli(0.02), Channel::amplitude_damping(0.05),
             Channel::phase_damping(0.03)}};
  }
};

// Interleaves the spec's channels after every gate, on every qubit the gate
// touches (CNOT contributes channels on both control and target, ascending
// qubit order).
Circuit noisy_transform(const Circuit& circuit, const NoiseSpec& spec);

std::string channel_name(ChannelKind kind);
ChannelKind channel_kind_from_name(const std::string& name);

}  // namespace uqc
