#include "uqc/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "uqc/circuit.hpp"
#include "uqc/gates.hpp"

namespace uqc {

namespace {
void check_parameter(const Channel& ch) {
  if (!(ch.parameter >= 0.0 && ch.parameter <= 1.0))
    throw std::invalid_argument("Channel: parameter outside [0,1]");
}

std::vector<std::array<cplx, 4>> pauli_kraus(double p) {
  const double k0 = std::sqrt(1.0 - p);
  const double kp = std::sqrt(p / 3.0);
  return {
      {cplx{k0, 0}, cplx{0, 0}, cplx{0, 0}, cplx{k0, 0}},    // sqrt(1-p) I
      {cplx{0, 0}, cplx{kp, 0}, cplx{kp, 0}, cplx{0, 0}},    // sqrt(p/3) X
      {cplx{0, 0}, cplx{0, -kp}, cplx{0, kp}, cplx{0, 0}},   // sqrt(p/3) Y
      {cplx{kp, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-kp, 0}},   // sqrt(p/3) Z
  };
}
}  // namespace

std::vector<std::array<cplx, 4>> kraus_ops(const Channel& ch) {
  check_parameter(ch);
  switch (ch.kind) {
    case ChannelKind::DepolarizingPauli:
      return pauli_kraus(ch.parameter);
    case ChannelKind::DepolarizingMixing:
      // (1-e) rho + e 1/2 is the Pauli channel at p = 3e/4
      return pauli_kraus(0.75 * ch.parameter);
    case ChannelKind::AmplitudeDamping: {
      const double g = ch.parameter;
      return {
          {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{std::sqrt(1.0 - g), 0}},
          {cplx{0, 0}, cplx{std::sqrt(g), 0}, cplx{0, 0}, cplx{0, 0}},
      };
    }
    case ChannelKind::PhaseDamping: {
      const double g = ch.parameter;
      return {
          {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{std::sqrt(1.0 - g), 0}},
          {cplx{0, 0}, cplx{0, 0}, cplx{0, 0}, cplx{std::sqrt(g), 0}},
      };
    }
  }
  throw std::logic_error("kraus_ops: unknown channel kind");
}

void apply_channel(MixedState& rho, const Channel& ch, int qubit) {
  if (qubit < 0 || qubit >= rho.n_qubits)
    throw std::out_of_range("apply_channel: qubit index out of range");
  const auto ks = kraus_ops(ch);
  MixedState out;
  out.n_qubits = rho.n_qubits;
  out.matrix.assign(rho.matrix.size(), cplx{0.0, 0.0});
  for (const auto& k : ks) apply_2x2_sandwich_add(rho, k, qubit, out);
  rho = std::move(out);
}

void global_depolarize(MixedState& rho, double eps) {
  const Channel ch = Channel::depolarizing_mixing(eps);
  check_parameter(ch);
  for (int q = 0; q < rho.n_qubits; ++q) apply_channel(rho, ch, q);
}

Circuit noisy_transform(const Circuit& circuit, const NoiseSpec& spec) {
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.ops.reserve(circuit.ops.size() * (1 + 2 * spec.channels.size()));
  for (const auto& op : circuit.ops) {
    out.ops.push_back(op);
    if (!std::holds_alternative<Gate>(op)) continue;
    const Gate& g = std::get<Gate>(op);
    for (int q = 0; q < circuit.n_qubits; ++q) {
      if (!g.touches(q)) continue;
      for (const Channel& ch : spec.channels) out.ops.push_back(ChannelApp{ch, q});
    }
  }
  return out;
}

std::string channel_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::DepolarizingPauli: return "depolarizing";
    case ChannelKind::DepolarizingMixing: return "depolarizing_mixing";
    case ChannelKind::AmplitudeDamping: return "amplitude_damping";
    case ChannelKind::PhaseDamping: return "phase_damping";
  }
  return "?";
}

ChannelKind channel_kind_from_name(const std::string& name) {
  if (name == "depolarizing") return ChannelKind::DepolarizingPauli;
  if (name == "depolarizing_mixing") return ChannelKind::DepolarizingMixing;
  if (name == "amplitude_damping") return ChannelKind::AmplitudeDamping;
  if (name == "phase_damping") return ChannelKind::PhaseDamping;
  throw std::invalid_argument("unknown channel kind: " + name);
}

}  // namespace uqc
