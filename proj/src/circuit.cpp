#include "uqc/circuit.hpp"

#include <stdexcept>

namespace uqc {

bool Circuit::has_channels() const {
  for (const auto& op : ops)
    if (std::holds_alternative<ChannelApp>(op)) return true;
  return false;
}

std::size_t Circuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& op : ops) n += std::holds_alternative<Gate>(op) ? 1 : 0;
  return n;
}

std::size_t Circuit::channel_count() const { return ops.size() - gate_count(); }

void run_inplace(const Circuit& circuit, PureState& psi) {
  if (psi.n_qubits != circuit.n_qubits)
    throw std::invalid_argument("run_inplace: register width mismatch");
  for (const auto& op : circuit.ops) {
    if (std::holds_alternative<ChannelApp>(op))
      throw std::invalid_argument("run_inplace: noise channel requested on PureState backend");
    apply_gate(psi, std::get<Gate>(op));
  }
}

void run_inplace(const Circuit& circuit, MixedState& rho) {
  if (rho.n_qubits != circuit.n_qubits)
    throw std::invalid_argument("run_inplace: register width mismatch");
  for (const auto& op : circuit.ops) {
    if (std::holds_alternative<Gate>(op))
      apply_gate(rho, std::get<Gate>(op));
    else {
      const auto& c = std::get<ChannelApp>(op);
      apply_channel(rho, c.channel, c.qubit);
    }
  }
}

PureState run_pure(const Circuit& circuit) {
  PureState psi = PureState::zero(circuit.n_qubits);
  run_inplace(circuit, psi);
  return psi;
}

MixedState run_mixed(const Circuit& circuit) {
  MixedState rho = MixedState::zero(circuit.n_qubits);
  run_inplace(circuit, rho);
  return rho;
}

}  // namespace uqc
