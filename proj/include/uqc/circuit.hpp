#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "uqc/gates.hpp"
#include "uqc/noise.hpp"

namespace uqc {

struct ChannelApp {
  Channel channel;
  int qubit;
};

using CircuitOp = std::variant<Gate, ChannelApp>;

// Ordered list of gate applications and (after noisy_transform) channel
// applications on a fixed register width.
struct Circuit {
  int n_qubits = 0;
  std::vector<CircuitOp> ops;

  void push(const Gate& g) { ops.push_back(g); }
  void push(const ChannelApp& c) { ops.push_back(c); }

  bool has_channels() const;
  std::size_t gate_count() const;
  std::size_t channel_count() const;
};

// In-place execution. The pure path throws if the circuit contains channels;
// channels act only through the MixedState backend.
void run_inplace(const Circuit& circuit, PureState& psi);
void run_inplace(const Circuit& circuit, MixedState& rho);

// Execution from |0...0>.
PureState run_pure(const Circuit& circuit);
MixedState run_mixed(const Circuit& circuit);

}  // namespace uqc
