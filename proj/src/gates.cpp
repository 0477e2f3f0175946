#include "uqc/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace uqc {

namespace {

void check_targets(const Gate& g, int n_qubits) {
  if (g.q0 < 0 || g.q0 >= n_qubits)
    throw std::out_of_range("apply_gate: qubit index out of range");
  if (g.kind == GateKind::CNOT) {
    if (g.q1 < 0 || g.q1 >= n_qubits)
      throw std::out_of_range("apply_gate: qubit index out of range");
    if (g.q0 == g.q1) throw std::invalid_argument("apply_gate: CNOT control equals target");
  }
}

// U acting on qubit q of a state vector
void apply_2x2_pure(PureState& psi, const std::array<cplx, 4>& u, int q) {
  const std::uint64_t mask = qubit_mask(q, psi.n_qubits);
  const std::size_t d = psi.amplitudes.size();
  for (std::size_t b = 0; b < d; ++b) {
    if (b & mask) continue;
    const cplx a0 = psi.amplitudes[b];
    const cplx a1 = psi.amplitudes[b | mask];
    psi.amplitudes[b] = u[0] * a0 + u[1] * a1;
    psi.amplitudes[b | mask] = u[2] * a0 + u[3] * a1;
  }
}

// rho -> (U rho) for a 2x2 U on qubit q (left factor only)
void left_2x2(MixedState& rho, const std::array<cplx, 4>& u, int q) {
  const std::uint64_t mask = qubit_mask(q, rho.n_qubits);
  const std::size_t d = rho.dim();
  for (std::size_t r = 0; r < d; ++r) {
    if (r & mask) continue;
    for (std::size_t c = 0; c < d; ++c) {
      const cplx a0 = rho.matrix[r * d + c];
      const cplx a1 = rho.matrix[(r | mask) * d + c];
      rho.matrix[r * d + c] = u[0] * a0 + u[1] * a1;
      rho.matrix[(r | mask) * d + c] = u[2] * a0 + u[3] * a1;
    }
  }
}

// rho -> (rho U^dagger) for a 2x2 U on qubit q (right factor only)
void right_2x2_dagger(MixedState& rho, const std::array<cplx, 4>& u, int q) {
  const std::uint64_t mask = qubit_mask(q, rho.n_qubits);
  const std::size_t d = rho.dim();
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if (c & mask) continue;
      const cplx a0 = rho.matrix[r * d + c];
      const cplx a1 = rho.matrix[r * d + (c | mask)];
      rho.matrix[r * d + c] = a0 * std::conj(u[0]) + a1 * std::conj(u[1]);
      rho.matrix[r * d + (c | mask)] = a0 * std::conj(u[2]) + a1 * std::conj(u[3]);
    }
  }
}

void cnot_pure(PureState& psi, int control, int target) {
  const std::uint64_t cmask = qubit_mask(control, psi.n_qubits);
  const std::uint64_t tmask = qubit_mask(target, psi.n_qubits);
  const std::size_t d = psi.amplitudes.size();
  for (std::size_t b = 0; b < d; ++b)
    if ((b & cmask) && !(b & tmask)) std::swap(psi.amplitudes[b], psi.amplitudes[b | tmask]);
}

void cnot_mixed(MixedState& rho, int control, int target) {
  const std::uint64_t cmask = qubit_mask(control, rho.n_qubits);
  const std::uint64_t tmask = qubit_mask(target, rho.n_qubits);
  const std::size_t d = rho.dim();
  // permutation is an involution; apply to rows then columns
  for (std::size_t r = 0; r < d; ++r) {
    if (!(r & cmask) || (r & tmask)) continue;
    for (std::size_t c = 0; c < d; ++c)
      std::swap(rho.matrix[r * d + c], rho.matrix[(r | tmask) * d + c]);
  }
  for (std::size_t c = 0; c < d; ++c) {
    if (!(c & cmask) || (c & tmask)) continue;
    for (std::size_t r = 0; r < d; ++r)
      std::swap(rho.matrix[r * d + c], rho.matrix[r * d + (c | tmask)]);
  }
}

}  // namespace

std::array<cplx, 4> gate_matrix2(const Gate& g) {
  switch (g.kind) {
    case GateKind::H: {
      const double s = 1.0 / std::numbers::sqrt2;
      return {cplx{s, 0}, cplx{s, 0}, cplx{s, 0}, cplx{-s, 0}};
    }
    case GateKind::RY: {
      const double c = std::cos(g.angle / 2.0);
      const double s = std::sin(g.angle / 2.0);
      return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
    }
    case GateKind::P:
      return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, std::polar(1.0, g.angle)};
    case GateKind::CNOT:
      throw std::invalid_argument("gate_matrix2: CNOT is not single-qubit");
  }
  throw std::logic_error("gate_matrix2: unknown gate kind");
}

std::array<cplx, 16> cnot_matrix4() {
  std::array<cplx, 16> m{};
  m[0 * 4 + 0] = 1.0;  // |00> -> |00>
  m[1 * 4 + 1] = 1.0;  // |01> -> |01>
  m[2 * 4 + 3] = 1.0;  // |11> -> |10>
  m[3 * 4 + 2] = 1.0;  // |10> -> |11>
  return m;
}

void apply_gate(PureState& psi, const Gate& g) {
  check_targets(g, psi.n_qubits);
  if (g.kind == GateKind::CNOT)
    cnot_pure(psi, g.q0, g.q1);
  else
    apply_2x2_pure(psi, gate_matrix2(g), g.q0);
}

void apply_gate(MixedState& rho, const Gate& g) {
  check_targets(g, rho.n_qubits);
  if (g.kind == GateKind::CNOT) {
    cnot_mixed(rho, g.q0, g.q1);
  } else {
    const auto u = gate_matrix2(g);
    left_2x2(rho, u, g.q0);
    right_2x2_dagger(rho, u, g.q0);
  }
}

void apply_2x2_sandwich_add(const MixedState& rho, const std::array<cplx, 4>& a, int qubit,
                            MixedState& accum) {
  if (accum.n_qubits != rho.n_qubits || accum.matrix.size() != rho.matrix.size())
    throw std::invalid_argument("apply_2x2_sandwich_add: shape mismatch");
  MixedState tmp = rho;
  left_2x2(tmp, a, qubit);
  right_2x2_dagger(tmp, a, qubit);
  for (std::size_t i = 0; i < accum.matrix.size(); ++i) accum.matrix[i] += tmp.matrix[i];
}

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::RY: return "RY";
    case GateKind::P: return "P";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

}  // namespace uqc
