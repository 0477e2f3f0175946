#pragma once

#include <array>
#include <string>

#include "uqc/states.hpp"

namespace uqc {

// Gate set used by the feature map and ansatz: {H, RY, P, CNOT}.
enum class GateKind { H, RY, P, CNOT };

struct Gate {
  GateKind kind;
  int q0;             // target qubit; CNOT: control
  int q1 = -1;        // CNOT: target
  double angle = 0.0; // RY theta / P phi, radians

  static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
  static Gate ry(int q, double theta) { return {GateKind::RY, q, -1, theta}; }
  static Gate p(int q, double phi) { return {GateKind::P, q, -1, phi}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, 0.0}; }

  bool touches(int qubit) const { return q0 == qubit || q1 == qubit; }
};

// 2x2 matrix of a single-qubit gate, row-major {u00, u01, u10, u11}.
// H = (1/sqrt2)[[1,1],[1,-1]], RY = [[cos t/2, -sin t/2],[sin t/2, cos t/2]],
// P = diag(1, e^{i phi}).
std::array<cplx, 4> gate_matrix2(const Gate& g);

// Full 4x4 matrix of CNOT (control = first tensor factor), for unitarity checks.
std::array<cplx, 16> cnot_matrix4();

// |psi> -> U|psi> in place.
void apply_gate(PureState& psi, const Gate& g);

// rho -> U rho U^dagger in place.
void apply_gate(MixedState& rho, const Gate& g);

// Generic 2x2 operator application on one qubit of a density matrix:
// rho -> A rho A^dagger (A need not be unitary; used by Kraus channels).
void apply_2x2_sandwich_add(const MixedState& rho, const std::array<cplx, 4>& a, int qubit,
                            MixedState& accum);

std::string gate_name(GateKind kind);

}  // namespace uqc
