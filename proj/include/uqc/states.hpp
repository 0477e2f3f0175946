#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uqc/linalg.hpp"
#include "uqc/rng.hpp"

namespace uqc {

// Bit-ordering convention, used everywhere: qubit 0 is the most-significant
// bit of a basis index, so index b encodes |b0 b1 ... b_{n-1}>. This matches
// the figures' top-to-bottom wire order.

inline std::size_t state_dim(int n_qubits) { return std::size_t{1} << n_qubits; }

inline std::uint64_t qubit_mask(int qubit, int n_qubits) {
  return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

inline int bit_of(std::uint64_t index, int qubit, int n_qubits) {
  return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1ULL);
}

// Dense state vector of 2^n complex amplitudes.
struct PureState {
  int n_qubits = 0;
  std::vector<cplx> amplitudes;

  static PureState zero(int n_qubits);

  double norm_sq() const;
  // Sum |a_b|^2 must stay 1 within 1e-10 after every gate application.
  void check_norm(double tol = 1e-10) const;
};

// Dense density operator, row-major 2^n x 2^n.
struct MixedState {
  int n_qubits = 0;
  std::vector<cplx> matrix;

  static MixedState zero(int n_qubits);
  static MixedState from_pure(const PureState& psi);
  static MixedState from_diagonal(int n_qubits, std::span<const double> probs);
  static MixedState maximally_mixed(int n_qubits);

  std::size_t dim() const { return state_dim(n_qubits); }
  cplx& at(std::size_t r, std::size_t c) { return matrix[r * dim() + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return matrix[r * dim() + c]; }

  double trace_real() const;
  // Hermitian within tol, trace 1 within tol; with check_positivity also
  // eigenvalues >= -1e-9 (costs an eigensolve, meant for tests).
  void validate(double tol = 1e-10, bool check_positivity = false) const;
};

// One Z-basis sample of all qubits: bit q of `bits` (in the convention
// above) is the measured value of qubit q.
struct ShotSample {
  std::uint64_t bits = 0;
  int n_qubits = 0;

  int bit(int qubit) const { return bit_of(bits, qubit, n_qubits); }
  int weight() const;  // Hamming distance to the all-zero string
  std::string to_string() const;
};

// <Z_qubit>; for MixedState equals tr(rho (Z_qubit (x) 1)).
double expval_z(const PureState& psi, int qubit);
double expval_z(const MixedState& rho, int qubit);

// Diagonal probability distribution (|a_b|^2 or rho_bb).
std::vector<double> diagonal_probs(const PureState& psi);
std::vector<double> diagonal_probs(const MixedState& rho);

// One full-register Z-basis sample drawn from the diagonal distribution.
ShotSample sample(const PureState& psi, Rng& rng);
ShotSample sample(const MixedState& rho, Rng& rng);

// Reduced single-qubit density matrix (partial trace over all other qubits).
MixedState partial_trace_keep(const MixedState& rho, int qubit);

// Completely dephasing channel: off-diagonals zeroed, diagonal unchanged.
MixedState dephase(const MixedState& rho);

}  // namespace uqc
