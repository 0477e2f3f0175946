#include "uqc/states.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace uqc {

namespace {
void check_qubit(int qubit, int n_qubits, const char* where) {
  if (qubit < 0 || qubit >= n_qubits)
    throw std::out_of_range(std::string(where) + ": qubit index out of range");
}
}  // namespace

PureState PureState::zero(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("PureState: n_qubits must be >= 1");
  PureState s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(state_dim(n_qubits), cplx{0.0, 0.0});
  s.amplitudes[0] = cplx{1.0, 0.0};
  return s;
}

double PureState::norm_sq() const {
  double acc = 0.0;
  for (const cplx& a : amplitudes) acc += std::norm(a);
  return acc;
}

void PureState::check_norm(double tol) const {
  if (std::abs(norm_sq() - 1.0) > tol)
    throw std::runtime_error("PureState: norm invariant violated");
}

MixedState MixedState::zero(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("MixedState: n_qubits must be >= 1");
  MixedState s;
  s.n_qubits = n_qubits;
  const std::size_t d = state_dim(n_qubits);
  s.matrix.assign(d * d, cplx{0.0, 0.0});
  s.matrix[0] = cplx{1.0, 0.0};
  return s;
}

MixedState MixedState::from_pure(const PureState& psi) {
  MixedState s;
  s.n_qubits = psi.n_qubits;
  const std::size_t d = state_dim(psi.n_qubits);
  s.matrix.resize(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      s.matrix[r * d + c] = psi.amplitudes[r] * std::conj(psi.amplitudes[c]);
  return s;
}

MixedState MixedState::from_diagonal(int n_qubits, std::span<const double> probs) {
  const std::size_t d = state_dim(n_qubits);
  if (probs.size() != d)
    throw std::invalid_argument("MixedState::from_diagonal: wrong length");
  MixedState s;
  s.n_qubits = n_qubits;
  s.matrix.assign(d * d, cplx{0.0, 0.0});
  for (std::size_t b = 0; b < d; ++b) s.matrix[b * d + b] = cplx{probs[b], 0.0};
  return s;
}

MixedState MixedState::maximally_mixed(int n_qubits) {
  const std::size_t d = state_dim(n_qubits);
  std::vector<double> p(d, 1.0 / static_cast<double>(d));
  return from_diagonal(n_qubits, p);
}

double MixedState::trace_real() const {
  const std::size_t d = dim();
  double acc = 0.0;
  for (std::size_t b = 0; b < d; ++b) acc += matrix[b * d + b].real();
  return acc;
}

void MixedState::validate(double tol, bool check_positivity) const {
  const std::size_t d = dim();
  if (matrix.size() != d * d) throw std::runtime_error("MixedState: bad buffer size");
  if (std::abs(trace_real() - 1.0) > tol)
    throw std::runtime_error("MixedState: trace invariant violated");
  for (std::size_t r = 0; r < d; ++r) {
    if (std::abs(matrix[r * d + r].imag()) > tol)
      throw std::runtime_error("MixedState: non-real diagonal");
    for (std::size_t c = r + 1; c < d; ++c) {
      const cplx diff = matrix[r * d + c] - std::conj(matrix[c * d + r]);
      if (std::abs(diff) > tol) throw std::runtime_error("MixedState: not Hermitian");
    }
  }
  if (check_positivity) {
    const auto eig = hermitian_eigenvalues(matrix, static_cast<int>(d));
    if (eig.front() < -1e-9)
      throw std::runtime_error("MixedState: negative eigenvalue beyond tolerance");
  }
}

int ShotSample::weight() const { return std::popcount(bits); }

std::string ShotSample::to_string() const {
  std::string s(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q) s[q] = bit(q) ? '1' : '0';
  return s;
}

double expval_z(const PureState& psi, int qubit) {
  check_qubit(qubit, psi.n_qubits, "expval_z");
  const std::uint64_t mask = qubit_mask(qubit, psi.n_qubits);
  double acc = 0.0;
  for (std::size_t b = 0; b < psi.amplitudes.size(); ++b)
    acc += ((b & mask) ? -1.0 : 1.0) * std::norm(psi.amplitudes[b]);
  return acc;
}

double expval_z(const MixedState& rho, int qubit) {
  check_qubit(qubit, rho.n_qubits, "expval_z");
  const std::uint64_t mask = qubit_mask(qubit, rho.n_qubits);
  const std::size_t d = rho.dim();
  double acc = 0.0;
  for (std::size_t b = 0; b < d; ++b)
    acc += ((b & mask) ? -1.0 : 1.0) * rho.matrix[b * d + b].real();
  return acc;
}

std::vector<double> diagonal_probs(const PureState& psi) {
  std::vector<double> p(psi.amplitudes.size());
  for (std::size_t b = 0; b < p.size(); ++b) p[b] = std::norm(psi.amplitudes[b]);
  return p;
}

std::vector<double> diagonal_probs(const MixedState& rho) {
  const std::size_t d = rho.dim();
  std::vector<double> p(d);
  for (std::size_t b = 0; b < d; ++b) p[b] = rho.matrix[b * d + b].real();
  return p;
}

namespace {
ShotSample sample_from_probs(std::span<const double> probs, int n_qubits, Rng& rng) {
  ShotSample s;
  s.n_qubits = n_qubits;
  s.bits = rng.sample_index(probs);
  return s;
}
}  // namespace

ShotSample sample(const PureState& psi, Rng& rng) {
  const auto p = diagonal_probs(psi);
  return sample_from_probs(p, psi.n_qubits, rng);
}

ShotSample sample(const MixedState& rho, Rng& rng) {
  const auto p = diagonal_probs(rho);
  return sample_from_probs(p, rho.n_qubits, rng);
}

MixedState partial_trace_keep(const MixedState& rho, int qubit) {
  check_qubit(qubit, rho.n_qubits, "partial_trace_keep");
  const std::size_t d = rho.dim();
  const std::uint64_t mask = qubit_mask(qubit, rho.n_qubits);
  MixedState out;
  out.n_qubits = 1;
  out.matrix.assign(4, cplx{0.0, 0.0});
  // sum over basis indices with the kept qubit cleared; mask selects its bit
  for (std::size_t b = 0; b < d; ++b) {
    if (b & mask) continue;
    out.matrix[0] += rho.matrix[b * d + b];
    out.matrix[1] += rho.matrix[b * d + (b | mask)];
    out.matrix[2] += rho.matrix[(b | mask) * d + b];
    out.matrix[3] += rho.matrix[(b | mask) * d + (b | mask)];
  }
  return out;
}

MixedState dephase(const MixedState& rho) {
  const std::size_t d = rho.dim();
  MixedState out;
  out.n_qubits = rho.n_qubits;
  out.matrix.assign(d * d, cplx{0.0, 0.0});
  for (std::size_t b = 0; b < d; ++b) out.matrix[b * d + b] = rho.matrix[b * d + b];
  return out;
}

}  // namespace uqc
