#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "uqc/circuit.hpp"
#include "uqc/gates.hpp"
#include "uqc/linalg.hpp"
#include "uqc/noise.hpp"
#include "uqc/states.hpp"
#include "test_util.hpp"

using namespace uqc;
using doctest::Approx;

namespace {
// U^dag U for a 2x2
double unitarity_defect2(const std::array<cplx, 4>& u) {
  const cplx g00 = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
  const cplx g01 = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
  const cplx g10 = std::conj(u[1]) * u[0] + std::conj(u[3]) * u[2];
  const cplx g11 = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
  return std::max({std::abs(g00 - 1.0), std::abs(g01), std::abs(g10), std::abs(g11 - 1.0)});
}
}  // namespace

TEST_CASE("hadamard on |0> gives the equal superposition") {
  PureState s = PureState::zero(1);
  apply_gate(s, Gate::h(0));
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(s.amplitudes[0] - cplx{r, 0}) < 1e-12);
  CHECK(std::abs(s.amplitudes[1] - cplx{r, 0}) < 1e-12);
}

TEST_CASE("RY(pi) flips |0> to |1>") {
  PureState s = PureState::zero(1);
  apply_gate(s, Gate::ry(0, std::numbers::pi));
  CHECK(std::abs(s.amplitudes[0]) < 1e-12);
  CHECK(std::abs(s.amplitudes[1] - cplx{1, 0}) < 1e-12);
}

TEST_CASE("CNOT with control qubit 1 flips qubit 0 of |01>") {
  PureState s = PureState::zero(2);
  s.amplitudes[0] = 0.0;
  s.amplitudes[1] = 1.0;  // |01>: qubit0=0 (MSB), qubit1=1
  apply_gate(s, Gate::cnot(1, 0));
  CHECK(std::abs(s.amplitudes[3] - cplx{1, 0}) < 1e-12);  // |11>
  CHECK(s.norm_sq() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gate matrices are unitary") {
  Rng rng(7);
  CHECK(unitarity_defect2(gate_matrix2(Gate::h(0))) < 1e-12);
  for (int i = 0; i < 20; ++i) {
    const double angle = rng.uniform(-10.0, 10.0);
    CHECK(unitarity_defect2(gate_matrix2(Gate::ry(0, angle))) < 1e-12);
    CHECK(unitarity_defect2(gate_matrix2(Gate::p(0, angle))) < 1e-12);
  }
  // CNOT as a 4x4 permutation
  const auto m = cnot_matrix4();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      cplx acc{0, 0};
      for (int k = 0; k < 4; ++k) acc += std::conj(m[k * 4 + r]) * m[k * 4 + c];
      CHECK(std::abs(acc - (r == c ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("gate application rejects bad targets") {
  PureState s = PureState::zero(2);
  CHECK_THROWS_AS(apply_gate(s, Gate::h(2)), std::out_of_range);
  CHECK_THROWS_AS(apply_gate(s, Gate::cnot(0, 0)), std::invalid_argument);
  MixedState rho = MixedState::zero(2);
  CHECK_THROWS_AS(apply_gate(rho, Gate::ry(-1, 0.3)), std::out_of_range);
}

TEST_CASE("expval_z basics") {
  PureState zero = PureState::zero(1);
  CHECK(expval_z(zero, 0) == Approx(1.0));
  apply_gate(zero, Gate::h(0));
  CHECK(std::abs(expval_z(zero, 0)) < 1e-12);

  const std::vector<double> diag{0.75, 0.25};
  MixedState rho = MixedState::from_diagonal(1, diag);
  CHECK(expval_z(rho, 0) == Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(expval_z(rho, 1), std::out_of_range);
}

TEST_CASE("sampling a basis state is deterministic") {
  PureState s = PureState::zero(3);
  s.amplitudes[0] = 0.0;
  s.amplitudes[0b101] = 1.0;
  Rng rng(3);
  for (int i = 0; i < 16; ++i) {
    const ShotSample shot = sample(s, rng);
    CHECK(shot.to_string() == "101");
    CHECK(shot.weight() == 2);
  }
}

TEST_CASE("sampling law: empirical frequency of H|0> within binomial bounds") {
  PureState s = PureState::zero(1);
  apply_gate(s, Gate::h(0));
  Rng rng(11);
  const int shots = 100000;
  int zeros = 0;
  for (int i = 0; i < shots; ++i) zeros += (sample(s, rng).bits == 0) ? 1 : 0;
  CHECK(std::abs(zeros / double(shots) - 0.5) < 0.01);
}

TEST_CASE("fixed seed, fixed state: identical sample sequence") {
  Rng rng_a(99), rng_b(99);
  PureState s = PureState::zero(3);
  apply_gate(s, Gate::h(0));
  apply_gate(s, Gate::h(1));
  apply_gate(s, Gate::ry(2, 0.7));
  for (int i = 0; i < 200; ++i) CHECK(sample(s, rng_a).bits == sample(s, rng_b).bits);
}

TEST_CASE("sampling rejects invalid diagonals") {
  MixedState rho = MixedState::zero(1);
  rho.matrix[0] = cplx{1.1, 0.0};
  rho.matrix[3] = cplx{-0.1, 0.0};  // beyond the -1e-9 tolerance
  Rng rng(1);
  CHECK_THROWS(sample(rho, rng));
}

TEST_CASE("partial trace on product and entangled states") {
  MixedState rho00 = MixedState::zero(2);
  MixedState red = partial_trace_keep(rho00, 0);
  CHECK(std::abs(red.matrix[0] - cplx{1, 0}) < 1e-12);
  CHECK(std::abs(red.matrix[3]) < 1e-12);

  PureState bell = PureState::zero(2);
  apply_gate(bell, Gate::h(0));
  apply_gate(bell, Gate::cnot(0, 1));
  red = partial_trace_keep(MixedState::from_pure(bell), 0);
  CHECK(std::abs(red.matrix[0] - cplx{0.5, 0}) < 1e-12);
  CHECK(std::abs(red.matrix[1]) < 1e-12);
  CHECK(std::abs(red.matrix[3] - cplx{0.5, 0}) < 1e-12);

  const std::vector<double> diag{0.4, 0.1, 0.3, 0.2};
  red = partial_trace_keep(MixedState::from_diagonal(2, diag), 0);
  CHECK(red.matrix[0].real() == Approx(0.5).epsilon(1e-12));
  CHECK(red.matrix[3].real() == Approx(0.5).epsilon(1e-12));
  CHECK(red.trace_real() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dephase removes coherences, keeps diagonals, is idempotent") {
  PureState plus = PureState::zero(1);
  apply_gate(plus, Gate::h(0));
  const MixedState rho = MixedState::from_pure(plus);
  const MixedState d = dephase(rho);
  CHECK(std::abs(d.matrix[0] - cplx{0.5, 0}) < 1e-12);
  CHECK(std::abs(d.matrix[1]) < 1e-15);
  CHECK(testutil::max_entry_diff(dephase(d), d) < 1e-15);

  // tr(Delta(rho) Pi) = tr(rho Pi) for diagonal projectors
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const MixedState r = testutil::random_mixed(3, rng);
    const MixedState dr = dephase(r);
    const std::uint64_t pick = rng.next_u64() & 0x7F;
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t b = 0; b < 8; ++b) {
      if (!((pick >> b) & 1)) continue;
      lhs += dr.matrix[b * 8 + b].real();
      rhs += r.matrix[b * 8 + b].real();
    }
    CHECK(lhs == Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("pure and mixed backends agree on random gate sequences") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 2);
    Circuit c;
    c.n_qubits = n;
    for (int g = 0; g < 12; ++g) {
      const int q = static_cast<int>(rng.next_u64() % n);
      switch (rng.next_u64() % 4) {
        case 0: c.push(Gate::h(q)); break;
        case 1: c.push(Gate::ry(q, rng.uniform(-3.0, 3.0))); break;
        case 2: c.push(Gate::p(q, rng.uniform(-3.0, 3.0))); break;
        default: c.push(Gate::cnot(q, (q + 1) % n)); break;
      }
    }
    const PureState psi = run_pure(c);
    psi.check_norm();
    const MixedState rho = run_mixed(c);
    rho.validate();
    CHECK(testutil::max_entry_diff(MixedState::from_pure(psi), rho) < 1e-10);
  }
}

TEST_CASE("pure backend rejects channels") {
  Circuit c;
  c.n_qubits = 1;
  c.push(Gate::h(0));
  c.push(ChannelApp{Channel::phase_damping(0.1), 0});
  PureState psi = PureState::zero(1);
  CHECK_THROWS_AS(run_inplace(c, psi), std::invalid_argument);
}

// --- noise channels ---

TEST_CASE("kraus completeness for every channel over a parameter grid") {
  for (double p : {0.0, 0.02, 0.03, 0.05, 0.3, 0.7, 1.0}) {
    for (const Channel ch :
         {Channel::depolarizing_pauli(p), Channel::depolarizing_mixing(p),
          Channel::amplitude_damping(p), Channel::phase_damping(p)}) {
      const auto ks = kraus_ops(ch);
      std::array<cplx, 4> sum{};
      for (const auto& k : ks) {
        sum[0] += std::conj(k[0]) * k[0] + std::conj(k[2]) * k[2];
        sum[1] += std::conj(k[0]) * k[1] + std::conj(k[2]) * k[3];
        sum[2] += std::conj(k[1]) * k[0] + std::conj(k[3]) * k[2];
        sum[3] += std::conj(k[1]) * k[1] + std::conj(k[3]) * k[3];
      }
      CHECK(std::abs(sum[0] - 1.0) < 1e-12);
      CHECK(std::abs(sum[1]) < 1e-12);
      CHECK(std::abs(sum[2]) < 1e-12);
      CHECK(std::abs(sum[3] - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("channel parameter outside [0,1] is rejected") {
  MixedState rho = MixedState::zero(1);
  CHECK_THROWS_AS(apply_channel(rho, Channel::amplitude_damping(1.5), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_channel(rho, Channel::depolarizing_pauli(-0.1), 0),
                  std::invalid_argument);
}

TEST_CASE("depolarizing mixing on |0><0|") {
  MixedState rho = MixedState::zero(1);
  apply_channel(rho, Channel::depolarizing_mixing(0.1), 0);
  CHECK(rho.matrix[0].real() == Approx(0.95).epsilon(1e-12));
  CHECK(rho.matrix[3].real() == Approx(0.05).epsilon(1e-12));
}

TEST_CASE("amplitude damping decays the excited state") {
  MixedState rho = MixedState::from_diagonal(1, std::vector<double>{0.0, 1.0});
  apply_channel(rho, Channel::amplitude_damping(0.05), 0);
  CHECK(rho.matrix[0].real() == Approx(0.05).epsilon(1e-12));
  CHECK(rho.matrix[3].real() == Approx(0.95).epsilon(1e-12));
}

TEST_CASE("phase damping scales off-diagonals by sqrt(1-gamma)") {
  PureState plus = PureState::zero(1);
  apply_gate(plus, Gate::h(0));
  MixedState rho = MixedState::from_pure(plus);
  apply_channel(rho, Channel::phase_damping(0.03), 0);
  CHECK(rho.matrix[0].real() == Approx(0.5).epsilon(1e-12));
  CHECK(rho.matrix[3].real() == Approx(0.5).epsilon(1e-12));
  CHECK(rho.matrix[1].real() == Approx(0.5 * std::sqrt(0.97)).epsilon(1e-12));
}

TEST_CASE("channels preserve trace and positivity on random states") {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    MixedState rho = testutil::random_mixed(2, rng);
    const double tr_in = rho.trace_real();
    const double p = rng.next_double();
    const Channel ch = [&]() {
      switch (trial % 4) {
        case 0: return Channel::depolarizing_pauli(p);
        case 1: return Channel::depolarizing_mixing(p);
        case 2: return Channel::amplitude_damping(p);
        default: return Channel::phase_damping(p);
      }
    }();
    apply_channel(rho, ch, static_cast<int>(rng.next_u64() % 2));
    CHECK(std::abs(rho.trace_real() - tr_in) < 1e-12);
    const auto eig = hermitian_eigenvalues(rho.matrix, 4);
    CHECK(eig.front() >= -1e-9);
  }
}

TEST_CASE("pauli and mixing depolarizing parameterizations coincide at eps = 4p/3") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = 0.75 * rng.next_double();  // keep eps = 4p/3 within [0,1]
    MixedState a = testutil::random_mixed(1, rng);
    MixedState b = a;
    apply_channel(a, Channel::depolarizing_pauli(p), 0);
    apply_channel(b, Channel::depolarizing_mixing(4.0 * p / 3.0), 0);
    CHECK(testutil::max_entry_diff(a, b) < 1e-12);
  }
}

TEST_CASE("global depolarize endpoints") {
  Rng rng(37);
  MixedState rho = testutil::random_mixed(2, rng);
  MixedState same = rho;
  global_depolarize(same, 0.0);
  CHECK(testutil::max_entry_diff(rho, same) < 1e-12);

  global_depolarize(rho, 1.0);
  CHECK(testutil::max_entry_diff(rho, MixedState::maximally_mixed(2)) < 1e-12);

  MixedState one = MixedState::zero(1);
  global_depolarize(one, 0.2);
  CHECK(one.matrix[0].real() == Approx(0.9).epsilon(1e-12));
  CHECK(one.matrix[3].real() == Approx(0.1).epsilon(1e-12));
}

TEST_CASE("noisy success on the first qubit reduces to the one-qubit channel") {
  // tr(E^x3(sigma) |0><0| x 1) = <0| E(tr_minus_first(sigma)) |0>
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const MixedState sigma = testutil::random_mixed(3, rng);
    const double eps = rng.next_double();

    MixedState noisy = sigma;
    global_depolarize(noisy, eps);
    double lhs = 0.0;
    for (std::size_t b = 0; b < 8; ++b)
      if (!(b & 0b100)) lhs += noisy.matrix[b * 8 + b].real();

    MixedState red = partial_trace_keep(sigma, 0);
    apply_channel(red, Channel::depolarizing_mixing(eps), 0);
    CHECK(lhs == Approx(red.matrix[0].real()).epsilon(1e-10));
  }
}

TEST_CASE("noisy_transform interleaves channels per touched qubit") {
  const NoiseSpec spec = NoiseSpec::defaults();

  Circuit single;
  single.n_qubits = 1;
  single.push(Gate::h(0));
  const Circuit noisy1 = noisy_transform(single, spec);
  CHECK(noisy1.gate_count() == 1);
  CHECK(noisy1.channel_count() == 3);

  Circuit two;
  two.n_qubits = 2;
  two.push(Gate::cnot(1, 0));
  const Circuit noisy2 = noisy_transform(two, spec);
  CHECK(noisy2.gate_count() == 1);
  CHECK(noisy2.channel_count() == 6);

  Circuit empty;
  empty.n_qubits = 2;
  CHECK(noisy_transform(empty, spec).ops.empty());

  // channel order within a qubit follows the spec order
  const auto& first = std::get<ChannelApp>(noisy1.ops[1]);
  CHECK(first.channel.kind == ChannelKind::DepolarizingPauli);
  const auto& second = std::get<ChannelApp>(noisy1.ops[2]);
  CHECK(second.channel.kind == ChannelKind::AmplitudeDamping);
  const auto& third = std::get<ChannelApp>(noisy1.ops[3]);
  CHECK(third.channel.kind == ChannelKind::PhaseDamping);
}

TEST_CASE("mixed state validate flags broken invariants") {
  MixedState rho = MixedState::zero(2);
  rho.validate(1e-10, true);
  rho.matrix[1] = cplx{0.3, 0.1};  // not Hermitian
  CHECK_THROWS(rho.validate());
  rho = MixedState::zero(2);
  rho.matrix[0] = cplx{0.5, 0.0};  // trace broken
  CHECK_THROWS(rho.validate());
}
