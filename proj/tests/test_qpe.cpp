#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "qeig/linalg.hpp"
#include "qeig/pauli.hpp"
#include "qeig/qpe.hpp"

using namespace qeig;

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// Reference DFT: |y> -> 2^{-r/2} sum_z w^{yz} |z> applied to the low r qubits.
StateVector dense_qft_oracle(const StateVector& input, int count) {
  const std::size_t grid = std::size_t(1) << count;
  const std::size_t slices = input.dim() >> count;
  StateVector out(input.num_qubits);
  const double scale = 1.0 / std::sqrt(double(grid));
  for (std::size_t s = 0; s < slices; ++s)
    for (std::size_t z = 0; z < grid; ++z) {
      Complex acc = 0.0;
      for (std::size_t y = 0; y < grid; ++y) {
        const double angle = kTwoPi * double(y * z % grid) / double(grid);
        acc += Complex(std::cos(angle), std::sin(angle)) *
               input.amplitudes[(s << count) | y];
      }
      out.amplitudes[(s << count) | z] = acc * scale;
    }
  return out;
}

ScaledProblem diagonal_problem(const std::vector<double>& phases) {
  ScaledProblem problem;
  problem.scaled_matrix = ComplexMatrix(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i)
    problem.scaled_matrix(i, i) = phases[i];
  problem.coefficient_bound = 1.0;
  problem.affine_map = {0.25, 0.25};
  return problem;
}

}  // namespace

TEST_CASE("qft on one qubit is the Hadamard") {
  Rng rng(1);
  StateVector state = random_uniform_state(1, rng);
  StateVector expect = state;
  apply_hadamard(expect, 0);
  qft(state, 0, 1);
  for (std::size_t i = 0; i < state.dim(); ++i)
    CHECK(std::abs(state.amplitudes[i] - expect.amplitudes[i]) <= 1e-12);
}

TEST_CASE("qft matches the dense transform and inverts cleanly") {
  Rng rng(2);
  StateVector state = random_uniform_state(5, rng);  // transform low 3 of 5
  const StateVector expect = dense_qft_oracle(state, 3);
  StateVector circuit = state;
  qft(circuit, 0, 3);
  for (std::size_t i = 0; i < state.dim(); ++i)
    CHECK(std::abs(circuit.amplitudes[i] - expect.amplitudes[i]) <= 1e-10);

  qft_inverse(circuit, 0, 3);
  for (std::size_t i = 0; i < state.dim(); ++i)
    CHECK(std::abs(circuit.amplitudes[i] - state.amplitudes[i]) <= 1e-10);
  CHECK(std::abs(circuit.norm() - 1.0) <= 1e-10);
}

TEST_CASE("qft_inverse maps the uniform register to |0..0>") {
  StateVector state(3);
  const double amp = 1.0 / std::sqrt(8.0);
  for (auto& z : state.amplitudes) z = amp;
  qft_inverse(state, 0, 3);
  CHECK(std::abs(state.amplitudes[0] - Complex(1.0)) <= 1e-10);
  for (std::size_t i = 1; i < 8; ++i) CHECK(std::abs(state.amplitudes[i]) <= 1e-10);
}

TEST_CASE("gate layer rejects bad ranges") {
  StateVector state(3);
  state.amplitudes[0] = 1.0;
  CHECK_THROWS_AS(apply_hadamard(state, 3), std::invalid_argument);
  CHECK_THROWS_AS(qft(state, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(apply_controlled_phase(state, 1, 1, 0.1), std::invalid_argument);
}

TEST_CASE("qpe writes an exact two-bit phase into the register") {
  // Scaled matrix diag(0, 1/4): eigenvector |1> has phase 1/4, so with r = 2
  // the register reads y = 1 exactly.
  const ScaledProblem problem = diagonal_problem({0.0, 0.25});
  const RegisterLayout layout(2, 1);
  StateVector state = make_circuit_state(layout, StateVector::basis_state(1, 1));
  apply_qpe(problem, layout, state);
  const std::size_t expect = (std::size_t(1) << layout.ancilla_bit()) |
                             (std::size_t(1) << layout.eigenvector_qubits) | 1;
  CHECK(std::abs(state.amplitudes[expect] - Complex(1.0)) <= 1e-10);
  double elsewhere = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i)
    if (i != expect) elsewhere += std::norm(state.amplitudes[i]);
  CHECK(elsewhere <= 1e-12);
}

TEST_CASE("qpe on an exact eigenphase is deterministic at readout") {
  const ScaledProblem problem = diagonal_problem({0.125, 0.375, 0.25, 0.4375});
  const RegisterLayout layout(4, 2);
  StateVector state = make_circuit_state(layout, StateVector::basis_state(2, 3));
  apply_qpe(problem, layout, state);
  const auto distribution = eigenvalue_register_distribution(state, layout);
  CHECK(distribution[std::size_t(0.4375 * 16)] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("qpe requires a cleared eigenvalue register") {
  const ScaledProblem problem = diagonal_problem({0.0, 0.25});
  const RegisterLayout layout(2, 1);
  StateVector state = make_circuit_state(layout, StateVector::basis_state(1, 0));
  apply_hadamard(state, layout.eigenvalue_bit(0));
  CHECK_THROWS_AS(apply_qpe(problem, layout, state), std::invalid_argument);
}

TEST_CASE("qpe circuit inverts to the identity and matches its dagger") {
  const ScaledProblem problem = diagonal_problem({0.11, 0.37});
  const RegisterLayout layout(2, 1);
  const QpeCircuit circuit(problem, layout);

  Rng rng(8);
  StateVector state = random_uniform_state(layout.total_qubits(), rng);
  StateVector copy = state;
  circuit.apply(state);
  CHECK(std::abs(state.norm() - 1.0) <= 1e-10);
  circuit.apply_inverse(state);
  for (std::size_t i = 0; i < state.dim(); ++i)
    CHECK(std::abs(state.amplitudes[i] - copy.amplitudes[i]) <= 1e-10);

  // Free-function round trip from a fresh register state.
  StateVector fresh = make_circuit_state(layout, random_uniform_state(1, rng));
  StateVector before = fresh;
  apply_qpe(problem, layout, fresh);
  apply_qpe_inverse(problem, layout, fresh);
  for (std::size_t i = 0; i < fresh.dim(); ++i)
    CHECK(std::abs(fresh.amplitudes[i] - before.amplitudes[i]) <= 1e-10);

  // Dense matrix of apply_inverse equals the conjugate transpose of apply.
  const std::size_t dim = layout.dim();
  ComplexMatrix forward(dim), backward(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector basis(layout.total_qubits());
    basis.amplitudes[col] = 1.0;
    StateVector f = basis;
    circuit.apply(f);
    StateVector b = basis;
    circuit.apply_inverse(b);
    for (std::size_t row = 0; row < dim; ++row) {
      forward(row, col) = f.amplitudes[row];
      backward(row, col) = b.amplitudes[row];
    }
  }
  const ComplexMatrix adjoint = forward.dagger();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      CHECK(std::abs(backward(i, j) - adjoint(i, j)) <= 1e-10);
}

TEST_CASE("qpe is linear over eigenvector superpositions") {
  const ScaledProblem problem = diagonal_problem({0.125, 0.375});
  const RegisterLayout layout(3, 1);
  Rng rng(19);
  for (int rep = 0; rep < 3; ++rep) {
    const Complex b0(rng.normal(), rng.normal());
    const Complex b1(rng.normal(), rng.normal());
    const double norm = std::sqrt(std::norm(b0) + std::norm(b1));

    StateVector mixed(1);
    mixed.amplitudes[0] = b0 / norm;
    mixed.amplitudes[1] = b1 / norm;
    StateVector full = make_circuit_state(layout, mixed);
    apply_qpe(problem, layout, full);

    StateVector part0 = make_circuit_state(layout, StateVector::basis_state(1, 0));
    StateVector part1 = make_circuit_state(layout, StateVector::basis_state(1, 1));
    apply_qpe(problem, layout, part0);
    apply_qpe(problem, layout, part1);
    for (std::size_t i = 0; i < full.dim(); ++i) {
      const Complex expect =
          (b0 * part0.amplitudes[i] + b1 * part1.amplitudes[i]) / norm;
      CHECK(std::abs(full.amplitudes[i] - expect) <= 1e-10);
    }
  }
}

TEST_CASE("off-grid phases concentrate on the nearest grid point") {
  const double phase = (5.0 + 0.3) / 32.0;  // between grid points 5 and 6
  const ScaledProblem problem = diagonal_problem({phase, 0.0});
  const RegisterLayout layout(5, 1);
  StateVector state = make_circuit_state(layout, StateVector::basis_state(1, 0));
  apply_qpe(problem, layout, state);
  const auto distribution = eigenvalue_register_distribution(state, layout);
  std::size_t modal = 0;
  for (std::size_t y = 1; y < distribution.size(); ++y)
    if (distribution[y] > distribution[modal]) modal = y;
  CHECK(modal == 5);
  const double pi = 3.14159265358979323846;
  CHECK(distribution[5] >= 4.0 / (pi * pi));
}

TEST_CASE("measurement samples the Born rule and collapses") {
  const ScaledProblem problem = diagonal_problem({0.125, 0.375});
  const RegisterLayout layout(3, 1);

  // Deterministic register.
  StateVector state = make_circuit_state(layout, StateVector::basis_state(1, 1));
  apply_qpe(problem, layout, state);
  Rng rng(77);
  const PhaseReadout readout = measure_eigenvalue_register(problem, layout, state, rng);
  CHECK(readout.bits == std::size_t(0.375 * 8));
  CHECK(readout.probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(readout.phase == 0.375);
  CHECK(readout.eigenvalue ==
        doctest::Approx(problem.affine_map.eigenvalue_from_phase(0.375)).epsilon(1e-12));

  // 50/50 superposition: frequencies within 3 sigma over 10^4 shots.
  StateVector half(1);
  half.amplitudes[0] = 1.0 / std::sqrt(2.0);
  half.amplitudes[1] = 1.0 / std::sqrt(2.0);
  int low = 0;
  const int shots = 10000;
  Rng shots_rng(123);
  for (int s = 0; s < shots; ++s) {
    StateVector run = make_circuit_state(layout, half);
    apply_qpe(problem, layout, run);
    const PhaseReadout sample =
        measure_eigenvalue_register(problem, layout, run, shots_rng);
    if (sample.bits == 1) ++low;
    // Collapsed: a second readout must repeat the first.
    Rng again(5);
    const PhaseReadout repeat = measure_eigenvalue_register(problem, layout, run, again);
    CHECK(repeat.bits == sample.bits);
  }
  const double sigma = std::sqrt(0.25 / shots);
  CHECK(std::abs(double(low) / shots - 0.5) <= 3.0 * sigma);
}
