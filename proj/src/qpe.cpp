#include "qeig/qpe.hpp"

#include <cmath>
#include <stdexcept>

namespace qeig {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtHalf = 0.70710678118654752440;

void check_qubit(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits)
    throw std::invalid_argument("qubit index out of range");
}

void check_range(const StateVector& state, int lo, int count) {
  if (count < 1 || lo < 0 || lo + count > state.num_qubits)
    throw std::invalid_argument("qubit range out of bounds");
}
}  // namespace

RegisterLayout::RegisterLayout(int r, int n) : eigenvalue_qubits(r), eigenvector_qubits(n) {
  if (r < 1 || n < 1) throw std::invalid_argument("RegisterLayout: need r >= 1 and n >= 1");
}

StateVector make_circuit_state(const RegisterLayout& layout, const StateVector& phi) {
  if (phi.num_qubits != layout.eigenvector_qubits)
    throw std::invalid_argument("make_circuit_state: eigenvector register size mismatch");
  StateVector state(layout.total_qubits());
  const std::size_t base = std::size_t(1) << layout.ancilla_bit();
  for (std::size_t v = 0; v < phi.dim(); ++v) state.amplitudes[base + v] = phi.amplitudes[v];
  return state;
}

void apply_hadamard(StateVector& state, int qubit) {
  check_qubit(state, qubit);
  const std::size_t bit = std::size_t(1) << qubit;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (i & bit) continue;
    const Complex a = state.amplitudes[i];
    const Complex b = state.amplitudes[i | bit];
    state.amplitudes[i] = (a + b) * kSqrtHalf;
    state.amplitudes[i | bit] = (a - b) * kSqrtHalf;
  }
}

void apply_phase(StateVector& state, int qubit, double angle) {
  check_qubit(state, qubit);
  const std::size_t bit = std::size_t(1) << qubit;
  const Complex f(std::cos(angle), std::sin(angle));
  for (std::size_t i = 0; i < state.dim(); ++i)
    if (i & bit) state.amplitudes[i] *= f;
}

void apply_controlled_phase(StateVector& state, int control, int target, double angle) {
  check_qubit(state, control);
  check_qubit(state, target);
  if (control == target) throw std::invalid_argument("controlled phase needs two qubits");
  const std::size_t mask = (std::size_t(1) << control) | (std::size_t(1) << target);
  const Complex f(std::cos(angle), std::sin(angle));
  for (std::size_t i = 0; i < state.dim(); ++i)
    if ((i & mask) == mask) state.amplitudes[i] *= f;
}

void apply_swap(StateVector& state, int a, int b) {
  check_qubit(state, a);
  check_qubit(state, b);
  if (a == b) return;
  const std::size_t ba = std::size_t(1) << a;
  const std::size_t bb = std::size_t(1) << b;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if ((i & ba) && !(i & bb)) {
      const std::size_t j = (i & ~ba) | bb;
      std::swap(state.amplitudes[i], state.amplitudes[j]);
    }
  }
}

void apply_unitary(StateVector& state, const ComplexMatrix& u, int lo, int count) {
  check_range(state, lo, count);
  const std::size_t sub = std::size_t(1) << count;
  if (u.dim() != sub) throw std::invalid_argument("apply_unitary: matrix size mismatch");
  const std::size_t low_mask = (std::size_t(1) << lo) - 1;
  const std::size_t groups = state.dim() >> count;
  std::vector<Complex> scratch(sub);
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t base = ((g & ~low_mask) << count) | (g & low_mask);
    for (std::size_t j = 0; j < sub; ++j) scratch[j] = state.amplitudes[base | (j << lo)];
    for (std::size_t i = 0; i < sub; ++i) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < sub; ++j) acc += u(i, j) * scratch[j];
      state.amplitudes[base | (i << lo)] = acc;
    }
  }
}

void apply_controlled_unitary(StateVector& state, int control, const ComplexMatrix& u,
                              int lo, int count) {
  check_range(state, lo, count);
  check_qubit(state, control);
  if (control >= lo && control < lo + count)
    throw std::invalid_argument("apply_controlled_unitary: control inside target range");
  const std::size_t sub = std::size_t(1) << count;
  if (u.dim() != sub) throw std::invalid_argument("apply_controlled_unitary: size mismatch");
  const std::size_t control_bit = std::size_t(1) << control;
  const std::size_t low_mask = (std::size_t(1) << lo) - 1;
  const std::size_t groups = state.dim() >> count;
  std::vector<Complex> scratch(sub);
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t base = ((g & ~low_mask) << count) | (g & low_mask);
    if (!(base & control_bit)) continue;
    for (std::size_t j = 0; j < sub; ++j) scratch[j] = state.amplitudes[base | (j << lo)];
    for (std::size_t i = 0; i < sub; ++i) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < sub; ++j) acc += u(i, j) * scratch[j];
      state.amplitudes[base | (i << lo)] = acc;
    }
  }
}

void qft(StateVector& state, int lo, int count) {
  check_range(state, lo, count);
  for (int i = count - 1; i >= 0; --i) {
    apply_hadamard(state, lo + i);
    for (int k = i - 1; k >= 0; --k)
      apply_controlled_phase(state, lo + k, lo + i, kPi / double(std::size_t(1) << (i - k)));
  }
  for (int i = 0; i < count / 2; ++i) apply_swap(state, lo + i, lo + count - 1 - i);
}

void qft_inverse(StateVector& state, int lo, int count) {
  check_range(state, lo, count);
  for (int i = 0; i < count / 2; ++i) apply_swap(state, lo + i, lo + count - 1 - i);
  for (int i = 0; i < count; ++i) {
    for (int k = 0; k <= i - 1; ++k)
      apply_controlled_phase(state, lo + k, lo + i, -kPi / double(std::size_t(1) << (i - k)));
    apply_hadamard(state, lo + i);
  }
}

QpeCircuit::QpeCircuit(const ScaledProblem& problem, const RegisterLayout& layout)
    : layout_(layout), affine_(problem.affine_map) {
  const std::size_t dim = std::size_t(1) << layout.eigenvector_qubits;
  if (problem.scaled_matrix.dim() != dim)
    throw std::invalid_argument("QpeCircuit: eigenvector register does not match problem");
  powers_.reserve(layout.eigenvalue_qubits);
  inverse_powers_.reserve(layout.eigenvalue_qubits);
  const SpectralDecomposition spec = eig_hermitian(problem.scaled_matrix);
  for (int j = 0; j < layout.eigenvalue_qubits; ++j) {
    const double steps = double(std::size_t(1) << j);
    powers_.push_back(unitary_exp(spec, steps));
    inverse_powers_.push_back(unitary_exp(spec, -steps));
  }
}

void QpeCircuit::apply(StateVector& state) const {
  if (state.num_qubits != layout_.total_qubits())
    throw std::invalid_argument("QpeCircuit: state size mismatch");
  for (int j = 0; j < layout_.eigenvalue_qubits; ++j)
    apply_hadamard(state, layout_.eigenvalue_bit(j));
  for (int j = 0; j < layout_.eigenvalue_qubits; ++j)
    apply_controlled_unitary(state, layout_.eigenvalue_bit(j), powers_[j], 0,
                             layout_.eigenvector_qubits);
  qft_inverse(state, layout_.eigenvalue_bit(0), layout_.eigenvalue_qubits);
}

void QpeCircuit::apply_inverse(StateVector& state) const {
  if (state.num_qubits != layout_.total_qubits())
    throw std::invalid_argument("QpeCircuit: state size mismatch");
  qft(state, layout_.eigenvalue_bit(0), layout_.eigenvalue_qubits);
  for (int j = layout_.eigenvalue_qubits - 1; j >= 0; --j)
    apply_controlled_unitary(state, layout_.eigenvalue_bit(j), inverse_powers_[j], 0,
                             layout_.eigenvector_qubits);
  for (int j = 0; j < layout_.eigenvalue_qubits; ++j)
    apply_hadamard(state, layout_.eigenvalue_bit(j));
}

double eigenvalue_register_excitation(const StateVector& state,
                                      const RegisterLayout& layout) {
  const std::size_t reg_mask = (layout.grid_size() - 1) << layout.eigenvector_qubits;
  double mass = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i)
    if (i & reg_mask) mass += std::norm(state.amplitudes[i]);
  return mass;
}

void apply_qpe(const ScaledProblem& problem, const RegisterLayout& layout,
               StateVector& state) {
  if (eigenvalue_register_excitation(state, layout) > 1e-9)
    throw std::invalid_argument(
        "apply_qpe: eigenvalue register is not |0>; uncompute with apply_qpe_inverse");
  QpeCircuit(problem, layout).apply(state);
}

void apply_qpe_inverse(const ScaledProblem& problem, const RegisterLayout& layout,
                       StateVector& state) {
  QpeCircuit(problem, layout).apply_inverse(state);
}

std::vector<double> eigenvalue_register_distribution(const StateVector& state,
                                                     const RegisterLayout& layout) {
  if (state.num_qubits != layout.total_qubits())
    throw std::invalid_argument("eigenvalue_register_distribution: state size mismatch");
  std::vector<double> probs(layout.grid_size(), 0.0);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const std::size_t y = (i >> layout.eigenvector_qubits) & (layout.grid_size() - 1);
    probs[y] += std::norm(state.amplitudes[i]);
  }
  return probs;
}

PhaseReadout measure_eigenvalue_register(const ScaledProblem& problem,
                                         const RegisterLayout& layout,
                                         StateVector& state, Rng& rng) {
  const std::vector<double> probs = eigenvalue_register_distribution(state, layout);
  const double draw = rng.uniform01();
  double acc = 0.0;
  std::size_t outcome = probs.size();
  for (std::size_t y = 0; y < probs.size(); ++y) {
    acc += probs[y];
    if (draw < acc) {
      outcome = y;
      break;
    }
  }
  if (outcome == probs.size()) {
    // Rounding left a sliver at the top; take the heaviest outcome.
    outcome = 0;
    for (std::size_t y = 1; y < probs.size(); ++y)
      if (probs[y] > probs[outcome]) outcome = y;
  }
  // Collapse.
  const std::size_t reg_mask = (layout.grid_size() - 1) << layout.eigenvector_qubits;
  const std::size_t keep = outcome << layout.eigenvector_qubits;
  double kept = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if ((i & reg_mask) != keep)
      state.amplitudes[i] = 0.0;
    else
      kept += std::norm(state.amplitudes[i]);
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (std::size_t i = 0; i < state.dim(); ++i) state.amplitudes[i] *= scale;

  PhaseReadout readout;
  readout.bits = outcome;
  readout.phase = double(outcome) / double(layout.grid_size());
  readout.eigenvalue = problem.affine_map.eigenvalue_from_phase(readout.phase);
  readout.probability = probs[outcome];
  return readout;
}

StateVector extract_eigenvector_register(const StateVector& state,
                                         const RegisterLayout& layout,
                                         std::uint64_t bits) {
  StateVector out(layout.eigenvector_qubits);
  const std::size_t base = (std::size_t(1) << layout.ancilla_bit()) |
                           (std::size_t(bits) << layout.eigenvector_qubits);
  for (std::size_t v = 0; v < out.dim(); ++v) out.amplitudes[v] = state.amplitudes[base | v];
  const double n = out.norm();
  if (n > 0.0)
    for (Complex& z : out.amplitudes) z /= n;
  return out;
}

}  // namespace qeig
