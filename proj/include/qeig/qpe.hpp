#pragma once

#include <cstdint>
#include <vector>

#include "qeig/linalg.hpp"
#include "qeig/pauli.hpp"
#include "qeig/rng.hpp"

namespace qeig {

// Three-register layout over one statevector. Bit positions, least
// significant first: eigenvector register [0, n), eigenvalue register
// [n, n+r) with grid bit j at qubit n+j, ancilla at n+r (most significant).
struct RegisterLayout {
  int eigenvalue_qubits = 0;   // r
  int eigenvector_qubits = 0;  // n

  RegisterLayout() = default;
  RegisterLayout(int r, int n);

  int total_qubits() const { return eigenvalue_qubits + eigenvector_qubits + 1; }
  int eigenvalue_bit(int j) const { return eigenvector_qubits + j; }
  int ancilla_bit() const { return eigenvector_qubits + eigenvalue_qubits; }
  std::size_t dim() const { return std::size_t(1) << total_qubits(); }
  std::size_t grid_size() const { return std::size_t(1) << eigenvalue_qubits; }
};

// |ancilla=1> |y=0> |phi>.
StateVector make_circuit_state(const RegisterLayout& layout, const StateVector& phi);

// --- gate layer -------------------------------------------------------------

void apply_hadamard(StateVector& state, int qubit);
void apply_phase(StateVector& state, int qubit, double angle);  // diag(1, e^{i*angle})
void apply_controlled_phase(StateVector& state, int control, int target, double angle);
void apply_swap(StateVector& state, int a, int b);

// Dense unitary on the contiguous qubit range [lo, lo + count).
void apply_unitary(StateVector& state, const ComplexMatrix& u, int lo, int count);
void apply_controlled_unitary(StateVector& state, int control, const ComplexMatrix& u,
                              int lo, int count);

// |y> -> 2^{-count/2} sum_z exp(2*pi*i*y*z/2^count) |z> on qubits
// [lo, lo + count), where qubit lo carries the least significant bit of y.
void qft(StateVector& state, int lo, int count);
void qft_inverse(StateVector& state, int lo, int count);

// --- phase estimation -------------------------------------------------------

// The U_PE block for a scaled problem: Hadamards on the eigenvalue register,
// controlled U^{2^j} with U = e^{2*pi*i*A_s}, then the inverse QFT. Powers are
// built once from the eigendecomposition of A_s.
class QpeCircuit {
 public:
  QpeCircuit(const ScaledProblem& problem, const RegisterLayout& layout);

  void apply(StateVector& state) const;
  void apply_inverse(StateVector& state) const;

  const RegisterLayout& layout() const { return layout_; }
  const AffineMap& affine_map() const { return affine_; }

 private:
  RegisterLayout layout_;
  AffineMap affine_;
  std::vector<ComplexMatrix> powers_;          // U^{2^j}
  std::vector<ComplexMatrix> inverse_powers_;  // U^{-2^j}
};

// Probability mass outside |0>^r on the eigenvalue register.
double eigenvalue_register_excitation(const StateVector& state,
                                      const RegisterLayout& layout);

// Spec-level one-shot ops. apply_qpe requires the eigenvalue register in
// |0>^r (mass outside below 1e-9) and throws otherwise; callers that run the
// oracle loop use QpeCircuit directly, where leakage residue is expected.
void apply_qpe(const ScaledProblem& problem, const RegisterLayout& layout,
               StateVector& state);
void apply_qpe_inverse(const ScaledProblem& problem, const RegisterLayout& layout,
                       StateVector& state);

struct PhaseReadout {
  std::uint64_t bits = 0;    // y
  double phase = 0.0;        // y / 2^r
  double eigenvalue = 0.0;   // affine_map inverse of phase (shifted units)
  double probability = 0.0;  // Born probability of this outcome
};

// Marginal Born distribution of the eigenvalue register.
std::vector<double> eigenvalue_register_distribution(const StateVector& state,
                                                     const RegisterLayout& layout);

// Samples the eigenvalue register, collapses the state, and maps the grid
// value back through the affine map.
PhaseReadout measure_eigenvalue_register(const ScaledProblem& problem,
                                         const RegisterLayout& layout,
                                         StateVector& state, Rng& rng);

// Eigenvector-register state after a collapse: the (ancilla=1, y=bits) slice.
StateVector extract_eigenvector_register(const StateVector& state,
                                         const RegisterLayout& layout,
                                         std::uint64_t bits);

}  // namespace qeig
