#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qeig/linalg.hpp"

namespace qeig {

// One weighted Pauli word. The leftmost character of `word` acts on the
// highest qubit, the rightmost on qubit 0, so "IIIZ" is sigma_z on qubit 0.
struct PauliTerm {
  double coefficient = 0.0;
  std::string word;
};

// Real-weighted sum of Pauli words; duplicate words are merged on insertion
// and exactly-cancelled terms dropped.
class PauliSum {
 public:
  explicit PauliSum(int num_qubits);

  static PauliSum from_terms(int num_qubits, const std::vector<PauliTerm>& terms);

  void add(double coefficient, std::string_view word);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  // 1-norm of the coefficients (the spectral bound Lambda).
  double coefficient_l1() const;
  double identity_coefficient() const;

 private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
};

// Eq.-style XYZ chain: couplings on neighboring sites plus a z field on each
// site; sites are 1-based in the physics convention, site j lives on qubit j-1.
PauliSum build_heisenberg(int sites, double jx, double jy, double jz, double h,
                          bool periodic);

// 4-qubit hydrogen-molecule Hamiltonian after the Jordan-Wigner transform,
// coefficients fixed.
PauliSum build_h2_jw();

// H - lambda0 * I.
PauliSum shift(const PauliSum& h, double lambda0);

ComplexMatrix to_matrix(const PauliSum& h);

// H|psi> without forming the matrix.
std::vector<Complex> apply_pauli_sum(const PauliSum& h, const std::vector<Complex>& v);

struct AffineMap {
  double offset = 0.0;  // phase = offset + scale * eigenvalue
  double scale = 1.0;

  double phase_from_eigenvalue(double lambda) const { return offset + scale * lambda; }
  double eigenvalue_from_phase(double phase) const { return (phase - offset) / scale; }
};

// Shifted Hamiltonian rescaled so every eigenphase of U = e^{2*pi*i*A_s} lies
// in [0, 1/2]: A_s = (H_shifted + Lambda*I) / (4*Lambda). The search point
// (eigenvalue 0 of H_shifted) maps to phase 1/4, and an eigenvalue window of
// half-width epsilon maps to phases 1/4 +- epsilon/(4*Lambda).
struct ScaledProblem {
  ComplexMatrix scaled_matrix;
  double coefficient_bound = 0.0;  // Lambda
  AffineMap affine_map;
  double window_lo = 0.25;  // phase units
  double window_hi = 0.25;
};

ScaledProblem scale_for_qpe(const PauliSum& shifted, double epsilon = 0.0);

// [[0, A], [A^dagger, 0]]; its nonnegative eigenvalues are the singular
// values of A.
ComplexMatrix hermitian_embed(const ComplexMatrix& a);

// Hermitian companions for a normal matrix.
ComplexMatrix plus_dagger(const ComplexMatrix& a);     // A + A^dagger
ComplexMatrix i_minus_dagger(const ComplexMatrix& a);  // i(A - A^dagger)

// Text format: one `<coefficient> <word>` per line, `#` comments.
PauliSum parse_pauli_sum(std::istream& in);
PauliSum load_pauli_file(const std::string& path);
std::string format_pauli_sum(const PauliSum& h);

}  // namespace qeig
