#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qeig/rng.hpp"

namespace qeig {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  ComplexMatrix dagger() const;

  // Largest |a_ij - conj(a_ji)|; zero for an exactly Hermitian matrix.
  double max_asymmetry() const;
  bool is_hermitian(double tol) const { return max_asymmetry() <= tol; }

  double frobenius_norm() const;
  double max_abs() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> operator*(const ComplexMatrix& a, const std::vector<Complex>& v);

// Normalized amplitudes over 2^num_qubits basis states; qubit 0 is the least
// significant bit of the state index.
struct StateVector {
  int num_qubits = 0;
  std::vector<Complex> amplitudes;

  StateVector() = default;
  explicit StateVector(int qubits)
      : num_qubits(qubits), amplitudes(std::size_t(1) << qubits) {}

  static StateVector basis_state(int qubits, std::size_t index);

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const;
  void normalize();
};

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]

  std::size_t dim() const { return eigenvalues.size(); }
};

// Classical reference eigensolver: cyclic Jacobi with complex rotations.
// Throws std::invalid_argument for non-Hermitian input, reporting the
// largest asymmetry found.
SpectralDecomposition eig_hermitian(const ComplexMatrix& a);

// e^{2*pi*i*A*t} for Hermitian A.
ComplexMatrix unitary_exp(const ComplexMatrix& a, double t);

// Same, synthesized from an existing decomposition of A.
ComplexMatrix unitary_exp(const SpectralDecomposition& spec, double t);

// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b);

// Haar-uniform state: i.i.d. standard complex Gaussian amplitudes, normalized.
StateVector random_uniform_state(int num_qubits, Rng& rng);

}  // namespace qeig
