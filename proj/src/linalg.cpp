#include "qeig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qeig {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double ComplexMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const Complex& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
  double worst = 0.0;
  for (const Complex& z : data_) worst = std::max(worst, std::abs(z));
  return worst;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& a, const std::vector<Complex>& v) {
  if (a.dim() != v.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
  const std::size_t n = a.dim();
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

StateVector StateVector::basis_state(int qubits, std::size_t index) {
  StateVector s(qubits);
  s.amplitudes[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const Complex& z : amplitudes) sum += std::norm(z);
  return std::sqrt(sum);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::runtime_error("cannot normalize zero state");
  for (Complex& z : amplitudes) z /= n;
}

namespace {

double offdiag_frobenius(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

SpectralDecomposition eig_hermitian(const ComplexMatrix& input) {
  const std::size_t n = input.dim();
  if (n == 0) throw std::invalid_argument("empty matrix");
  const double herm_tol = 1e-12 * std::max(1.0, input.max_abs());
  if (!input.is_hermitian(herm_tol)) {
    std::ostringstream msg;
    msg << "eig_hermitian: input is not Hermitian, max asymmetry "
        << input.max_asymmetry();
    throw std::invalid_argument(msg.str());
  }

  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double stop = 1e-12 * std::max(1.0, input.frobenius_norm());

  for (int sweep = 0; sweep < 100 && offdiag_frobenius(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        // Phase out a_pq, then a real Jacobi rotation on the (p,q) plane.
        const Complex phase = apq / r;  // e^{i*arg(a_pq)}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Column mixer G: col_p' = c*col_p - s*conj(phase)*col_q,
        //                 col_q' = s*col_p + c*conj(phase)*col_q.
        const Complex gp = -s * std::conj(phase);
        const Complex gq = c * std::conj(phase);
        for (std::size_t i = 0; i < n; ++i) {
          const Complex aip = a(i, p);
          const Complex aiq = a(i, q);
          a(i, p) = c * aip + gp * aiq;
          a(i, q) = s * aip + gq * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const Complex apj = a(p, j);
          const Complex aqj = a(q, j);
          a(p, j) = c * apj + std::conj(gp) * aqj;
          a(q, j) = s * apj + std::conj(gq) * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vip = v(i, p);
          const Complex viq = v(i, q);
          v(i, p) = c * vip + gp * viq;
          v(i, q) = s * vip + gq * viq;
        }
      }
    }
  }
  if (offdiag_frobenius(a) > stop)
    throw std::runtime_error("eig_hermitian: Jacobi sweep did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix unitary_exp(const ComplexMatrix& a, double t) {
  return unitary_exp(eig_hermitian(a), t);
}

ComplexMatrix unitary_exp(const SpectralDecomposition& spec, double t) {
  const std::size_t n = spec.dim();
  std::vector<Complex> phases(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = kTwoPi * spec.eigenvalues[k] * t;
    phases[k] = Complex(std::cos(angle), std::sin(angle));
  }
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += spec.eigenvectors(i, k) * phases[k] * std::conj(spec.eigenvectors(j, k));
      out(i, j) = acc;
    }
  return out;
}

Complex inner_product(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner_product: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(inner_product(a.amplitudes, b.amplitudes));
}

StateVector random_uniform_state(int num_qubits, Rng& rng) {
  if (num_qubits < 1) throw std::invalid_argument("random_uniform_state: need n >= 1");
  StateVector s(num_qubits);
  for (Complex& z : s.amplitudes) z = Complex(rng.normal(), rng.normal());
  s.normalize();
  return s;
}

}  // namespace qeig
