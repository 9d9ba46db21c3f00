#include "qeig/fixedpoint.hpp"

#include <cmath>
#include <stdexcept>

namespace qeig {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double chebyshev_t(double degree, double x) {
  if (degree < 0.0) throw std::invalid_argument("chebyshev_t: degree must be >= 0");
  if (x >= 1.0) return std::cosh(degree * std::acosh(std::max(x, 1.0)));
  if (x >= -1.0) return std::cos(degree * std::acos(x));
  if (std::nearbyint(degree) == degree) {
    const double value = std::cosh(degree * std::acosh(-x));
    return (std::llround(degree) % 2 == 0) ? value : -value;
  }
  throw std::domain_error("chebyshev_t: x < -1 undefined for fractional degree");
}

PhaseSchedule ylc_schedule(int iterations, double delta) {
  if (iterations < 1) throw std::invalid_argument("ylc_schedule: need l >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("ylc_schedule: delta must lie in (0, 1)");
  PhaseSchedule s;
  s.iterations = iterations;
  s.delta = delta;
  const int big_l = 2 * iterations + 1;
  s.eta = 1.0 / chebyshev_t(1.0 / big_l, 1.0 / std::sqrt(delta));
  const double root = std::sqrt(std::max(0.0, 1.0 - s.eta * s.eta));
  s.alphas.resize(iterations);
  for (int j = 1; j <= iterations; ++j) {
    const double tangent = std::tan(2.0 * kPi * j / big_l);
    const double acot = kPi / 2.0 - std::atan(tangent * root);  // in (0, pi)
    s.alphas[j - 1] = -2.0 * acot;
  }
  s.betas.assign(s.alphas.rbegin(), s.alphas.rend());
  return s;
}

int query_count_ylc(double p, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("query_count_ylc: delta must lie in (0, 1)");
  if (p == 0.0) throw std::invalid_argument("query_count_ylc: zero overlap, no solution");
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("query_count_ylc: p must lie in (0, 1]");
  const double raw = std::log(2.0 / std::sqrt(delta)) / std::sqrt(p) - 1.0;
  return raw <= 0.0 ? 0 : int(std::ceil(raw));
}

int query_count_pi3(double mu, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("query_count_pi3: delta must lie in (0, 1)");
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("query_count_pi3: mu must lie in (0, 1)");
  const double raw = std::log(delta / 2.0) / std::log1p(-mu) - 1.0;
  return raw <= 0.0 ? 0 : int(std::ceil(raw));
}

int iterations_for_queries(int queries) {
  if (queries < 0) throw std::invalid_argument("iterations_for_queries: negative count");
  return (queries + 1) / 2;
}

std::uint64_t OracleWindow::nearest_grid(double phase) const {
  const double scaled = phase * double(grid_size());
  long long y = std::llround(scaled);
  const long long size = (long long)grid_size();
  y %= size;
  if (y < 0) y += size;
  return std::uint64_t(y);
}

OracleWindow OracleWindow::from_problem(const ScaledProblem& problem, int r) {
  if (r < 1) throw std::invalid_argument("OracleWindow: need r >= 1");
  OracleWindow w;
  w.r = r;
  w.lo = problem.window_lo;
  w.hi = problem.window_hi;
  return w;
}

namespace {

// CZ(beta): phase e^{i*beta} on components with the ancilla set and the
// eigenvalue register inside the window.
void apply_window_phase(const RegisterLayout& layout, const OracleWindow& window,
                        double beta, StateVector& state) {
  const Complex f(std::cos(beta), std::sin(beta));
  const std::size_t anc = std::size_t(1) << layout.ancilla_bit();
  const std::size_t grid = layout.grid_size();
  const std::size_t vec_dim = std::size_t(1) << layout.eigenvector_qubits;
  for (std::size_t y = 0; y < grid; ++y) {
    if (!window.member(y)) continue;
    const std::size_t base = anc | (y << layout.eigenvector_qubits);
    for (std::size_t v = 0; v < vec_dim; ++v) state.amplitudes[base | v] *= f;
  }
}

}  // namespace

void reflect_target_circuit(const QpeCircuit& circuit, const OracleWindow& window,
                            double beta, StateVector& state) {
  if (window.r != circuit.layout().eigenvalue_qubits)
    throw std::invalid_argument("reflect_target_circuit: window grid mismatch");
  circuit.apply(state);
  apply_window_phase(circuit.layout(), window, beta, state);
  circuit.apply_inverse(state);
}

void reflect_target_circuit(const ScaledProblem& problem, const RegisterLayout& layout,
                            const OracleWindow& window, double beta, StateVector& state) {
  reflect_target_circuit(QpeCircuit(problem, layout), window, beta, state);
}

void reflect_target_ideal(const SpectralDecomposition& spec, double lambda_lo,
                          double lambda_hi, double beta, StateVector& state) {
  const std::size_t dim = spec.dim();
  if (state.dim() % dim != 0)
    throw std::invalid_argument("reflect_target_ideal: register size mismatch");
  const Complex delta_phase = Complex(std::cos(beta), std::sin(beta)) - 1.0;
  std::vector<std::size_t> marked;
  for (std::size_t k = 0; k < dim; ++k)
    if (spec.eigenvalues[k] >= lambda_lo && spec.eigenvalues[k] <= lambda_hi)
      marked.push_back(k);
  if (marked.empty()) return;
  const std::size_t slices = state.dim() / dim;
  for (std::size_t s = 0; s < slices; ++s) {
    Complex* slice = state.amplitudes.data() + s * dim;
    for (std::size_t k : marked) {
      Complex overlap = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        overlap += std::conj(spec.eigenvectors(i, k)) * slice[i];
      if (overlap == Complex(0.0)) continue;
      const Complex weight = delta_phase * overlap;
      for (std::size_t i = 0; i < dim; ++i) slice[i] += weight * spec.eigenvectors(i, k);
    }
  }
}

void reflect_initial(const StateVector& phi, double alpha, StateVector& state) {
  if (std::abs(phi.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("reflect_initial: phi must be normalized");
  const std::size_t dim = phi.dim();
  if (state.dim() % dim != 0)
    throw std::invalid_argument("reflect_initial: register size mismatch");
  const Complex delta_phase = Complex(std::cos(alpha), std::sin(alpha)) - 1.0;
  const std::size_t slices = state.dim() / dim;
  for (std::size_t s = 0; s < slices; ++s) {
    Complex* slice = state.amplitudes.data() + s * dim;
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < dim; ++i) overlap += std::conj(phi.amplitudes[i]) * slice[i];
    if (overlap == Complex(0.0)) continue;
    const Complex weight = delta_phase * overlap;
    for (std::size_t i = 0; i < dim; ++i) slice[i] += weight * phi.amplitudes[i];
  }
}

void grover_iteration_circuit(const QpeCircuit& circuit, const OracleWindow& window,
                              const StateVector& phi, double alpha, double beta,
                              StateVector& state) {
  reflect_target_circuit(circuit, window, beta, state);
  reflect_initial(phi, alpha, state);
}

void grover_iteration_ideal(const SpectralDecomposition& spec, double lambda_lo,
                            double lambda_hi, const StateVector& phi, double alpha,
                            double beta, StateVector& state) {
  reflect_target_ideal(spec, lambda_lo, lambda_hi, beta, state);
  reflect_initial(phi, alpha, state);
}

}  // namespace qeig
