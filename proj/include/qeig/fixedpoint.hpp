#pragma once

#include <cstdint>
#include <vector>

#include "qeig/linalg.hpp"
#include "qeig/qpe.hpp"

namespace qeig {

// Chebyshev polynomial of the first kind, fractional degree supported:
// cos(d*acos x) on [-1, 1], cosh(d*acosh x) for x > 1. Below -1 only integer
// degrees are defined; fractional degree there throws.
double chebyshev_t(double degree, double x);

// Yoder-Low-Chuang phase sequence for l Grover iterations at error target
// delta. alphas[j-1] = beta[l-j] = -2*acot(tan(2*pi*j/L) * sqrt(1 - eta^2))
// with L = 2l+1 and 1/eta = T_{1/L}(1/sqrt(delta)).
struct PhaseSchedule {
  int iterations = 0;  // l
  double delta = 0.0;
  double eta = 0.0;
  std::vector<double> alphas;
  std::vector<double> betas;

  int sequence_length() const { return 2 * iterations + 1; }  // L
  int oracle_queries() const { return 2 * iterations; }       // q = 2l
};

PhaseSchedule ylc_schedule(int iterations, double delta);

// Optimal query count q = ln(2/sqrt(delta))/sqrt(p) - 1, rounded up and
// clamped at zero. p = 0 signals an empty solution set and throws.
int query_count_ylc(double p, double delta);

// Grover pi/3 fixed-point count q = ln(delta/2)/ln(1-mu) - 1, rounded up.
int query_count_pi3(double mu, double delta);

// l = ceil(q/2); the schedule runs l iterations and issues 2l oracle queries.
int iterations_for_queries(int queries);

// Marked set of r-bit grid values: member(y) <=> lo <= y/2^r <= hi.
struct OracleWindow {
  int r = 0;
  double lo = 0.0;
  double hi = 0.0;

  std::size_t grid_size() const { return std::size_t(1) << r; }
  bool member(std::uint64_t y) const {
    const double f = double(y) / double(grid_size());
    return lo <= f && f <= hi;
  }
  std::uint64_t nearest_grid(double phase) const;
  // Nearest-grid-point membership; the same rule decides oracle marking and
  // the solver's success check.
  bool contains_phase(double phase) const { return member(nearest_grid(phase)); }

  static OracleWindow from_problem(const ScaledProblem& problem, int r);
};

// R_t(beta) = U_PE^dagger . CZ(beta) . U_PE on the full circuit state. The
// ancilla must sit in |1> and the eigenvalue register starts in |0>^r (up to
// QPE leakage from earlier iterations).
void reflect_target_circuit(const QpeCircuit& circuit, const OracleWindow& window,
                            double beta, StateVector& state);

// One-shot form; loops should build the QpeCircuit once instead.
void reflect_target_circuit(const ScaledProblem& problem, const RegisterLayout& layout,
                            const OracleWindow& window, double beta, StateVector& state);

// Exact eigenprojector version: I - (1 - e^{i*beta}) P over eigenvectors with
// eigenvalue inside [lambda_lo, lambda_hi], acting on the low eigenvector
// register of `state` (which may be the bare n-qubit state).
void reflect_target_ideal(const SpectralDecomposition& spec, double lambda_lo,
                          double lambda_hi, double beta, StateVector& state);

// R_phi(alpha) = I - (1 - e^{i*alpha}) |phi><phi| on the low register.
void reflect_initial(const StateVector& phi, double alpha, StateVector& state);

// One fixed-point Grover step, R_t then R_phi; the global minus sign of
// -R_phi R_t is dropped.
void grover_iteration_circuit(const QpeCircuit& circuit, const OracleWindow& window,
                              const StateVector& phi, double alpha, double beta,
                              StateVector& state);
void grover_iteration_ideal(const SpectralDecomposition& spec, double lambda_lo,
                            double lambda_hi, const StateVector& phi, double alpha,
                            double beta, StateVector& state);

}  // namespace qeig
