#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qeig/fixedpoint.hpp"
#include "qeig/linalg.hpp"
#include "qeig/pauli.hpp"
#include "qeig/qpe.hpp"
#include "qeig/rng.hpp"

namespace qeig {

// Pr(|<u|phi>|^2 >= 1/N) for a Haar-random phi: (1 - 1/N)^(N-1).
double prob_overlap_at_least_1_over_n(int dim);

// Pr(max over m fixed basis states of |<e_i|t>|^2 >= 1/N) for Haar-random t:
// 1 - sum_k (-1)^k C(m,k) (1 - k/N)^(N-1).
double prob_basis_set_hit(int m, int dim);

// Least K with 1 - (1 - 1/e)^K >= target.
int min_repetitions(double target);

enum class InitialStateStrategy { kBasis, kRandom };

// K unit vectors: distinct computational basis states sampled without
// replacement, or Haar-random states.
std::vector<StateVector> prepare_initial_states(InitialStateStrategy strategy,
                                                int num_qubits, int count, Rng& rng);

// ||H u - lambda u||_2, the classical certificate for a candidate pair.
double verify_candidate(const PauliSum& h, double lambda, const StateVector& u);

// Residual bound accepted by the solver: 10 grid cells in eigenvalue units.
double candidate_residual_tolerance(int r, double coefficient_bound);

struct SolverConfig {
  double lambda0 = 0.0;
  double epsilon = 0.0;              // > 0
  double delta = 0.01;               // error target
  int r = 7;                         // phase-register qubits
  InitialStateStrategy strategy = InitialStateStrategy::kBasis;
  int trials = 11;                   // K per epsilon round
  double p_floor = 0.0;              // assumed minimum overlap; 0 -> 1/2^n
  std::uint64_t seed = 1;
  int max_epsilon_doublings = 10;
};

struct TrialRecord {
  int round = 0;
  int index = 0;
  std::string initial_state_id;  // "x<k>" basis / "y<k>" random
  double overlap_p = 0.0;        // vs the window eigenspace
  double fidelity_f = 0.0;       // post-loop, vs the window eigenspace
  double measured_eigenvalue = 0.0;
  int queries = 0;  // oracle queries in the loop, 2l
  bool success = false;
};

enum class SolverStatus { kFound, kNotFound };

struct SolverResult {
  SolverStatus status = SolverStatus::kNotFound;
  double eigenvalue = 0.0;
  StateVector eigenvector;
  double fidelity_vs_reference = 0.0;
  long queries_used = 0;  // loop queries plus one readout per trial
  std::vector<TrialRecord> trials;
  double window_lo = 0.0;  // final eigenvalue window around lambda0
  double window_hi = 0.0;
  int query_count = 0;      // ceil of the optimal-query formula
  int loop_iterations = 0;  // l
};

// Eigenvalue indices whose nearest grid phase falls inside the window.
std::vector<int> window_member_indices(const SpectralDecomposition& spec,
                                       const ScaledProblem& problem,
                                       const OracleWindow& window);

// Sum over the (ancilla, grid) slices of the squared projection onto the
// span of the given eigenvectors.
double window_subspace_fidelity(const StateVector& state, const RegisterLayout& layout,
                                const SpectralDecomposition& spec,
                                const std::vector<int>& members);

// Full Type II pipeline: shift, rescale, per-trial fixed-point loop in
// circuit mode, final phase-estimation readout, classical verification,
// epsilon doubling on repeated failure.
SolverResult solve_type2(const PauliSum& h, const SolverConfig& config);

// --- reproduction-target selection ------------------------------------------

// A degenerate cluster of eigenvalues serving as the search target.
struct ReproductionTarget {
  std::vector<int> eigen_indices;
  double lambda0 = 0.0;   // cluster eigenvalue
  double epsilon = 0.0;   // half distance to the nearest eigenvalue outside
  bool pattern_matched = false;
};

// First eigenvector whose basis-state overlap multiset contains every pattern
// value within tol (values matched to distinct basis states). Only
// non-degenerate eigenvalues are considered: inside a degenerate cluster the
// individual eigenvectors, and hence their overlaps, are basis artifacts.
std::optional<int> find_pattern_eigenvector(const SpectralDecomposition& spec,
                                            const std::vector<double>& pattern,
                                            double tol);

// Target for experiments whose lambda0 the source tables leave unstated:
// the pattern-matched eigenvector when one exists, otherwise a deterministic
// fallback cluster that is resolvable on the r-bit grid (gap to the rest of
// the spectrum of at least two grid cells) with the most basis states at
// overlap >= 1/N, ties broken by isolation and then index.
ReproductionTarget select_reproduction_target(const PauliSum& h,
                                              const SpectralDecomposition& spec,
                                              const std::vector<double>& pattern,
                                              int r);

// Target defined by a given point: the cluster of the eigenvalue nearest
// lambda0, epsilon = half gap to the nearest eigenvalue outside the cluster.
ReproductionTarget target_near(const SpectralDecomposition& spec, double lambda0);

}  // namespace qeig
