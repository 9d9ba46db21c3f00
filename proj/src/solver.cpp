#include "qeig/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qeig {

double prob_overlap_at_least_1_over_n(int dim) {
  if (dim < 2) throw std::invalid_argument("prob_overlap_at_least_1_over_n: need N >= 2");
  return std::pow(1.0 - 1.0 / dim, dim - 1);
}

double prob_basis_set_hit(int m, int dim) {
  if (dim < 2) throw std::invalid_argument("prob_basis_set_hit: need N >= 2");
  if (m < 1 || m > dim)
    throw std::invalid_argument("prob_basis_set_hit: need 1 <= m <= N");
  double sum = 0.0;
  double binom = 1.0;  // C(m, k)
  for (int k = 0; k <= m; ++k) {
    const double term = binom * std::pow(1.0 - double(k) / dim, dim - 1);
    sum += (k % 2 == 0) ? term : -term;
    binom = binom * (m - k) / (k + 1);
  }
  return std::clamp(1.0 - sum, 0.0, 1.0);
}

int min_repetitions(double target) {
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("min_repetitions: target must lie in (0, 1)");
  const double miss = 1.0 - std::exp(-1.0);  // 1 - 1/e
  int k = 1;
  double fail = miss;
  while (1.0 - fail < target) {
    fail *= miss;
    ++k;
    if (k > 10000) throw std::runtime_error("min_repetitions: target unreachable");
  }
  return k;
}

std::vector<StateVector> prepare_initial_states(InitialStateStrategy strategy,
                                                int num_qubits, int count, Rng& rng) {
  if (num_qubits < 1 || count < 1)
    throw std::invalid_argument("prepare_initial_states: bad arguments");
  std::vector<StateVector> out;
  out.reserve(count);
  if (strategy == InitialStateStrategy::kRandom) {
    for (int k = 0; k < count; ++k) out.push_back(random_uniform_state(num_qubits, rng));
    return out;
  }
  const std::size_t dim = std::size_t(1) << num_qubits;
  if (std::size_t(count) > dim)
    throw std::invalid_argument("prepare_initial_states: more basis states than dimension");
  // Partial Fisher-Yates for a without-replacement sample.
  std::vector<std::size_t> pool(dim);
  std::iota(pool.begin(), pool.end(), std::size_t(0));
  for (int k = 0; k < count; ++k) {
    const std::size_t pick = k + rng.below(dim - k);
    std::swap(pool[k], pool[pick]);
    out.push_back(StateVector::basis_state(num_qubits, pool[k]));
  }
  return out;
}

double verify_candidate(const PauliSum& h, double lambda, const StateVector& u) {
  if (u.num_qubits != h.num_qubits())
    throw std::invalid_argument("verify_candidate: dimension mismatch");
  std::vector<Complex> hu = apply_pauli_sum(h, u.amplitudes);
  double sum = 0.0;
  for (std::size_t i = 0; i < hu.size(); ++i)
    sum += std::norm(hu[i] - lambda * u.amplitudes[i]);
  return std::sqrt(sum);
}

double candidate_residual_tolerance(int r, double coefficient_bound) {
  return 10.0 * std::ldexp(4.0 * coefficient_bound, -r);
}

std::vector<int> window_member_indices(const SpectralDecomposition& spec,
                                       const ScaledProblem& problem,
                                       const OracleWindow& window) {
  std::vector<int> members;
  for (std::size_t k = 0; k < spec.dim(); ++k) {
    const double phase = problem.affine_map.phase_from_eigenvalue(spec.eigenvalues[k]);
    if (window.contains_phase(phase)) members.push_back(int(k));
  }
  return members;
}

double window_subspace_fidelity(const StateVector& state, const RegisterLayout& layout,
                                const SpectralDecomposition& spec,
                                const std::vector<int>& members) {
  if (members.empty()) return 0.0;
  const std::size_t dim = spec.dim();
  if (state.num_qubits != layout.total_qubits() ||
      dim != std::size_t(1) << layout.eigenvector_qubits)
    throw std::invalid_argument("window_subspace_fidelity: register mismatch");
  const std::size_t slices = state.dim() / dim;
  double total = 0.0;
  for (std::size_t s = 0; s < slices; ++s) {
    const Complex* slice = state.amplitudes.data() + s * dim;
    for (int k : members) {
      Complex overlap = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        overlap += std::conj(spec.eigenvectors(i, std::size_t(k))) * slice[i];
      total += std::norm(overlap);
    }
  }
  return total;
}

namespace {

double subspace_overlap(const StateVector& phi, const SpectralDecomposition& spec,
                        const std::vector<int>& members) {
  double total = 0.0;
  for (int k : members) {
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < phi.dim(); ++i)
      overlap += std::conj(spec.eigenvectors(i, std::size_t(k))) * phi.amplitudes[i];
    total += std::norm(overlap);
  }
  return total;
}

}  // namespace

SolverResult solve_type2(const PauliSum& h, const SolverConfig& config) {
  const int n = h.num_qubits();
  if (config.r < 1) throw std::invalid_argument("solve_type2: need r >= 1");
  if (config.r + n + 1 > 13)
    throw std::invalid_argument(
        "solve_type2: oversized system, full-circuit mode needs r + n + 1 <= 13");
  if (!(config.epsilon > 0.0))
    throw std::invalid_argument("solve_type2: epsilon must be positive");
  if (!(config.delta > 0.0 && config.delta < 1.0))
    throw std::invalid_argument("solve_type2: delta must lie in (0, 1)");
  if (config.trials < 1) throw std::invalid_argument("solve_type2: need trials >= 1");
  if (config.max_epsilon_doublings < 0)
    throw std::invalid_argument("solve_type2: negative doubling budget");

  const std::size_t dim = std::size_t(1) << n;
  const double p_floor = config.p_floor > 0.0 ? config.p_floor : 1.0 / double(dim);
  const int query_count = query_count_ylc(p_floor, config.delta);
  const int l = iterations_for_queries(query_count);
  const PhaseSchedule schedule =
      l >= 1 ? ylc_schedule(l, config.delta) : PhaseSchedule{};

  const PauliSum shifted = shift(h, config.lambda0);
  const SpectralDecomposition spec = eig_hermitian(to_matrix(shifted));
  const RegisterLayout layout(config.r, n);
  const Rng root(config.seed);

  SolverResult result;
  result.query_count = query_count;
  result.loop_iterations = l;

  double epsilon = config.epsilon;
  for (int round = 0; round <= config.max_epsilon_doublings; ++round, epsilon *= 2.0) {
    const ScaledProblem problem = scale_for_qpe(shifted, epsilon);
    const OracleWindow window = OracleWindow::from_problem(problem, config.r);
    const std::vector<int> members = window_member_indices(spec, problem, window);
    const QpeCircuit circuit(problem, layout);
    const double residual_tol =
        candidate_residual_tolerance(config.r, problem.coefficient_bound);
    result.window_lo = config.lambda0 - epsilon;
    result.window_hi = config.lambda0 + epsilon;

    Rng round_rng = root.substream(0x5eed0000ULL + std::uint64_t(round));
    const std::vector<StateVector> states =
        prepare_initial_states(config.strategy, n, config.trials, round_rng);

    for (int k = 0; k < config.trials; ++k) {
      Rng trial_rng =
          root.substream(std::uint64_t(round) * std::uint64_t(config.trials) + k + 1);
      const StateVector& phi = states[std::size_t(k)];

      TrialRecord record;
      record.round = round;
      record.index = k;
      record.queries = schedule.oracle_queries();
      if (config.strategy == InitialStateStrategy::kBasis) {
        std::size_t basis_index = 0;
        for (std::size_t i = 0; i < phi.dim(); ++i)
          if (phi.amplitudes[i] != Complex(0.0)) basis_index = i;
        record.initial_state_id = "x" + std::to_string(basis_index);
      } else {
        record.initial_state_id = "y" + std::to_string(k);
      }
      record.overlap_p = subspace_overlap(phi, spec, members);

      StateVector state = make_circuit_state(layout, phi);
      for (int j = 0; j < l; ++j)
        grover_iteration_circuit(circuit, window, phi, schedule.alphas[std::size_t(j)],
                                 schedule.betas[std::size_t(j)], state);
      record.fidelity_f = window_subspace_fidelity(state, layout, spec, members);

      circuit.apply(state);  // one more QPE gate, then read the register
      const PhaseReadout readout =
          measure_eigenvalue_register(problem, layout, state, trial_rng);
      result.queries_used += schedule.oracle_queries() + 1;

      const StateVector candidate =
          extract_eigenvector_register(state, layout, readout.bits);
      const double measured = readout.eigenvalue + config.lambda0;
      record.measured_eigenvalue = measured;
      const double residual = verify_candidate(h, measured, candidate);
      record.success = window.member(readout.bits) && residual <= residual_tol;
      result.trials.push_back(record);

      if (record.success) {
        result.status = SolverStatus::kFound;
        result.eigenvalue = measured;
        result.eigenvector = candidate;
        result.fidelity_vs_reference = subspace_overlap(candidate, spec, members);
        return result;
      }
    }
  }
  result.status = SolverStatus::kNotFound;
  return result;
}

std::optional<int> find_pattern_eigenvector(const SpectralDecomposition& spec,
                                            const std::vector<double>& pattern,
                                            double tol) {
  if (pattern.empty()) return std::nullopt;
  const std::size_t dim = spec.dim();
  std::vector<double> sorted_pattern = pattern;
  std::sort(sorted_pattern.rbegin(), sorted_pattern.rend());
  for (std::size_t k = 0; k < dim; ++k) {
    // Inside a degenerate cluster the eigenbasis is arbitrary, so per-vector
    // overlaps carry no information there; only isolated eigenvalues can
    // exhibit a reproducible pattern.
    const bool degenerate =
        (k > 0 && spec.eigenvalues[k] - spec.eigenvalues[k - 1] < 1e-9) ||
        (k + 1 < dim && spec.eigenvalues[k + 1] - spec.eigenvalues[k] < 1e-9);
    if (degenerate) continue;
    std::vector<double> overlaps(dim);
    for (std::size_t i = 0; i < dim; ++i) overlaps[i] = std::norm(spec.eigenvectors(i, k));
    std::vector<bool> used(dim, false);
    bool all = true;
    for (double target : sorted_pattern) {
      int best = -1;
      double best_err = tol;
      for (std::size_t i = 0; i < dim; ++i) {
        if (used[i]) continue;
        const double err = std::abs(overlaps[i] - target);
        if (err <= best_err) {
          best_err = err;
          best = int(i);
        }
      }
      if (best < 0) {
        all = false;
        break;
      }
      used[std::size_t(best)] = true;
    }
    if (all) return int(k);
  }
  return std::nullopt;
}

namespace {

std::vector<std::vector<int>> eigenvalue_clusters(const SpectralDecomposition& spec,
                                                  double tol = 1e-9) {
  std::vector<std::vector<int>> clusters;
  std::size_t i = 0;
  while (i < spec.dim()) {
    std::vector<int> cluster{int(i)};
    while (i + 1 < spec.dim() &&
           spec.eigenvalues[i + 1] - spec.eigenvalues[cluster.front()] < tol) {
      ++i;
      cluster.push_back(int(i));
    }
    clusters.push_back(cluster);
    ++i;
  }
  return clusters;
}

double cluster_isolation(const SpectralDecomposition& spec, const std::vector<int>& cluster) {
  const double lam = spec.eigenvalues[std::size_t(cluster.front())];
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < spec.dim(); ++j) {
    const double gap = std::abs(spec.eigenvalues[j] - lam);
    if (gap > 1e-9) best = std::min(best, gap);
  }
  return best;
}

int strong_basis_states(const SpectralDecomposition& spec, const std::vector<int>& cluster) {
  const std::size_t dim = spec.dim();
  int count = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    double p = 0.0;
    for (int k : cluster) p += std::norm(spec.eigenvectors(i, std::size_t(k)));
    if (p >= 1.0 / double(dim)) ++count;
  }
  return count;
}

}  // namespace

ReproductionTarget select_reproduction_target(const PauliSum& h,
                                              const SpectralDecomposition& spec,
                                              const std::vector<double>& pattern,
                                              int r) {
  if (auto hit = find_pattern_eigenvector(spec, pattern, 1e-3)) {
    ReproductionTarget target;
    target.pattern_matched = true;
    const double lam = spec.eigenvalues[std::size_t(*hit)];
    for (std::size_t j = 0; j < spec.dim(); ++j)
      if (std::abs(spec.eigenvalues[j] - lam) < 1e-9) target.eigen_indices.push_back(int(j));
    target.lambda0 = lam;
    target.epsilon = 0.5 * cluster_isolation(spec, target.eigen_indices);
    return target;
  }

  // No eigenvector shows the printed pattern; fall back to a deterministic
  // cluster that the r-bit grid can resolve.
  const auto clusters = eigenvalue_clusters(spec);
  auto grid_cell = [&](const std::vector<int>& cluster) {
    const double lam0 = spec.eigenvalues[std::size_t(cluster.front())];
    const PauliSum shifted = shift(h, lam0);
    return std::ldexp(4.0 * shifted.coefficient_l1(), -r);
  };
  std::vector<std::vector<int>> pool;
  for (const auto& cluster : clusters)
    if (cluster_isolation(spec, cluster) >= 2.0 * grid_cell(cluster)) pool.push_back(cluster);
  if (pool.empty()) pool = clusters;
  const auto* best = &pool.front();
  for (const auto& cluster : pool) {
    const int sc = strong_basis_states(spec, cluster);
    const int sb = strong_basis_states(spec, *best);
    if (sc > sb ||
        (sc == sb && cluster_isolation(spec, cluster) > cluster_isolation(spec, *best)))
      best = &cluster;
  }
  ReproductionTarget target;
  target.pattern_matched = false;
  target.eigen_indices = *best;
  target.lambda0 = spec.eigenvalues[std::size_t(best->front())];
  target.epsilon = 0.5 * cluster_isolation(spec, *best);
  return target;
}

ReproductionTarget target_near(const SpectralDecomposition& spec, double lambda0) {
  std::size_t nearest = 0;
  for (std::size_t k = 1; k < spec.dim(); ++k)
    if (std::abs(spec.eigenvalues[k] - lambda0) <
        std::abs(spec.eigenvalues[nearest] - lambda0))
      nearest = k;
  ReproductionTarget target;
  const double lam = spec.eigenvalues[nearest];
  for (std::size_t j = 0; j < spec.dim(); ++j)
    if (std::abs(spec.eigenvalues[j] - lam) < 1e-9) target.eigen_indices.push_back(int(j));
  target.lambda0 = lam;
  target.epsilon = 0.5 * cluster_isolation(spec, target.eigen_indices);
  target.pattern_matched = false;
  return target;
}

}  // namespace qeig
