#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "qeig/fixedpoint.hpp"
#include "qeig/linalg.hpp"
#include "qeig/pauli.hpp"
#include "qeig/qpe.hpp"

using namespace qeig;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Identity-basis spectrum: eigenvector k is basis state k with the given
// eigenvalue. Used as the ideal-mode oracle playground.
SpectralDecomposition diagonal_spectrum(const std::vector<double>& values) {
  SpectralDecomposition spec;
  spec.eigenvalues = values;
  spec.eigenvectors = ComplexMatrix::identity(values.size());
  return spec;
}

// phi = sqrt(p)|0> + sqrt(1-p)|1> against target |0>.
StateVector two_level_state(int qubits, double p) {
  StateVector phi(qubits);
  phi.amplitudes[0] = std::sqrt(p);
  phi.amplitudes[1] = std::sqrt(1.0 - p);
  return phi;
}

double target_probability(const StateVector& state) { return std::norm(state.amplitudes[0]); }

double ideal_final_overlap(int iterations, double delta, double p) {
  const SpectralDecomposition spec = diagonal_spectrum({0.0, 1.0, 2.0, 3.0});
  const PhaseSchedule schedule = ylc_schedule(iterations, delta);
  const StateVector phi = two_level_state(2, p);
  StateVector state = phi;
  for (int j = 0; j < iterations; ++j)
    grover_iteration_ideal(spec, -0.5, 0.5, phi, schedule.alphas[std::size_t(j)],
                           schedule.betas[std::size_t(j)], state);
  return target_probability(state);
}

}  // namespace

TEST_CASE("chebyshev polynomial values") {
  for (double x : {-1.0, 0.0, 0.5, 2.0})
    CHECK(chebyshev_t(1.0, x) == doctest::Approx(x).epsilon(1e-12));
  CHECK(chebyshev_t(3.0, 0.5) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(chebyshev_t(1.0 / 3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Continuous across x = 1.
  CHECK(chebyshev_t(0.7, 1.0 - 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(chebyshev_t(0.7, 1.0 + 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  // Integer degrees extend below -1, fractional degrees do not.
  CHECK(chebyshev_t(2.0, -1.5) == doctest::Approx(2.0 * 1.5 * 1.5 - 1.0).epsilon(1e-12));
  CHECK(chebyshev_t(3.0, -2.0) ==
        doctest::Approx(4.0 * -8.0 - 3.0 * -2.0).epsilon(1e-12));
  CHECK_THROWS_AS(chebyshev_t(0.5, -1.5), std::domain_error);
  CHECK_THROWS_AS(chebyshev_t(-1.0, 0.5), std::invalid_argument);
}

TEST_CASE("ylc schedule symmetry and the Grover limit") {
  const PhaseSchedule schedule = ylc_schedule(6, 0.01);
  REQUIRE(schedule.alphas.size() == 6);
  REQUIRE(schedule.betas.size() == 6);
  CHECK(schedule.sequence_length() == 13);
  CHECK(schedule.oracle_queries() == 12);
  for (int j = 1; j <= 6; ++j)
    CHECK(schedule.alphas[std::size_t(j - 1)] == schedule.betas[std::size_t(6 - j)]);
  for (double a : schedule.alphas) {
    CHECK(a < 0.0);
    CHECK(a > -2.0 * kPi);
  }
  CHECK(schedule.eta == doctest::Approx(0.974066).epsilon(1e-5));

  // delta -> 1: eta -> 1 and every angle collapses to -pi.
  const PhaseSchedule grover = ylc_schedule(4, 1.0 - 1e-12);
  for (double a : grover.alphas) CHECK(a == doctest::Approx(-kPi).epsilon(1e-4));

  CHECK_THROWS_AS(ylc_schedule(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ylc_schedule(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ylc_schedule(3, 1.0), std::invalid_argument);
}

TEST_CASE("ylc query counts reproduce the tabulated minima") {
  CHECK(query_count_ylc(1.0 / 16.0, 0.01) == 11);
  CHECK(query_count_ylc(1.0 / 32.0, 0.01) == 16);
  CHECK(query_count_ylc(1.0, 0.01) == 2);
  CHECK_THROWS_AS(query_count_ylc(0.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(query_count_ylc(0.5, 1.5), std::invalid_argument);

  int previous = query_count_ylc(1e-4, 0.01);
  for (double p = 2e-4; p <= 1.0; p *= 1.5) {
    const int q = query_count_ylc(p, 0.01);
    CHECK(q <= previous);
    previous = q;
  }
  // 1/sqrt(p) scaling: q(p)/q(p/4) close to 1/2 for small p.
  for (double p : {1e-4, 1e-5}) {
    const double ratio =
        double(query_count_ylc(p, 0.01)) / double(query_count_ylc(p / 4.0, 0.01));
    CHECK(std::abs(ratio - 0.5) <= 0.05);
  }
}

TEST_CASE("pi/3 query count") {
  CHECK(query_count_pi3(0.5, 0.5) == 1);
  CHECK(query_count_pi3(1.0 - 1e-9, 0.5) == 0);
  CHECK_THROWS_AS(query_count_pi3(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(query_count_pi3(1.0, 0.5), std::invalid_argument);
  int previous = query_count_pi3(0.05, 0.01);
  for (double mu = 0.1; mu < 1.0; mu += 0.1) {
    const int q = query_count_pi3(mu, 0.01);
    CHECK(q <= previous);
    previous = q;
  }
}

TEST_CASE("query-to-iteration rounding") {
  CHECK(iterations_for_queries(11) == 6);
  CHECK(iterations_for_queries(16) == 8);
  CHECK(iterations_for_queries(0) == 0);
  CHECK(iterations_for_queries(1) == 1);
  CHECK_THROWS_AS(iterations_for_queries(-1), std::invalid_argument);
}

TEST_CASE("oracle window membership uses the nearest grid point") {
  OracleWindow window{5, 0.25 - 1.0 / 64.0, 0.25 + 1.0 / 64.0};
  CHECK(window.member(8));   // 8/32 = 0.25
  CHECK(!window.member(9));  // 9/32 = 0.28125
  CHECK(window.nearest_grid(0.251) == 8);
  CHECK(window.contains_phase(0.2501));
  CHECK(!window.contains_phase(0.2813));
}

TEST_CASE("initial-state reflection phases only the phi component") {
  Rng rng(17);
  const StateVector phi = random_uniform_state(3, rng);
  StateVector state = phi;
  reflect_initial(phi, 0.9, state);
  const Complex expect = Complex(std::cos(0.9), std::sin(0.9));
  for (std::size_t i = 0; i < state.dim(); ++i)
    CHECK(std::abs(state.amplitudes[i] - expect * phi.amplitudes[i]) <= 1e-12);

  // A state orthogonal to phi is untouched.
  StateVector orth(3);
  orth.amplitudes[0] = std::conj(phi.amplitudes[1]);
  orth.amplitudes[1] = -std::conj(phi.amplitudes[0]);
  orth.normalize();
  StateVector fixed = orth;
  reflect_initial(phi, 0.9, fixed);
  for (std::size_t i = 0; i < fixed.dim(); ++i)
    CHECK(std::abs(fixed.amplitudes[i] - orth.amplitudes[i]) <= 1e-12);

  // alpha = pi on the uniform state is the textbook diffusion up to sign.
  StateVector uniform(2);
  for (auto& z : uniform.amplitudes) z = 0.5;
  StateVector probe = random_uniform_state(2, rng);
  StateVector reflected = probe;
  reflect_initial(uniform, kPi, reflected);
  for (std::size_t i = 0; i < probe.dim(); ++i) {
    Complex mean = 0.0;
    for (std::size_t j = 0; j < probe.dim(); ++j) mean += probe.amplitudes[j];
    mean /= double(probe.dim());
    const Complex diffused = probe.amplitudes[i] - 2.0 * mean;  // -(2|s><s| - I)
    CHECK(std::abs(reflected.amplitudes[i] - diffused) <= 1e-12);
  }

  StateVector unnormalized(2);
  unnormalized.amplitudes[0] = 2.0;
  CHECK_THROWS_AS(reflect_initial(unnormalized, 0.3, state), std::invalid_argument);
}

TEST_CASE("ideal target reflection marks the window subspace") {
  const SpectralDecomposition spec = diagonal_spectrum({-1.0, 0.0, 1.0, 2.0});
  Rng rng(23);
  StateVector state = random_uniform_state(2, rng);
  StateVector copy = state;

  // beta = pi is the standard reflection I - 2P.
  reflect_target_ideal(spec, -0.5, 0.5, kPi, state);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const Complex expect = (i == 1) ? -copy.amplitudes[i] : copy.amplitudes[i];
    CHECK(std::abs(state.amplitudes[i] - expect) <= 1e-12);
  }

  // Empty window: identity.
  StateVector untouched = copy;
  reflect_target_ideal(spec, 5.0, 6.0, 1.1, untouched);
  for (std::size_t i = 0; i < copy.dim(); ++i)
    CHECK(std::abs(untouched.amplitudes[i] - copy.amplitudes[i]) <= 1e-12);

  // beta = 0: identity.
  StateVector zero_beta = copy;
  reflect_target_ideal(spec, -0.5, 0.5, 0.0, zero_beta);
  for (std::size_t i = 0; i < copy.dim(); ++i)
    CHECK(std::abs(zero_beta.amplitudes[i] - copy.amplitudes[i]) <= 1e-12);
}

TEST_CASE("circuit and ideal oracles agree on an exact grid spectrum") {
  // Dyadic diagonal Hamiltonian: all eigenphases are exact 5-bit fractions.
  PauliSum h(2);
  h.add(0.5, "II");
  h.add(0.25, "ZI");
  h.add(0.25, "IZ");
  const ScaledProblem problem = scale_for_qpe(h, 0.2);
  const SpectralDecomposition spec = eig_hermitian(to_matrix(h));
  const int r = 5;
  const RegisterLayout layout(r, 2);
  const OracleWindow window = OracleWindow::from_problem(problem, r);
  const QpeCircuit circuit(problem, layout);

  Rng rng(29);
  const double beta = 1.234;
  for (int rep = 0; rep < 3; ++rep) {
    const StateVector phi = random_uniform_state(2, rng);
    StateVector by_circuit = make_circuit_state(layout, phi);
    reflect_target_circuit(circuit, window, beta, by_circuit);
    StateVector by_ideal = make_circuit_state(layout, phi);
    const double lam_lo = problem.affine_map.eigenvalue_from_phase(window.lo);
    const double lam_hi = problem.affine_map.eigenvalue_from_phase(window.hi);
    reflect_target_ideal(spec, lam_lo, lam_hi, beta, by_ideal);
    CHECK(fidelity(by_circuit, by_ideal) >= 1.0 - 1e-9);
  }

  // beta = 0 leaves any input unchanged.
  const StateVector phi = random_uniform_state(2, rng);
  StateVector state = make_circuit_state(layout, phi);
  StateVector copy = state;
  reflect_target_circuit(circuit, window, 0.0, state);
  for (std::size_t i = 0; i < state.dim(); ++i)
    CHECK(std::abs(state.amplitudes[i] - copy.amplitudes[i]) <= 1e-10);

  // An in-window eigenvector picks up exactly e^{i*beta}; an out-of-window
  // eigenvector is untouched. Eigenvectors here are basis states: |11> sits
  // at the window center, |00> far outside.
  StateVector marked = make_circuit_state(layout, StateVector::basis_state(2, 3));
  StateVector marked_in = marked;
  reflect_target_circuit(circuit, window, beta, marked);
  const Complex phase(std::cos(beta), std::sin(beta));
  for (std::size_t i = 0; i < marked.dim(); ++i)
    CHECK(std::abs(marked.amplitudes[i] - phase * marked_in.amplitudes[i]) <= 1e-10);

  StateVector unmarked = make_circuit_state(layout, StateVector::basis_state(2, 0));
  StateVector unmarked_in = unmarked;
  reflect_target_circuit(circuit, window, beta, unmarked);
  for (std::size_t i = 0; i < unmarked.dim(); ++i)
    CHECK(std::abs(unmarked.amplitudes[i] - unmarked_in.amplitudes[i]) <= 1e-10);

  // The one-shot overload matches the cached-circuit form.
  StateVector oneshot = make_circuit_state(layout, phi);
  StateVector cached = oneshot;
  reflect_target_circuit(problem, layout, window, 0.7, oneshot);
  reflect_target_circuit(circuit, window, 0.7, cached);
  for (std::size_t i = 0; i < oneshot.dim(); ++i)
    CHECK(std::abs(oneshot.amplitudes[i] - cached.amplitudes[i]) <= 1e-12);
}

TEST_CASE("grover iteration reduces to the textbook recurrence at alpha=beta=pi") {
  const SpectralDecomposition spec = diagonal_spectrum({0.0, 1.0, 2.0, 3.0});
  for (double p : {0.01, 0.25}) {
    const StateVector phi = two_level_state(2, p);
    StateVector state = phi;
    const double theta = std::asin(std::sqrt(p));
    for (int k = 1; k <= 10; ++k) {
      grover_iteration_ideal(spec, -0.5, 0.5, phi, kPi, kPi, state);
      const double expect = std::pow(std::sin((2 * k + 1) * theta), 2);
      CHECK(std::abs(target_probability(state) - expect) <= 1e-9);
      CHECK(std::abs(state.norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("grover iteration with zero angles is the identity") {
  const SpectralDecomposition spec = diagonal_spectrum({0.0, 1.0, 2.0, 3.0});
  Rng rng(31);
  const StateVector phi = random_uniform_state(2, rng);
  StateVector state = phi;
  grover_iteration_ideal(spec, -0.5, 0.5, phi, 0.0, 0.0, state);
  for (std::size_t i = 0; i < state.dim(); ++i)
    CHECK(std::abs(state.amplitudes[i] - phi.amplitudes[i]) <= 1e-12);

  // Norm preservation for arbitrary angles.
  StateVector walk = random_uniform_state(2, rng);
  for (int step = 0; step < 5; ++step) {
    grover_iteration_ideal(spec, -0.5, 0.5, phi, rng.uniform01() * 6.0 - 3.0,
                           rng.uniform01() * 6.0 - 3.0, walk);
    CHECK(std::abs(walk.norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("fixed point: every overlap above the floor converges") {
  const double delta = 0.01;
  const double p_floor = 0.05;
  const int l = iterations_for_queries(query_count_ylc(p_floor, delta));
  for (int step = 0; step <= 19; ++step) {
    const double p = p_floor + (1.0 - p_floor) * step / 19.0;
    CHECK(ideal_final_overlap(l, delta, p) >= 1.0 - delta);
  }
  // The schedule from (l=6, delta=0.01) drives 1/16 to at least 0.99.
  CHECK(ideal_final_overlap(6, 0.01, 1.0 / 16.0) >= 0.99);
}

TEST_CASE("fixed point matches the Chebyshev closed form") {
  // Independent oracle: the final overlap of the phase sequence has the
  // closed form 1 - delta * T_L(T_{1/L}(1/sqrt(delta)) * sqrt(1-p))^2.
  auto closed_form = [](int l, double delta, double p) {
    const int big_l = 2 * l + 1;
    const double x = chebyshev_t(1.0 / big_l, 1.0 / std::sqrt(delta)) * std::sqrt(1.0 - p);
    const double t = chebyshev_t(double(big_l), x);
    return 1.0 - delta * t * t;
  };
  for (auto [l, delta] : {std::pair{6, 0.01}, {3, 0.1}, {15, 0.01}}) {
    for (double p : {0.003, 0.01, 0.0625, 0.2, 0.5, 0.9}) {
      CHECK(std::abs(ideal_final_overlap(l, delta, p) - closed_form(l, delta, p)) <=
            1e-9);
    }
  }
}
