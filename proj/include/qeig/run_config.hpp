#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "qeig/pauli.hpp"
#include "qeig/solver.hpp"

namespace qeig {

// Key-value run description for the solve command. `hamiltonian` is "h2",
// "heisenberg" (with the builder keys below), or a path to a Hamiltonian
// text file.
struct RunConfig {
  std::string hamiltonian;
  int sites = 4;
  double jx = 1.0, jy = 1.0, jz = 1.0, field = 0.0;
  bool periodic = true;

  double lambda0 = 0.0;
  double epsilon = 0.0;
  double delta = 0.01;
  int r = 7;
  std::string strategy = "basis";  // basis | random
  int trials = 11;
  double p_floor = 0.0;  // 0 -> 1/2^n
  std::uint64_t seed = 1;
  int max_epsilon_doublings = 10;
  std::string out;  // empty -> stdout

  bool operator==(const RunConfig&) const = default;
};

// Thrown with a message carrying the offending line number.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);

// Effective-config dump; parse_run_config(dump_run_config(c)) == c.
std::string dump_run_config(const RunConfig& config);

// Builds the Hamiltonian named by the config.
PauliSum hamiltonian_from_config(const RunConfig& config);

SolverConfig solver_config_from(const RunConfig& config);

// Fixed CSV number format: six significant digits, scientific below 1e-4.
std::string format_number(double value);

std::string solver_result_csv(const SolverResult& result);

}  // namespace qeig
