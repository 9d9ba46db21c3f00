#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qeig/solver.hpp"

namespace qeig {

// --- table reproduction -------------------------------------------------------

struct ReproduceRow {
  std::string id;  // "x<index>" basis state or "y<k>" random state
  double overlap_p = 0.0;
  double fidelity_f = 0.0;
};

struct ReproduceReport {
  int table = 0;
  int r = 7;
  int queries = 0;         // q from the source table
  std::uint64_t seed = 1;
  ReproductionTarget target;
  std::string target_source;         // given point | overlap pattern | fallback cluster
  std::vector<double> pattern;       // tabulated overlaps being reproduced
  std::vector<bool> pattern_found;   // per value, matched by some basis overlap
  std::vector<ReproduceRow> rows;    // all basis states, then the random draws
  int strong_states = 0;             // basis states with p >= 1/2^n
  double min_strong_fidelity = 1.0;  // min F over those
};

// Sweeps every computational basis state plus eleven seeded random states
// through the fixed-point loop for the given reference experiment:
// table 1 and 2 are the 4- and 5-site XYZ chains, table 3 the hydrogen
// molecule at lambda0 = -0.8837.
ReproduceReport reproduce_table(int table, int r, std::uint64_t seed);

std::string reproduce_report_csv(const ReproduceReport& report);

// --- query-vs-sampling scaling benchmark ---------------------------------------

enum class BenchMode { kIdeal, kCircuit };

struct BenchRow {
  int n = 0;
  std::string method;  // "query" or "qpe_sampling"
  double mean_oracle_calls = 0.0;
};

struct BenchReport {
  BenchMode mode = BenchMode::kIdeal;
  int trials = 0;
  std::vector<BenchRow> rows;
  double query_slope = 0.0;  // log-log regression vs N = 2^n
  double qpe_slope = 0.0;
};

// Mean oracle calls to locate a fixed target eigenstate from random initial
// states, for the fixed-point query method against plain QPE sampling.
BenchReport bench_type2(int n_min, int n_max, int trials, BenchMode mode,
                        std::uint64_t seed, int r = 7);

std::string bench_report_csv(const BenchReport& report);

// --- appendix probability Monte Carlo ------------------------------------------

struct ProbcheckResult {
  int dim = 0;
  int m = 0;
  int shots = 0;
  double formula = 0.0;
  double empirical = 0.0;
  double zscore = 0.0;
};

// Frequency of max_i |<e_i|t>|^2 >= 1/N over Haar-random targets against the
// closed-form value.
ProbcheckResult probcheck(int dim, int m, int shots, std::uint64_t seed);

std::string probcheck_report(const ProbcheckResult& result);

}  // namespace qeig
