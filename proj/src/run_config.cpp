#include "qeig/run_config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qeig {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_double(int line, const std::string& value) {
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty())
    fail(line, "expected a number, got `" + value + "`");
  return parsed;
}

long long parse_int(int line, const std::string& value) {
  char* end = nullptr;
  const long long parsed = std::strtoll(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty())
    fail(line, "expected an integer, got `" + value + "`");
  return parsed;
}

bool parse_bool(int line, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(line, "expected true/false, got `" + value + "`");
}

}  // namespace

RunConfig parse_run_config(std::istream& in) {
  RunConfig config;
  bool saw_hamiltonian = false, saw_lambda0 = false, saw_epsilon = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) fail(line_no, "expected `key = value`");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) fail(line_no, "missing key");
    if (value.empty()) fail(line_no, "missing value for `" + key + "`");

    if (key == "hamiltonian") {
      config.hamiltonian = value;
      saw_hamiltonian = true;
    } else if (key == "sites") {
      config.sites = int(parse_int(line_no, value));
    } else if (key == "jx") {
      config.jx = parse_double(line_no, value);
    } else if (key == "jy") {
      config.jy = parse_double(line_no, value);
    } else if (key == "jz") {
      config.jz = parse_double(line_no, value);
    } else if (key == "h") {
      config.field = parse_double(line_no, value);
    } else if (key == "periodic") {
      config.periodic = parse_bool(line_no, value);
    } else if (key == "lambda0") {
      config.lambda0 = parse_double(line_no, value);
      saw_lambda0 = true;
    } else if (key == "epsilon") {
      config.epsilon = parse_double(line_no, value);
      saw_epsilon = true;
    } else if (key == "delta") {
      config.delta = parse_double(line_no, value);
    } else if (key == "r") {
      config.r = int(parse_int(line_no, value));
    } else if (key == "strategy") {
      if (value != "basis" && value != "random")
        fail(line_no, "strategy must be basis or random");
      config.strategy = value;
    } else if (key == "trials") {
      config.trials = int(parse_int(line_no, value));
    } else if (key == "p_floor") {
      config.p_floor = parse_double(line_no, value);
    } else if (key == "seed") {
      config.seed = std::uint64_t(parse_int(line_no, value));
    } else if (key == "max_epsilon_doublings") {
      config.max_epsilon_doublings = int(parse_int(line_no, value));
    } else if (key == "out") {
      config.out = value;
    } else {
      fail(line_no, "unknown key `" + key + "`");
    }
  }
  if (!saw_hamiltonian) throw ConfigError("config: missing required key `hamiltonian`");
  if (!saw_lambda0) throw ConfigError("config: missing required key `lambda0`");
  if (!saw_epsilon) throw ConfigError("config: missing required key `epsilon`");
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_run_config(in);
}

std::string dump_run_config(const RunConfig& config) {
  std::ostringstream out;
  out.precision(17);
  out << "hamiltonian = " << config.hamiltonian << '\n';
  if (config.hamiltonian == "heisenberg") {
    out << "sites = " << config.sites << '\n'
        << "jx = " << config.jx << '\n'
        << "jy = " << config.jy << '\n'
        << "jz = " << config.jz << '\n'
        << "h = " << config.field << '\n'
        << "periodic = " << (config.periodic ? "true" : "false") << '\n';
  }
  out << "lambda0 = " << config.lambda0 << '\n'
      << "epsilon = " << config.epsilon << '\n'
      << "delta = " << config.delta << '\n'
      << "r = " << config.r << '\n'
      << "strategy = " << config.strategy << '\n'
      << "trials = " << config.trials << '\n'
      << "p_floor = " << config.p_floor << '\n'
      << "seed = " << config.seed << '\n'
      << "max_epsilon_doublings = " << config.max_epsilon_doublings << '\n';
  if (!config.out.empty()) out << "out = " << config.out << '\n';
  return out.str();
}

PauliSum hamiltonian_from_config(const RunConfig& config) {
  if (config.hamiltonian == "h2") return build_h2_jw();
  if (config.hamiltonian == "heisenberg")
    return build_heisenberg(config.sites, config.jx, config.jy, config.jz, config.field,
                            config.periodic);
  return load_pauli_file(config.hamiltonian);
}

SolverConfig solver_config_from(const RunConfig& config) {
  SolverConfig solver;
  solver.lambda0 = config.lambda0;
  solver.epsilon = config.epsilon;
  solver.delta = config.delta;
  solver.r = config.r;
  solver.strategy = config.strategy == "random" ? InitialStateStrategy::kRandom
                                                : InitialStateStrategy::kBasis;
  solver.trials = config.trials;
  solver.p_floor = config.p_floor;
  solver.seed = config.seed;
  solver.max_epsilon_doublings = config.max_epsilon_doublings;
  return solver;
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::string solver_result_csv(const SolverResult& result) {
  std::ostringstream out;
  out << "trial,initial_state,overlap_p,fidelity_F,measured_eigenvalue,queries\n";
  int trial = 0;
  for (const TrialRecord& record : result.trials) {
    out << trial++ << ',' << record.initial_state_id << ','
        << format_number(record.overlap_p) << ',' << format_number(record.fidelity_f)
        << ',' << format_number(record.measured_eigenvalue) << ',' << record.queries
        << '\n';
  }
  return out.str();
}

}  // namespace qeig
