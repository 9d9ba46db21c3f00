#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qeig/experiments.hpp"
#include "qeig/run_config.hpp"
#include "qeig/solver.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNotFound = 3;

void usage(std::ostream& out) {
  out << "qeig - query-based eigensolver for Type II eigenvalue problems\n"
         "\n"
         "usage:\n"
         "  qeig solve --config <file> [--seed S] [--out FILE] [--r R]\n"
         "             [--delta D] [--epsilon E] [--strategy basis|random]\n"
         "             [--print-config]\n"
         "  qeig reproduce --table 1|2|3 [--r R] [--seed S] [--out FILE]\n"
         "  qeig bench [--min-n A] [--max-n B] [--trials T]\n"
         "             [--mode circuit|ideal] [--seed S] [--out FILE]\n"
         "  qeig probcheck --n-dim N --m M [--shots S] [--seed S]\n"
         "\n"
         "exit codes: 0 found/ok, 1 usage error, 2 invalid input, 3 not found\n";
}

struct Flags {
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<std::string> switches;

  const std::string* get(const std::string& name) const {
    for (const auto& [key, value] : values)
      if (key == name) return &value;
    return nullptr;
  }
  bool has_switch(const std::string& name) const {
    for (const auto& s : switches)
      if (s == name) return true;
    return false;
  }
};

// Flags taking a value; everything else starting with -- is a switch.
bool parse_flags(int argc, char** argv, int start, Flags& flags, std::string& error) {
  static const std::vector<std::string> valued = {
      "--config", "--seed",  "--out",   "--r",     "--delta", "--epsilon",
      "--strategy", "--table", "--min-n", "--max-n", "--trials", "--mode",
      "--n-dim",  "--m",     "--shots"};
  for (int i = start; i < argc; ++i) {
    const std::string arg = argv[i];
    bool takes_value = false;
    for (const auto& name : valued) takes_value |= (arg == name);
    if (takes_value) {
      if (i + 1 >= argc) {
        error = "missing value for " + arg;
        return false;
      }
      flags.values.push_back({arg, argv[++i]});
    } else if (arg == "--print-config" || arg == "--help" || arg == "-h") {
      flags.switches.push_back(arg);
    } else {
      error = "unknown argument: " + arg;
      return false;
    }
  }
  return true;
}

bool parse_u64(const std::string& text, std::uint64_t& out) {
  char* end = nullptr;
  out = std::strtoull(text.c_str(), &end, 10);
  return end == text.c_str() + text.size() && !text.empty();
}

bool parse_i(const std::string& text, int& out) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || text.empty()) return false;
  out = int(v);
  return true;
}

bool parse_d(const std::string& text, double& out) {
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && !text.empty();
}

int write_output(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return kExitFound;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << path << "\n";
    return kExitInvalidInput;
  }
  out << body;
  return kExitFound;
}

int cmd_solve(const Flags& flags) {
  const std::string* config_path = flags.get("--config");
  if (!config_path) {
    std::cerr << "solve: missing --config\n";
    return kExitUsage;
  }
  qeig::RunConfig config;
  try {
    config = qeig::load_run_config(*config_path);
  } catch (const qeig::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  if (const std::string* v = flags.get("--seed")) {
    if (!parse_u64(*v, config.seed)) {
      std::cerr << "bad --seed\n";
      return kExitUsage;
    }
  }
  if (const std::string* v = flags.get("--out")) config.out = *v;
  if (const std::string* v = flags.get("--r")) {
    if (!parse_i(*v, config.r)) {
      std::cerr << "bad --r\n";
      return kExitUsage;
    }
  }
  if (const std::string* v = flags.get("--delta")) {
    if (!parse_d(*v, config.delta)) {
      std::cerr << "bad --delta\n";
      return kExitUsage;
    }
  }
  if (const std::string* v = flags.get("--epsilon")) {
    if (!parse_d(*v, config.epsilon)) {
      std::cerr << "bad --epsilon\n";
      return kExitUsage;
    }
  }
  if (const std::string* v = flags.get("--strategy")) {
    if (*v != "basis" && *v != "random") {
      std::cerr << "--strategy must be basis or random\n";
      return kExitUsage;
    }
    config.strategy = *v;
  }
  if (flags.has_switch("--print-config")) {
    std::cout << qeig::dump_run_config(config);
    return kExitFound;
  }

  try {
    const qeig::PauliSum h = qeig::hamiltonian_from_config(config);
    const qeig::SolverResult result =
        qeig::solve_type2(h, qeig::solver_config_from(config));
    const int io = write_output(config.out, qeig::solver_result_csv(result));
    if (io != kExitFound) return io;
    return result.status == qeig::SolverStatus::kFound ? kExitFound : kExitNotFound;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalidInput;
  }
}

int cmd_reproduce(const Flags& flags) {
  const std::string* table_text = flags.get("--table");
  int table = 0;
  if (!table_text || !parse_i(*table_text, table)) {
    std::cerr << "reproduce: need --table 1|2|3\n";
    return kExitUsage;
  }
  int r = 7;
  std::uint64_t seed = 1;
  if (const std::string* v = flags.get("--r"))
    if (!parse_i(*v, r)) {
      std::cerr << "bad --r\n";
      return kExitUsage;
    }
  if (const std::string* v = flags.get("--seed"))
    if (!parse_u64(*v, seed)) {
      std::cerr << "bad --seed\n";
      return kExitUsage;
    }
  try {
    const qeig::ReproduceReport report = qeig::reproduce_table(table, r, seed);
    const std::string* out = flags.get("--out");
    return write_output(out ? *out : "", qeig::reproduce_report_csv(report));
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalidInput;
  }
}

int cmd_bench(const Flags& flags) {
  int n_min = 2, n_max = 8, trials = 200;
  std::uint64_t seed = 1;
  qeig::BenchMode mode = qeig::BenchMode::kIdeal;
  if (const std::string* v = flags.get("--min-n"))
    if (!parse_i(*v, n_min)) {
      std::cerr << "bad --min-n\n";
      return kExitUsage;
    }
  if (const std::string* v = flags.get("--max-n"))
    if (!parse_i(*v, n_max)) {
      std::cerr << "bad --max-n\n";
      return kExitUsage;
    }
  if (const std::string* v = flags.get("--trials"))
    if (!parse_i(*v, trials)) {
      std::cerr << "bad --trials\n";
      return kExitUsage;
    }
  if (const std::string* v = flags.get("--seed"))
    if (!parse_u64(*v, seed)) {
      std::cerr << "bad --seed\n";
      return kExitUsage;
    }
  if (const std::string* v = flags.get("--mode")) {
    if (*v == "ideal")
      mode = qeig::BenchMode::kIdeal;
    else if (*v == "circuit")
      mode = qeig::BenchMode::kCircuit;
    else {
      std::cerr << "--mode must be circuit or ideal\n";
      return kExitUsage;
    }
  }
  try {
    const qeig::BenchReport report = qeig::bench_type2(n_min, n_max, trials, mode, seed);
    const std::string* out = flags.get("--out");
    return write_output(out ? *out : "", qeig::bench_report_csv(report));
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalidInput;
  }
}

int cmd_probcheck(const Flags& flags) {
  int dim = 0, m = 0, shots = 100000;
  std::uint64_t seed = 1;
  const std::string* dim_text = flags.get("--n-dim");
  const std::string* m_text = flags.get("--m");
  if (!dim_text || !m_text || !parse_i(*dim_text, dim) || !parse_i(*m_text, m)) {
    std::cerr << "probcheck: need --n-dim N and --m M\n";
    return kExitUsage;
  }
  if (const std::string* v = flags.get("--shots"))
    if (!parse_i(*v, shots)) {
      std::cerr << "bad --shots\n";
      return kExitUsage;
    }
  if (const std::string* v = flags.get("--seed"))
    if (!parse_u64(*v, seed)) {
      std::cerr << "bad --seed\n";
      return kExitUsage;
    }
  try {
    const qeig::ProbcheckResult result = qeig::probcheck(dim, m, shots, seed);
    std::cout << qeig::probcheck_report(result);
    return std::abs(result.zscore) > 4.0 ? kExitNotFound : kExitFound;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalidInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(std::cerr);
    return kExitUsage;
  }
  const std::string command = argv[1];
  if (command == "--help" || command == "-h" || command == "help") {
    usage(std::cout);
    return kExitFound;
  }
  Flags flags;
  std::string error;
  if (!parse_flags(argc, argv, 2, flags, error)) {
    std::cerr << error << "\n";
    return kExitUsage;
  }
  if (flags.has_switch("--help") || flags.has_switch("-h")) {
    usage(std::cout);
    return kExitFound;
  }
  if (command == "solve") return cmd_solve(flags);
  if (command == "reproduce") return cmd_reproduce(flags);
  if (command == "bench") return cmd_bench(flags);
  if (command == "probcheck") return cmd_probcheck(flags);
  std::cerr << "unknown command: " << command << "\n";
  usage(std::cerr);
  return kExitUsage;
}
