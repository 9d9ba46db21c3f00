#include "qeig/pauli.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qeig {

namespace {

bool valid_word(std::string_view word) {
  for (char c : word)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') return false;
  return true;
}

int qubit_of_char(int num_qubits, std::size_t pos) { return num_qubits - 1 - int(pos); }

}  // namespace

PauliSum::PauliSum(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("PauliSum: need at least one qubit");
}

PauliSum PauliSum::from_terms(int num_qubits, const std::vector<PauliTerm>& terms) {
  PauliSum h(num_qubits);
  for (const PauliTerm& t : terms) h.add(t.coefficient, t.word);
  return h;
}

void PauliSum::add(double coefficient, std::string_view word) {
  if (int(word.size()) != num_qubits_)
    throw std::invalid_argument("PauliSum: word length does not match qubit count");
  if (!valid_word(word))
    throw std::invalid_argument("PauliSum: word may contain only I, X, Y, Z");
  if (!std::isfinite(coefficient))
    throw std::invalid_argument("PauliSum: coefficient must be finite");
  for (PauliTerm& t : terms_) {
    if (t.word == word) {
      t.coefficient += coefficient;
      if (t.coefficient == 0.0) {
        t = terms_.back();
        terms_.pop_back();
      }
      return;
    }
  }
  if (coefficient != 0.0) terms_.push_back({coefficient, std::string(word)});
}

double PauliSum::coefficient_l1() const {
  double sum = 0.0;
  for (const PauliTerm& t : terms_) sum += std::abs(t.coefficient);
  return sum;
}

double PauliSum::identity_coefficient() const {
  const std::string id(num_qubits_, 'I');
  for (const PauliTerm& t : terms_)
    if (t.word == id) return t.coefficient;
  return 0.0;
}

PauliSum build_heisenberg(int sites, double jx, double jy, double jz, double h,
                          bool periodic) {
  if (sites < 2) throw std::invalid_argument("build_heisenberg: need at least 2 sites");
  PauliSum out(sites);
  auto word_with = [sites](int qa, char ca, int qb, char cb) {
    std::string w(sites, 'I');
    w[sites - 1 - qa] = ca;
    if (qb >= 0) w[sites - 1 - qb] = cb;
    return w;
  };
  const int bonds = periodic ? sites : sites - 1;
  for (int site = 0; site < sites; ++site) {
    if (site < bonds) {
      const int next = (site + 1) % sites;
      out.add(jx, word_with(site, 'X', next, 'X'));
      out.add(jy, word_with(site, 'Y', next, 'Y'));
      out.add(jz, word_with(site, 'Z', next, 'Z'));
    }
    out.add(h, word_with(site, 'Z', -1, 'I'));
  }
  return out;
}

PauliSum build_h2_jw() {
  PauliSum h(4);
  h.add(-0.81261, "IIII");
  h.add(0.171201, "IIIZ");
  h.add(0.171201, "IIZI");
  h.add(-0.2227965, "IZII");
  h.add(-0.2227965, "ZIII");
  h.add(0.16862325, "IIZZ");
  h.add(0.12054625, "IZIZ");
  h.add(0.165868, "IZZI");
  h.add(0.165868, "ZIIZ");
  h.add(0.12054625, "ZIZI");
  h.add(0.17434925, "ZZII");
  h.add(-0.04532175, "XXYY");
  h.add(0.04532175, "XYYX");
  h.add(0.04532175, "YXXY");
  h.add(-0.04532175, "YYXX");
  return h;
}

PauliSum shift(const PauliSum& h, double lambda0) {
  PauliSum out = h;
  out.add(-lambda0, std::string(h.num_qubits(), 'I'));
  return out;
}

namespace {

// A Pauli word maps each basis state to a single basis state with a phase.
struct WordAction {
  std::size_t flip_mask = 0;   // X and Y positions
  std::size_t z_mask = 0;      // Z and Y positions contribute (-1)^bit
  int y_count = 0;             // each Y contributes a factor i * (-1)^bit
};

WordAction analyze_word(int num_qubits, const std::string& word) {
  WordAction act;
  for (std::size_t pos = 0; pos < word.size(); ++pos) {
    const int q = qubit_of_char(num_qubits, pos);
    const std::size_t bit = std::size_t(1) << q;
    switch (word[pos]) {
      case 'X':
        act.flip_mask |= bit;
        break;
      case 'Y':
        act.flip_mask |= bit;
        act.z_mask |= bit;
        ++act.y_count;
        break;
      case 'Z':
        act.z_mask |= bit;
        break;
      default:
        break;
    }
  }
  return act;
}

// Phase of P|col> = phase * |col ^ flip_mask>.
Complex word_phase(const WordAction& act, std::size_t col) {
  // Y|0> = i|1>, Y|1> = -i|0>, Z|b> = (-1)^b |b>. Folding the Y bookkeeping
  // into z_mask leaves a global i^y_count and a sign from occupied Y/Z bits.
  int ones = __builtin_popcountll(col & act.z_mask);
  Complex phase = (ones & 1) ? Complex(-1.0, 0.0) : Complex(1.0, 0.0);
  switch (act.y_count & 3) {
    case 1: phase *= Complex(0.0, 1.0); break;
    case 2: phase *= -1.0; break;
    case 3: phase *= Complex(0.0, -1.0); break;
    default: break;
  }
  return phase;
}

}  // namespace

ComplexMatrix to_matrix(const PauliSum& h) {
  if (h.num_qubits() > 13)
    throw std::invalid_argument("to_matrix: more than 13 qubits is not supported");
  const std::size_t dim = std::size_t(1) << h.num_qubits();
  ComplexMatrix out(dim);
  for (const PauliTerm& t : h.terms()) {
    const WordAction act = analyze_word(h.num_qubits(), t.word);
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t row = col ^ act.flip_mask;
      out(row, col) += t.coefficient * word_phase(act, col);
    }
  }
  return out;
}

std::vector<Complex> apply_pauli_sum(const PauliSum& h, const std::vector<Complex>& v) {
  const std::size_t dim = std::size_t(1) << h.num_qubits();
  if (v.size() != dim) throw std::invalid_argument("apply_pauli_sum: dimension mismatch");
  std::vector<Complex> out(dim);
  for (const PauliTerm& t : h.terms()) {
    const WordAction act = analyze_word(h.num_qubits(), t.word);
    for (std::size_t col = 0; col < dim; ++col) {
      out[col ^ act.flip_mask] += t.coefficient * word_phase(act, col) * v[col];
    }
  }
  return out;
}

ScaledProblem scale_for_qpe(const PauliSum& shifted, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("scale_for_qpe: epsilon must be >= 0");
  const double lambda_bound = shifted.coefficient_l1();
  if (lambda_bound == 0.0)
    throw std::invalid_argument("scale_for_qpe: zero operator has no spectrum to scale");
  ScaledProblem out;
  out.coefficient_bound = lambda_bound;
  out.affine_map.offset = 0.25;
  out.affine_map.scale = 1.0 / (4.0 * lambda_bound);
  out.window_lo = 0.25 - epsilon * out.affine_map.scale;
  out.window_hi = 0.25 + epsilon * out.affine_map.scale;

  const ComplexMatrix m = to_matrix(shifted);
  const std::size_t dim = m.dim();
  ComplexMatrix scaled(dim);
  const double inv = 1.0 / (4.0 * lambda_bound);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) scaled(i, j) = m(i, j) * inv;
  for (std::size_t i = 0; i < dim; ++i) scaled(i, i) += 0.25;
  out.scaled_matrix = scaled;
  return out;
}

ComplexMatrix hermitian_embed(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix out(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out(i, n + j) = a(i, j);
      out(n + i, j) = std::conj(a(j, i));
    }
  return out;
}

ComplexMatrix plus_dagger(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j) + std::conj(a(j, i));
  return out;
}

ComplexMatrix i_minus_dagger(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  const Complex iu(0.0, 1.0);
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = iu * (a(i, j) - std::conj(a(j, i)));
  return out;
}

PauliSum parse_pauli_sum(std::istream& in) {
  std::string line;
  std::vector<PauliTerm> terms;
  int num_qubits = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double coeff;
    std::string word;
    if (!(row >> coeff)) {
      std::string stray;
      if (row.clear(), row >> stray) {
        throw std::invalid_argument("pauli file line " + std::to_string(line_no) +
                                    ": expected `<coefficient> <word>`");
      }
      continue;  // blank or comment-only line
    }
    if (!(row >> word))
      throw std::invalid_argument("pauli file line " + std::to_string(line_no) +
                                  ": missing Pauli word");
    std::string extra;
    if (row >> extra)
      throw std::invalid_argument("pauli file line " + std::to_string(line_no) +
                                  ": unexpected trailing token `" + extra + "`");
    if (num_qubits < 0) num_qubits = int(word.size());
    if (int(word.size()) != num_qubits)
      throw std::invalid_argument("pauli file line " + std::to_string(line_no) +
                                  ": inconsistent word length");
    if (!valid_word(word))
      throw std::invalid_argument("pauli file line " + std::to_string(line_no) +
                                  ": word may contain only I, X, Y, Z");
    terms.push_back({coeff, word});
  }
  if (num_qubits < 0) throw std::invalid_argument("pauli file: no terms found");
  return PauliSum::from_terms(num_qubits, terms);
}

PauliSum load_pauli_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open Hamiltonian file: " + path);
  return parse_pauli_sum(in);
}

std::string format_pauli_sum(const PauliSum& h) {
  std::ostringstream out;
  out.precision(17);
  for (const PauliTerm& t : h.terms()) out << t.coefficient << ' ' << t.word << '\n';
  return out.str();
}

}  // namespace qeig
