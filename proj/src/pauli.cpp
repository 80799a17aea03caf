#include "symucc/pauli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "symucc/errors.hpp"

namespace symucc {

namespace {

constexpr cplx kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

struct KeyHash {
  std::size_t operator()(const PauliSum::Key& k) const noexcept {
    return std::hash<QubitMask>()(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
  }
};

using Accumulator = std::unordered_map<PauliSum::Key, cplx, KeyHash>;

// JW image of one ladder operator as two Pauli terms.
std::array<PauliTerm, 2> jw_ladder(const LadderOp& op) {
  const QubitMask bit = QubitMask{1} << op.mode;
  const QubitMask below = bit - 1;
  const cplx y_coeff = op.creation ? cplx(0, -0.5) : cplx(0, 0.5);
  return {PauliTerm{bit, below, cplx(0.5, 0)},
          PauliTerm{bit, below | bit, y_coeff}};
}

}  // namespace

cplx y_phase(QubitMask x, QubitMask z) { return kPowI[std::popcount(x & z) & 3]; }

std::string PauliTerm::label() const {
  if (is_identity()) return "I";
  std::string out;
  for (int q = 0; q < 64; ++q) {
    const bool xb = (x >> q) & 1U;
    const bool zb = (z >> q) & 1U;
    if (!xb && !zb) continue;
    if (!out.empty()) out += ' ';
    out += xb ? (zb ? 'Y' : 'X') : 'Z';
    out += std::to_string(q);
  }
  return out;
}

PauliTerm PauliTerm::from_label(const std::string& label) {
  PauliTerm t;
  std::istringstream in(label);
  for (std::string tok; in >> tok;) {
    if (tok == "I") continue;
    if (tok.size() < 2) throw ParseError("bad Pauli token '" + tok + "'");
    const int q = std::stoi(tok.substr(1));
    if (q < 0 || q >= 64) throw IndexError("qubit index out of range: " + tok);
    const QubitMask bit = QubitMask{1} << q;
    switch (tok[0]) {
      case 'X': t.x |= bit; break;
      case 'Y': t.x |= bit; t.z |= bit; break;
      case 'Z': t.z |= bit; break;
      default: throw ParseError("bad Pauli token '" + tok + "'");
    }
  }
  return t;
}

PauliTerm pauli_mul(const PauliTerm& a, const PauliTerm& b) {
  const QubitMask x = a.x ^ b.x;
  const QubitMask z = a.z ^ b.z;
  const int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) +
                2 * std::popcount(a.z & b.x) - std::popcount(x & z);
  return {x, z, a.coefficient * b.coefficient * kPowI[((k % 4) + 4) % 4]};
}

bool commutes(const PauliTerm& a, const PauliTerm& b) {
  return ((std::popcount(a.x & b.z) + std::popcount(a.z & b.x)) & 1) == 0;
}

void PauliSum::add(const PauliTerm& t) { add(t.x, t.z, t.coefficient); }

void PauliSum::add(QubitMask x, QubitMask z, cplx c) { terms_[{x, z}] += c; }

void PauliSum::simplify(double threshold) {
  std::erase_if(terms_, [threshold](const auto& kv) {
    return std::abs(kv.second) < threshold;
  });
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  n_qubits_ = std::max(n_qubits_, other.n_qubits_);
  for (const auto& [k, c] : other.terms_) terms_[k] += c;
  simplify();
  return *this;
}

PauliSum& PauliSum::operator*=(cplx s) {
  for (auto& kv : terms_) kv.second *= s;
  simplify();
  return *this;
}

cplx PauliSum::coefficient(QubitMask x, QubitMask z) const {
  auto it = terms_.find({x, z});
  return it == terms_.end() ? cplx{} : it->second;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& kv : terms_) {
    if (std::abs(kv.second.imag()) > tol) return false;
  }
  return true;
}

bool PauliSum::is_anti_hermitian(double tol) const {
  for (const auto& kv : terms_) {
    if (std::abs(kv.second.real()) > tol) return false;
  }
  return true;
}

std::string PauliSum::dump() const {
  std::ostringstream out;
  char buf[96];
  for (const auto& [key, c] : terms_) {
    if (std::abs(c.imag()) < kPruneThreshold) {
      std::snprintf(buf, sizeof buf, "%+.12f", c.real());
    } else {
      std::snprintf(buf, sizeof buf, "(%+.12f%+.12fi)", c.real(), c.imag());
    }
    out << buf << ' ' << PauliTerm{key.first, key.second}.label() << '\n';
  }
  return out.str();
}

PauliSum jw_map(const FermionTermList& terms, std::size_t n_qubits) {
  if (n_qubits > 64) throw CapacityError("at most 64 qubits are supported");
  Accumulator acc;
  std::vector<PauliTerm> current;
  std::vector<PauliTerm> next;
  for (const auto& term : terms) {
    current.assign(1, PauliTerm{0, 0, term.coefficient});
    for (const auto& op : term.ops) {
      if (op.mode >= n_qubits) {
        throw IndexError("fermionic mode " + std::to_string(op.mode) +
                         " >= n_qubits " + std::to_string(n_qubits));
      }
      const auto factors = jw_ladder(op);
      next.clear();
      for (const auto& p : current) {
        for (const auto& f : factors) next.push_back(pauli_mul(p, f));
      }
      current.swap(next);
    }
    for (const auto& p : current) acc[{p.x, p.z}] += p.coefficient;
  }
  PauliSum sum(n_qubits);
  for (const auto& [k, c] : acc) sum.add(k.first, k.second, c);
  sum.simplify();
  return sum;
}

PauliSum qubit_hamiltonian(const IntegralTable& table) {
  return jw_map(hamiltonian_terms(table), table.n_qubits());
}

}  // namespace symucc
