#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "symucc/fermionics.hpp"

namespace symucc {

using cplx = std::complex<double>;
using QubitMask = std::uint64_t;

/// Pauli string times a coefficient. Qubit q carries X if only its x bit is
/// set, Z if only its z bit, Y if both.
struct PauliTerm {
  QubitMask x = 0;
  QubitMask z = 0;
  cplx coefficient{1.0, 0.0};

  bool is_identity() const { return (x | z) == 0; }
  int weight() const { return std::popcount(x | z); }
  /// "X0 Z1 Y3", or "I" for the identity.
  std::string label() const;
  /// Parse a label such as "X0 Z1 Y3" (coefficient 1).
  static PauliTerm from_label(const std::string& label);
};

/// Product with phase tracking: masks XOR, phase in {1, i, -1, -i}.
PauliTerm pauli_mul(const PauliTerm& a, const PauliTerm& b);

/// True when the two strings commute (even symplectic product).
bool commutes(const PauliTerm& a, const PauliTerm& b);

/// i^{|x & z|}: converts X^x Z^z to the Y-aware string of the same masks.
cplx y_phase(QubitMask x, QubitMask z);

/// A linear combination of Pauli strings, keyed and ordered by (x, z).
class PauliSum {
 public:
  using Key = std::pair<QubitMask, QubitMask>;
  static constexpr double kPruneThreshold = 1e-12;

  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  std::size_t n_qubits() const { return n_qubits_; }
  const std::map<Key, cplx>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add(const PauliTerm& t);
  void add(QubitMask x, QubitMask z, cplx c);
  /// Drop coefficients with magnitude below the threshold.
  void simplify(double threshold = kPruneThreshold);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(cplx s);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }

  cplx coefficient(QubitMask x, QubitMask z) const;
  /// Every coefficient real to within `tol`.
  bool is_hermitian(double tol = 1e-10) const;
  /// Every coefficient purely imaginary to within `tol`.
  bool is_anti_hermitian(double tol = 1e-10) const;

  /// One line per term, "+c X0 Z1 ..." sorted by (x, z).
  std::string dump() const;

 private:
  std::size_t n_qubits_ = 0;
  std::map<Key, cplx> terms_;
};

/// Jordan-Wigner image of a fermionic term list:
///   a+_p = (X_p - iY_p)/2 Z_0..Z_{p-1},  a_p = (X_p + iY_p)/2 Z_0..Z_{p-1}.
/// Throws IndexError for a mode >= n_qubits.
PauliSum jw_map(const FermionTermList& terms, std::size_t n_qubits);

/// JW image of the molecular Hamiltonian on 2*n_spatial qubits.
PauliSum qubit_hamiltonian(const IntegralTable& table);

}  // namespace symucc
