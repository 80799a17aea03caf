#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "symucc/integrals.hpp"

namespace symucc {

/// Spin-orbital index for the interleaved layout: 2*spatial + spin, with
/// spin 0 = alpha and 1 = beta.
constexpr std::size_t spin_orbital(std::size_t spatial, int spin) {
  return 2 * spatial + static_cast<std::size_t>(spin);
}

/// A spin-adapted excitation owning one variational angle.
///
/// Singles move one electron i -> a (both spin channels share the angle).
/// Doubles combine two single pairs (i,a) <= (j,b); equal pairs denote the
/// paired excitation i,i -> a,a.
struct Excitation {
  enum class Kind { Single, Double };

  Kind kind = Kind::Single;
  std::size_t i = 0;
  std::size_t a = 0;
  std::size_t j = 0;  // doubles only
  std::size_t b = 0;  // doubles only
  /// Position in the full (unfiltered) UCCSD pool of the molecule.
  std::size_t index = 0;

  static Excitation single(std::size_t i, std::size_t a, std::size_t index = 0);
  /// Orders the two pairs canonically.
  static Excitation pair_double(std::size_t i, std::size_t a, std::size_t j,
                                std::size_t b, std::size_t index = 0);

  bool is_single() const { return kind == Kind::Single; }
  bool is_paired() const { return kind == Kind::Double && i == j && a == b; }
  /// Compact label, e.g. "S(2->4)" or "D(2->4,2->4)" (0-based spatial).
  std::string label() const;

  friend bool operator==(const Excitation&, const Excitation&) = default;
};

struct LadderOp {
  std::size_t mode = 0;
  bool creation = false;
  friend bool operator==(const LadderOp&, const LadderOp&) = default;
};

/// coefficient * op[0] op[1] ... (leftmost applied last)
struct FermionTerm {
  std::complex<double> coefficient;
  std::vector<LadderOp> ops;
};

using FermionTermList = std::vector<FermionTerm>;

/// Hermitian conjugate of a term list.
FermionTermList adjoint(const FermionTermList& terms);

/// Restricted closed-shell UCCSD pool: all singles, then all doubles, in
/// lexicographic order. m*n + m*n + m*n*(m*n-1)/2 entries for n occupied and
/// m virtual spatial orbitals; empty when either is zero.
std::vector<Excitation> enumerate_pool(const IntegralTable& table);

/// Anti-Hermitian generator t - t^dagger of one excitation, theta-free.
FermionTermList generator(const Excitation& exc, std::size_t n_spatial);

/// Second-quantized electronic Hamiltonian including the core energy as an
/// operator-free term.
FermionTermList hamiltonian_terms(const IntegralTable& table);

}  // namespace symucc
