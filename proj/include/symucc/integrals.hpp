#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "symucc/irrep.hpp"

namespace symucc {

/// Molecular-orbital integrals for a closed-shell molecule.
///
/// One-body integrals h_pq are stored as a dense symmetric matrix. Two-body
/// integrals (pq|rs) in chemists' notation are stored once per 8-fold
/// permutation class in a packed triangular layout; `eri()` resolves any of
/// the eight orderings to the same slot.
class IntegralTable {
 public:
  IntegralTable() = default;
  IntegralTable(std::size_t n_spatial, std::size_t n_electrons,
                std::vector<int> orbsym);

  std::size_t n_spatial() const { return n_spatial_; }
  std::size_t n_electrons() const { return n_electrons_; }
  std::size_t n_occupied() const { return n_electrons_ / 2; }
  std::size_t n_virtual() const { return n_spatial_ - n_occupied(); }
  std::size_t n_qubits() const { return 2 * n_spatial_; }
  int ms2() const { return 0; }

  double core_energy() const { return core_energy_; }
  void set_core_energy(double e) { core_energy_ = e; }

  /// 1-based ORBSYM labels as read from the file.
  const std::vector<int>& orbsym() const { return orbsym_; }
  IrrepLabel orbital_irrep(std::size_t p) const {
    return IrrepLabel(static_cast<unsigned>(orbsym_[p] - 1));
  }
  /// Replace the irrep labels (e.g. with a subgroup relabeling).
  void set_orbsym(std::vector<int> orbsym);

  double h1(std::size_t p, std::size_t q) const {
    return one_body_[p * n_spatial_ + q];
  }
  void set_h1(std::size_t p, std::size_t q, double v);

  double eri(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return two_body_[eri_index(p, q, r, s)];
  }
  void set_eri(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
               double v);

  /// Canonical packed slot shared by all eight permutations of (pq|rs).
  static std::size_t eri_index(std::size_t p, std::size_t q, std::size_t r,
                               std::size_t s);

  const std::vector<double>& packed_eri() const { return two_body_; }
  const std::vector<double>& one_body() const { return one_body_; }

  /// Zero every integral with magnitude below `threshold`.
  void drop_below(double threshold);

  friend bool operator==(const IntegralTable&, const IntegralTable&) = default;

 private:
  std::size_t n_spatial_ = 0;
  std::size_t n_electrons_ = 0;
  double core_energy_ = 0.0;
  std::vector<int> orbsym_;
  std::vector<double> one_body_;
  std::vector<double> two_body_;
};

/// Closed-shell Hartree-Fock determinant: the lowest n_electrons/2 spatial
/// orbitals doubly occupied.
struct ReferenceDeterminant {
  std::vector<std::size_t> occupied_spatial;
  IrrepLabel irrep;
};

/// Parse Molpro-convention FCIDUMP text.
///
/// Throws ParseError on malformed input and UnsupportedReference for
/// open-shell headers (odd NELEC or MS2 != 0).
IntegralTable parse_fcidump(std::string_view text);
IntegralTable load_fcidump(const std::string& path);

/// Serialize to FCIDUMP. Values are written with 17 significant digits so
/// that parse_fcidump(write_fcidump(t)) == t.
std::string write_fcidump(const IntegralTable& table);

ReferenceDeterminant reference_determinant(const IntegralTable& table);

/// <HF|H|HF> from the integrals directly.
double hf_energy(const IntegralTable& table);

}  // namespace symucc
