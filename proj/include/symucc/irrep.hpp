#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace symucc {

/// Irreducible representation of an Abelian point group (D2h or a subgroup),
/// encoded in 3 bits as in Molpro's ORBSYM convention (label = ORBSYM - 1).
/// The direct product of two irreps is the XOR of their labels; 0 is the
/// totally symmetric irrep.
class IrrepLabel {
 public:
  constexpr IrrepLabel() = default;
  constexpr explicit IrrepLabel(unsigned bits) : bits_(bits & 7u) {}

  constexpr unsigned bits() const { return bits_; }
  constexpr bool is_totally_symmetric() const { return bits_ == 0; }

  friend constexpr IrrepLabel operator*(IrrepLabel a, IrrepLabel b) {
    return IrrepLabel(a.bits_ ^ b.bits_);
  }
  constexpr IrrepLabel& operator*=(IrrepLabel o) {
    bits_ ^= o.bits_;
    return *this;
  }
  friend constexpr auto operator<=>(IrrepLabel, IrrepLabel) = default;

 private:
  std::uint8_t bits_ = 0;
};

constexpr IrrepLabel irrep_product(IrrepLabel a, IrrepLabel b) { return a * b; }

/// The eight Abelian point groups, with Molpro irrep ordering for display.
class PointGroup {
 public:
  enum class Id { D2h, C2v, C2h, D2, C2, Cs, Ci, C1 };

  constexpr explicit PointGroup(Id id) : id_(id) {}

  /// Case-insensitive lookup ("d2h", "C2v", ...). Returns nullopt for
  /// anything else, including non-Abelian groups such as C3v or Td.
  static std::optional<PointGroup> from_name(std::string_view name);

  Id id() const { return id_; }
  std::string_view name() const;
  /// Group order h, which equals the number of irreps.
  unsigned order() const;
  /// Mulliken name of a label, e.g. D2h bit 3 -> "B1g".
  std::string_view irrep_name(IrrepLabel label) const;
  std::optional<IrrepLabel> irrep_from_name(std::string_view name) const;

  friend bool operator==(PointGroup, PointGroup) = default;

 private:
  Id id_;
};

}  // namespace symucc
