#include "symucc/irrep.hpp"

#include <algorithm>
#include <cctype>
#include <span>
#include <string>

namespace symucc {
namespace {

struct GroupInfo {
  PointGroup::Id id;
  std::string_view name;
  std::array<std::string_view, 8> irreps;
  unsigned order;
};

// Molpro ordering; index = label bits.
constexpr std::array<GroupInfo, 8> kGroups{{
    {PointGroup::Id::D2h, "D2h",
     {"Ag", "B3u", "B2u", "B1g", "B1u", "B2g", "B3g", "Au"}, 8},
    {PointGroup::Id::C2v, "C2v", {"A1", "B1", "B2", "A2"}, 4},
    {PointGroup::Id::C2h, "C2h", {"Ag", "Au", "Bu", "Bg"}, 4},
    {PointGroup::Id::D2, "D2", {"A", "B3", "B2", "B1"}, 4},
    {PointGroup::Id::C2, "C2", {"A", "B"}, 2},
    {PointGroup::Id::Cs, "Cs", {"A'", "A''"}, 2},
    {PointGroup::Id::Ci, "Ci", {"Ag", "Au"}, 2},
    {PointGroup::Id::C1, "C1", {"A"}, 1},
}};

const GroupInfo& info(PointGroup::Id id) {
  return *std::find_if(kGroups.begin(), kGroups.end(),
                       [id](const GroupInfo& g) { return g.id == id; });
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::optional<PointGroup> PointGroup::from_name(std::string_view name) {
  for (const auto& g : kGroups) {
    if (iequals(g.name, name)) return PointGroup(g.id);
  }
  return std::nullopt;
}

std::string_view PointGroup::name() const { return info(id_).name; }

unsigned PointGroup::order() const { return info(id_).order; }

std::string_view PointGroup::irrep_name(IrrepLabel label) const {
  const auto& g = info(id_);
  if (label.bits() >= g.order) return "?";
  return g.irreps[label.bits()];
}

std::optional<IrrepLabel> PointGroup::irrep_from_name(
    std::string_view name) const {
  const auto& g = info(id_);
  for (unsigned b = 0; b < g.order; ++b) {
    if (iequals(g.irreps[b], name)) return IrrepLabel(b);
  }
  return std::nullopt;
}

}  // namespace symucc
