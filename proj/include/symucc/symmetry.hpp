#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "symucc/fermionics.hpp"
#include "symucc/integrals.hpp"
#include "symucc/irrep.hpp"

namespace symucc {

/// Product of orbital irreps over every spatial orbital the excitation
/// touches, counted with multiplicity.
IrrepLabel excitation_irrep(const Excitation& exc, const IntegralTable& table);

/// Keep the excitations whose excited determinant carries the same irrep as
/// the reference, i.e. whose own irrep is totally symmetric. Order-preserving.
std::vector<Excitation> filter_pool(std::span<const Excitation> pool,
                                    const IntegralTable& table,
                                    IrrepLabel target);

/// The complement of filter_pool: excitations that change the irrep.
std::vector<Excitation> forbidden_pool(std::span<const Excitation> pool,
                                       const IntegralTable& table,
                                       IrrepLabel target);

struct CensusRow {
  std::size_t singles = 0;
  std::size_t doubles = 0;
};

/// Number of singles and doubles per excitation irrep. Every label 0..7 is
/// present in the result.
std::map<IrrepLabel, CensusRow> irrep_census(std::span<const Excitation> pool,
                                             const IntegralTable& table);

/// Csv rendering of a census: "irrep,singles,doubles" plus a Total row.
/// Irrep names come from `group` when given, else numeric labels.
std::string census_csv(const std::map<IrrepLabel, CensusRow>& census,
                       const PointGroup* group);

/// One subgroup assignment: a group and the ORBSYM labels it induces.
struct SubgroupLabels {
  std::string tag;
  PointGroup group;
  std::vector<int> orbsym;
};

struct SubgroupScanRow {
  std::string tag;
  PointGroup group;
  std::size_t survivors = 0;
};

/// Filter the molecule's full pool under each subgroup relabeling.
/// Throws ParseError when an orbsym length disagrees with the table, and
/// ContractViolation when a label exceeds the group order.
std::vector<SubgroupScanRow> subgroup_scan(const IntegralTable& table,
                                           std::span<const SubgroupLabels> groups);

/// Read a one-line orbsym relabeling file (whitespace or comma separated).
std::vector<int> read_orbsym_file(const std::string& path);

/// Re-express the table's labels for `group`: C1 maps every orbital to the
/// totally symmetric irrep; other groups require labels within [1, h].
IntegralTable with_point_group(IntegralTable table, PointGroup group);

}  // namespace symucc
