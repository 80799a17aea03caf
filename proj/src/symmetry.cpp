#include "symucc/symmetry.hpp"

#include <fstream>
#include <sstream>

#include "symucc/errors.hpp"

namespace symucc {

IrrepLabel excitation_irrep(const Excitation& exc, const IntegralTable& table) {
  IrrepLabel g = table.orbital_irrep(exc.i) * table.orbital_irrep(exc.a);
  if (!exc.is_single()) {
    g *= table.orbital_irrep(exc.j) * table.orbital_irrep(exc.b);
  }
  return g;
}

std::vector<Excitation> filter_pool(std::span<const Excitation> pool,
                                    const IntegralTable& table,
                                    IrrepLabel target) {
  // The excited determinant has irrep target * op.
  std::vector<Excitation> kept;
  for (const auto& e : pool) {
    if (target * excitation_irrep(e, table) == target) kept.push_back(e);
  }
  return kept;
}

std::vector<Excitation> forbidden_pool(std::span<const Excitation> pool,
                                       const IntegralTable& table,
                                       IrrepLabel target) {
  std::vector<Excitation> out;
  for (const auto& e : pool) {
    if (target * excitation_irrep(e, table) != target) out.push_back(e);
  }
  return out;
}

std::map<IrrepLabel, CensusRow> irrep_census(std::span<const Excitation> pool,
                                             const IntegralTable& table) {
  std::map<IrrepLabel, CensusRow> census;
  for (unsigned b = 0; b < 8; ++b) census[IrrepLabel(b)];
  for (const auto& e : pool) {
    auto& row = census[excitation_irrep(e, table)];
    (e.is_single() ? row.singles : row.doubles) += 1;
  }
  return census;
}

std::string census_csv(const std::map<IrrepLabel, CensusRow>& census,
                       const PointGroup* group) {
  std::ostringstream out;
  out << "irrep,singles,doubles\n";
  CensusRow total;
  const unsigned rows = group ? group->order() : 8;
  for (const auto& [label, row] : census) {
    total.singles += row.singles;
    total.doubles += row.doubles;
    if (label.bits() >= rows) continue;
    if (group) {
      out << group->irrep_name(label);
    } else {
      out << label.bits();
    }
    out << ',' << row.singles << ',' << row.doubles << '\n';
  }
  out << "Total," << total.singles << ',' << total.doubles << '\n';
  return out.str();
}

std::vector<SubgroupScanRow> subgroup_scan(
    const IntegralTable& table, std::span<const SubgroupLabels> groups) {
  const auto pool = enumerate_pool(table);
  std::vector<SubgroupScanRow> rows;
  for (const auto& g : groups) {
    IntegralTable relabeled = table;
    relabeled.set_orbsym(g.orbsym);
    relabeled = with_point_group(std::move(relabeled), g.group);
    const auto ref = reference_determinant(relabeled);
    rows.push_back({g.tag, g.group, filter_pool(pool, relabeled, ref.irrep).size()});
  }
  return rows;
}

std::vector<int> read_orbsym_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open orbsym file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  for (auto& c : text) {
    if (c == ',') c = ' ';
  }
  std::istringstream tokens(text);
  std::vector<int> labels;
  for (std::string t; tokens >> t;) {
    try {
      std::size_t used = 0;
      labels.push_back(std::stoi(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw ParseError("orbsym file '" + path + "': bad label '" + t + "'");
    }
  }
  return labels;
}

IntegralTable with_point_group(IntegralTable table, PointGroup group) {
  if (group.order() == 1) {
    table.set_orbsym(std::vector<int>(table.n_spatial(), 1));
    return table;
  }
  for (int e : table.orbsym()) {
    if (e > static_cast<int>(group.order())) {
      throw ContractViolation(
          "ORBSYM label " + std::to_string(e) + " exceeds the order of " +
          std::string(group.name()) +
          "; supply a relabeling for this subgroup");
    }
  }
  return table;
}

}  // namespace symucc
