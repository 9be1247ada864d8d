#pragma once

// Backend equivalence: the same presentation viewed through collection and
// through its multiplication table must give identical structure results,
// element for element (ids are shared between the two backends).

#include <memory>
#include <string>
#include <vector>

#include "pgroup/structure.hpp"

namespace pgroup {

struct OracleComparison {
  std::vector<std::string> mismatches;
  std::size_t compared = 0;

  bool equal() const { return mismatches.empty(); }
};

inline OracleComparison compare_backends(const GroupHandle& stream, const GroupHandle& table) {
  OracleComparison c;
  auto same_set = [&](const std::string& what, const ElementSet& a, const ElementSet& b) {
    ++c.compared;
    if (!(a == b))
      c.mismatches.push_back(what + ": " + std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                             " elements");
  };
  auto same_value = [&](const std::string& what, auto a, auto b) {
    ++c.compared;
    if (a != b) c.mismatches.push_back(what + ": " + std::to_string(a) + " vs " + std::to_string(b));
  };
  same_value("order", stream.size(), table.size());
  if (stream.size() != table.size()) return c;

  ++c.compared;
  if (stream.orders() != table.orders()) c.mismatches.push_back("element orders differ");
  for (ElementId x = 0; x < stream.size(); ++x)
    if (stream.inv(x) != table.inv(x)) {
      c.mismatches.push_back("inverse of " + stream.label(x));
      break;
    }
  ++c.compared;

  same_value("exponent", exponent(stream), exponent(table));
  same_set("center", center(stream), center(table));
  same_set("derived subgroup", derived_subgroup(stream), derived_subgroup(table));
  const int e = exponent_log(table);
  for (int i = 1; i <= e; ++i) {
    same_set("agemo " + std::to_string(i), agemo(stream, i), agemo(table, i));
    same_set("power image " + std::to_string(i), power_image(stream, i), power_image(table, i));
    same_set("omega " + std::to_string(i), omega(stream, i), omega(table, i));
  }
  const auto ls = lower_central_series(stream), lt = lower_central_series(table);
  same_value("class", ls.class_or_length, lt.class_or_length);
  for (std::size_t k = 0; k < std::min(ls.terms.size(), lt.terms.size()); ++k)
    same_set("gamma " + std::to_string(k + 1), ls.terms[k], lt.terms[k]);
  const auto fs = frattini_and_rank(stream), ft = frattini_and_rank(table);
  same_set("Frattini", fs.frattini, ft.frattini);
  same_value("d", fs.rank, ft.rank);
  ++c.compared;
  if (fs.basis != ft.basis) c.mismatches.push_back("Frattini basis differs");
  for (ElementId g : table.generators())
    for (ElementId h : table.generators())
      same_set("closure", closure(stream, {g, h}), closure(table, {g, h}));
  return c;
}

inline OracleComparison compare_backends(std::shared_ptr<const PcGroup> G) {
  const GroupHandle stream = GroupHandle::from_presentation(G);
  const GroupHandle table = GroupHandle::table_of(*G);
  return compare_backends(stream, table);
}

}  // namespace pgroup
