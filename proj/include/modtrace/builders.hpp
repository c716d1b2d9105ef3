#ifndef MODTRACE_BUILDERS_HPP
#define MODTRACE_BUILDERS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modtrace/module.hpp"

namespace modtrace {

/// A finite group by Cayley table; element 0 need not be the identity.
struct GroupTable {
  std::string name;
  std::size_t order = 0;
  std::vector<std::size_t> table;  // table[a * order + b] = a b
  std::size_t identity = 0;
  std::vector<std::size_t> generators;
  /// Permutation realisation when the group was built from permutations:
  /// permutations[a][i] is the image of point i under a.
  std::vector<std::vector<std::size_t>> permutations;

  std::size_t mul(std::size_t a, std::size_t b) const { return table[a * order + b]; }
  std::size_t inverse(std::size_t a) const;

  /// Closure of the given permutations, breadth first from the identity;
  /// element order is deterministic.
  static GroupTable from_permutations(std::string name, const std::vector<std::vector<std::size_t>>& gens);
  static GroupTable symmetric(unsigned n);
  static GroupTable cyclic(unsigned n);
  /// "S3", "S4", "Z/2", "C5", ...
  static GroupTable named(std::string_view name);
};

/// Throws InvalidHopfData unless the table is a group and the generators generate it.
void validate_group(const GroupTable& g);

/// An algebra together with named modules.
struct Family {
  HopfPtr algebra;
  std::vector<std::pair<std::string, ModulePtr>> modules;
  /// Names of the absolutely simple modules provided, in a fixed order.
  std::vector<std::string> simples;
  /// The module used as the ambidextrous reference for traces, if any.
  std::string distinguished;

  /// Looks a module up by name; "regular" is built on demand.
  ModulePtr module(std::string_view name) const;
  std::vector<std::string> module_names() const;
};

/// kG: basis the group elements, pivot 1. Modules: trivial, regular, and for
/// symmetric groups the permutation module "perm" and its sum-zero submodule "N".
Family build_group_algebra(const FieldSpec& field, const GroupTable& g);

/// D(G) with basis delta_x y at index x * |G| + y, pivot 1. Modules: trivial.
Family build_drinfeld_double_group(const FieldSpec& field, const GroupTable& g);

/// Restricted enveloping algebra of sl2 over F_p (p odd), basis e^a f^b h^c at
/// index (a p + b) p + c. Modules: L(0) .. L(p-1) (also "trivial" and "St").
Family build_restricted_usl2(std::uint32_t p);

/// Small quantum sl2 over Q(zeta_l), l odd, basis E^a F^b K^c at (a l + b) l + c,
/// pivot K. Modules: trivial, St.
Family build_small_quantum_sl2(unsigned l);

/// Sweedler's algebra on 1, g, x, gx with pivot g. Modules: trivial, chi (g -> -1), regular.
Family build_sweedler(const FieldSpec& field);

/// Restricted sl2 module of highest weight d: h v_i = (d - 2i) v_i, f v_i = v_{i+1},
/// e v_i = i (d - i + 1) v_{i-1}.
ModulePtr usl2_simple(const HopfPtr& usl2, unsigned d);

}  // namespace modtrace

#endif  // MODTRACE_BUILDERS_HPP
