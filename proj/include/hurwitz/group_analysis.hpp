#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hurwitz/finite_group.hpp"

namespace hurwitz {

enum class PseudosimpleFailure {
  kNone,
  kCenterNontrivial,
  kDerivedNotPowerOfSimple,
  kNonabelianQuotient,
  kDerivedAbelian,
};

std::string to_string(PseudosimpleFailure reason);

struct StructureVerdict {
  bool pseudosimple = false;
  PseudosimpleFailure reason = PseudosimpleFailure::kNone;
  std::optional<std::size_t> simple_factor_count;  // w when G' = T^w
};

/// Number of G'-orbits on the class under conjugation.
std::size_t derived_orbit_count(const FiniteGroup& group, const ConjugacyClass& cls);

bool is_ambiguous(const FiniteGroup& group, const ConjugacyClass& cls);

/// Z(g) maps onto G^ab for the class representative g. Equivalent to the
/// class being unambiguous.
bool centralizer_covers_abelianization(const FiniteGroup& group, const ConjugacyClass& cls);

/// Checks trivial center, that the normal closure of every nontrivial class
/// contains G', and that G' is perfect and the product of G-conjugate
/// nonabelian simple minimal normal subgroups.
StructureVerdict is_pseudosimple(const FiniteGroup& group);

bool is_rational_class(const FiniteGroup& group, const ConjugacyClass& cls);

struct Automorphism {
  std::vector<ElemId> generator_images;  // images of AutGroup::domain_generators
  std::vector<ElemId> map;               // full element map
  std::vector<std::uint32_t> class_action;  // class index -> image class index
  bool inner = false;
};

struct AutGroup {
  std::vector<ElemId> domain_generators;
  std::vector<ElemId> class_representatives;  // class list the actions index into
  std::vector<Automorphism> maps;             // identity first, then sorted by generator images
  std::size_t inner_count = 0;

  std::size_t order() const { return maps.size(); }
  /// |Aut| / |Inn|.
  std::size_t out_order() const { return inner_count == 0 ? 0 : maps.size() / inner_count; }
};

/// A small generating set: the first pair (x, y), taken from the classes
/// with the smallest size product, that generates G; falls back to greedy
/// reduction of the defining generators.
std::vector<ElemId> small_generating_set(const FiniteGroup& group,
                                         std::span<const ConjugacyClass> classes);

/// All automorphisms, by backtracking over generator images that match in
/// element order and class size, each verified on the whole group.
AutGroup automorphism_group(const FiniteGroup& group, std::span<const ConjugacyClass> classes);

/// The automorphisms fixing each listed class setwise.
AutGroup aut_fixing_classes(const AutGroup& aut, std::span<const ConjugacyClass> classes);

/// Inn(G) as an AutGroup (one map per element of G/Z(G)).
AutGroup inner_automorphisms(const FiniteGroup& group, std::span<const ConjugacyClass> classes);

}  // namespace hurwitz
