#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hurwitz/group_analysis.hpp"
#include "hurwitz/nielsen.hpp"

namespace hurwitz {

/// Kernel elements are numbered by cover element id, so 0 is the identity.
using KernelElem = std::uint32_t;

/// A stem extension pi: G~ -> G, both materialized.
struct CentralExtension {
  std::shared_ptr<const FiniteGroup> cover;
  std::shared_ptr<const FiniteGroup> base;
  std::vector<Permutation> cover_generators;
  std::vector<Permutation> image_generators;
  std::vector<ElemId> projection;             // cover id -> base id
  std::vector<std::vector<ElemId>> preimages;  // base id -> sorted cover ids
  std::vector<ElemId> kernel;                  // sorted cover ids
  std::vector<std::int32_t> kernel_pos;        // cover id -> kernel index, -1 outside

  std::size_t kernel_order() const { return kernel.size(); }
  KernelElem kernel_index(ElemId cover_elem) const;  // throws InternalError outside Z
  KernelElem kernel_mul(KernelElem a, KernelElem b) const;
  /// Least preimage of a base element.
  ElemId lift(ElemId base_elem) const { return preimages[base_elem].front(); }
};

/// Verifies that the generator images define a surjective homomorphism with
/// central kernel inside G~'. Throws InputError naming the broken invariant.
CentralExtension load_extension(std::vector<Permutation> cover_generators,
                                std::vector<Permutation> image_generators,
                                std::shared_ptr<const FiniteGroup> base,
                                std::size_t element_cap = kDefaultElementCap);

/// G over itself with the identity projection.
CentralExtension trivial_extension(std::shared_ptr<const FiniteGroup> base);

/// [x~, y~] for commuting x, y in G (base ids). Throws InputError otherwise.
KernelElem commutator_pairing(const CentralExtension& e, ElemId x, ElemId y);

/// Subgroup of Z generated by <g, z> for z in Z(g), or in Z(g) n G' when
/// `derived_only`.
std::vector<KernelElem> class_pairings(const CentralExtension& e, ElemId g, bool derived_only);

struct PairingWitness {
  ElemId g = 0;
  ElemId z = 0;
  KernelElem value = 0;
};

struct ObstructionSubgroups {
  std::vector<KernelElem> unprimed;  // H2(G)_C, sorted kernel indices
  std::vector<KernelElem> primed;    // H2'(G)_C
  std::optional<PairingWitness> witness;  // some <g,z> in unprimed but not primed
};

/// H2(G)_C and H2'(G)_C from one representative per class.
ObstructionSubgroups obstruction_subgroups(const CentralExtension& e, std::span<const ConjugacyClass> classes);

/// G~ / H2(G)_C. Every listed class splits fully in the result (checked).
CentralExtension reduce_cover(const CentralExtension& e, std::span<const ConjugacyClass> classes);

/// Quotient by a subgroup of Z given as kernel indices.
CentralExtension quotient_by_kernel_subgroup(const CentralExtension& e, std::span<const KernelElem> sub);

/// Number of G~-classes in the preimage of a class of G.
std::size_t lifted_class_count(const CentralExtension& e, const ConjugacyClass& cls);

enum class ClassKindTag { kSplit, kMixed, kInert, kAmbiguous };
std::string to_string(ClassKindTag kind);

struct ClassKind {
  ClassKindTag kind = ClassKindTag::kInert;
  std::size_t lifted_class_count = 0;   // s
  std::size_t derived_orbit_count = 0;  // G~'-orbits on the preimage
};

/// Checks |G^ab| = |Z| = p prime and that G -> G^ab splits; returns p.
/// Throws UnsupportedError naming the failed precondition.
std::size_t require_split_pp(const CentralExtension& e);

ClassKind classify_class(const CentralExtension& e, const ConjugacyClass& cls);

struct ConditionE {
  bool holds = false;
  std::optional<PairingWitness> witness;
  ObstructionSubgroups subgroups;
};

/// H2(G)_C = H2'(G)_C. Requires unambiguous classes and a pseudosimple G
/// with cyclic split abelianization.
ConditionE condition_e(const CentralExtension& e, std::span<const ConjugacyClass> classes);

/// The classification route: E fails exactly when no class is inert and at
/// least one is mixed. Requires split-p-p.
bool condition_e_by_classification(const CentralExtension& e, std::span<const ConjugacyClass> classes);

/// Lifting invariant relative to a reduced cover. For each C_i the chosen
/// lifted class C_i* is the cover class of the least preimage of the class
/// representative; each entry lifts to its unique preimage in C_i*.
class LiftingInvariant {
 public:
  LiftingInvariant(const CentralExtension& reduced, const HurwitzParameter& h);

  KernelElem label(std::span<const ElemId> tuple) const;
  std::size_t label_count() const { return kernel_order_; }
  /// Cover id of the chosen lift of element g of C_i.
  ElemId chosen_lift(std::size_t class_slot, ElemId g) const { return lifts_[class_slot][g]; }

 private:
  std::shared_ptr<const FiniteGroup> cover_;
  std::vector<std::int32_t> kernel_pos_;
  std::vector<std::size_t> position_class_;
  std::vector<std::vector<ElemId>> lifts_;  // class slot -> base id -> cover id
  std::size_t kernel_order_ = 1;
};

class Fiber;

struct LabelAction {
  std::vector<KernelElem> realized;              // sorted
  std::vector<std::vector<KernelElem>> orbits;  // orbits of Aut(G,C) on realized labels
  std::map<KernelElem, std::size_t> out_stabilizer;  // |Out(G,C)_l|
  /// label image per automorphism (rows follow acting.maps), over `realized`.
  std::vector<std::vector<KernelElem>> images;
};

/// Action of Aut(G,C) on the realized labels of a fiber, checked on every
/// point. Throws InternalError if some automorphism does not induce a map.
LabelAction out_action_on_labels(const LiftingInvariant& inv, const Fiber& fiber, const AutGroup& aut_gc);

}  // namespace hurwitz
