#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hurwitz/perm.hpp"
#include "hurwitz/perm_group.hpp"

namespace hurwitz {

using ElemId = std::uint32_t;

inline constexpr std::size_t kDefaultElementCap = 1'000'000;

/// Membership mask over the elements of a FiniteGroup.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : bits_((universe + 63) / 64, 0), universe_(universe) {}

  bool contains(ElemId e) const { return (bits_[e >> 6] >> (e & 63U)) & 1U; }
  void insert(ElemId e) { bits_[e >> 6] |= std::uint64_t{1} << (e & 63U); }
  std::size_t count() const;
  std::size_t universe() const { return universe_; }
  std::vector<ElemId> members() const;
  bool is_subset_of(const ElementSet& other) const;
  std::uint64_t hash() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<std::uint64_t> bits_;
  std::size_t universe_ = 0;
};

/// A permutation group with every element materialized and indexed.
///
/// Elements are numbered in lexicographic order of their image arrays, so
/// the identity is element 0 and comparing ids compares permutations. Below
/// kTableLimit elements the full multiplication table is stored.
class FiniteGroup {
 public:
  static constexpr std::size_t kTableLimit = 4096;

  static FiniteGroup materialize(const PermGroup& group, std::size_t cap = kDefaultElementCap);

  std::size_t size() const { return elements_.size(); }
  std::size_t degree() const { return group_.degree(); }
  const PermGroup& perm_group() const { return group_; }
  const Permutation& element(ElemId e) const { return elements_[e]; }
  std::optional<ElemId> find(const Permutation& p) const;
  ElemId id_of(const Permutation& p) const;  // throws InputError if p is not in the group

  static constexpr ElemId identity() { return 0; }
  ElemId mul(ElemId a, ElemId b) const {
    return table_.empty() ? mul_slow(a, b) : table_[static_cast<std::size_t>(a) * size() + b];
  }
  ElemId inv(ElemId a) const { return inverse_[a]; }
  /// h^-1 g h.
  ElemId conj(ElemId g, ElemId h) const { return mul(mul(inverse_[h], g), h); }
  ElemId commutator(ElemId x, ElemId y) const { return mul(mul(inverse_[x], inverse_[y]), mul(x, y)); }
  ElemId pow(ElemId a, std::int64_t e) const;
  std::uint32_t order_of(ElemId a) const { return orders_[a]; }

  /// Ids of the defining generators (identities dropped).
  const std::vector<ElemId>& generators() const { return generator_ids_; }

  /// Subgroup generated by `gens`.
  ElementSet closure(std::span<const ElemId> gens) const;
  /// Smallest subgroup containing `seeds` and normalized by `normalizers`.
  ElementSet normal_closure(std::span<const ElemId> seeds, std::span<const ElemId> normalizers) const;
  /// Greedy generating set of a subgroup given as a mask.
  std::vector<ElemId> generators_of(const ElementSet& subgroup) const;
  ElementSet all() const;

  /// PermGroup generated by the given elements.
  PermGroup subgroup(std::span<const ElemId> gens) const;

 private:
  ElemId mul_slow(ElemId a, ElemId b) const;

  PermGroup group_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, ElemId, PermutationHash> index_;
  std::vector<ElemId> table_;
  std::vector<ElemId> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<ElemId> generator_ids_;
};

struct ConjugacyClass {
  Permutation representative;  // lexicographically least element
  ElemId representative_id = 0;
  std::vector<ElemId> members;  // sorted
  std::uint32_t element_order = 1;

  std::size_t size() const { return members.size(); }
  bool contains(ElemId e) const;
  std::vector<Permutation> elements(const FiniteGroup& group) const;
};

/// Classes sorted by (element order, size, least representative).
std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& group);

/// Index of the class containing `e` in a class list.
std::size_t class_index_of(std::span<const ConjugacyClass> classes, ElemId e);

ElementSet centralizer_set(const FiniteGroup& group, ElemId g);
/// Z(g) by filtering all elements. Throws InputError if g is not in G.
PermGroup centralizer(const FiniteGroup& group, const Permutation& g);

ElementSet center_set(const FiniteGroup& group);
ElementSet derived_set(const FiniteGroup& group);

/// G^ab realized as the cosets of G'. Coset ids are numbered by least element.
struct Abelianization {
  std::size_t order = 1;
  std::vector<std::uint32_t> label;  // element -> coset id
  std::vector<std::uint32_t> table;  // coset product, order x order
  std::vector<std::uint64_t> invariants;  // invariant factors d1 | d2 | ...; empty if trivial

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * order + b]; }
  std::uint32_t identity() const { return 0; }
  bool is_cyclic() const { return invariants.size() <= 1; }
};

Abelianization abelianization(const FiniteGroup& group);

/// True if G -> G^ab has a section (checked for cyclic G^ab: some element
/// of order |G^ab| maps to a generator).
bool abelianization_splits(const FiniteGroup& group, const Abelianization& ab);

}  // namespace hurwitz
