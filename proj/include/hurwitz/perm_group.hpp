#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "hurwitz/bigint.hpp"
#include "hurwitz/perm.hpp"
#include "hurwitz/stab_chain.hpp"

namespace hurwitz {

/// A permutation group given by generators. The stabilizer chain is built on
/// first use and shared between copies; it is never modified afterwards.
class PermGroup {
 public:
  PermGroup() : PermGroup(0, {}) {}
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }
  static PermGroup symmetric(std::size_t n);
  static PermGroup alternating(std::size_t n);
  static PermGroup cyclic(std::size_t n);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }

  const StabChain& chain() const;
  BigInt order() const { return chain().order(); }
  bool contains(const Permutation& g) const { return chain().contains(g); }
  bool is_subgroup_of(const PermGroup& other) const;

  /// Orbits on points, each sorted, ordered by least point.
  std::vector<std::vector<Point>> orbits() const;

 private:
  struct Lazy {
    std::once_flag once;
    StabChain chain;
  };

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::shared_ptr<Lazy> lazy_;
};

/// Exact order from the stabilizer chain.
BigInt group_order(const PermGroup& group);

/// Normal closure of `seeds` under conjugation by `group`'s generators.
PermGroup normal_closure(const PermGroup& group, std::vector<Permutation> seeds);

/// G': normal closure of the commutators of generator pairs.
PermGroup derived_subgroup(const PermGroup& group);

/// The group generated by `group`'s generators restricted to an invariant
/// point set, relabelled 0..|points|-1 in the order given.
PermGroup restrict_to(const PermGroup& group, std::span<const Point> points);

}  // namespace hurwitz
