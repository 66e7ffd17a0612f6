#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hurwitz/braid.hpp"
#include "hurwitz/group_analysis.hpp"
#include "hurwitz/nielsen.hpp"

namespace hurwitz {

enum class FiberMode { kInn, kAutGC };

std::string to_string(FiberMode mode);

/// Lexicographic minimum of a tuple over a group of automorphisms, each given
/// as a full element map.
class Canonicalizer {
 public:
  Canonicalizer() = default;
  Canonicalizer(std::shared_ptr<const FiniteGroup> group, const AutGroup& acting);

  std::size_t acting_order() const { return maps_.size(); }
  void canonicalize(std::span<ElemId> tuple) const;
  std::vector<ElemId> canonical(std::span<const ElemId> tuple) const;

  /// Applies acting map `a` to every entry.
  void apply(std::size_t a, std::span<ElemId> tuple) const;

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<std::vector<ElemId>> maps_;
  std::vector<ElemId> min_image_;                  // element -> least image
  std::vector<std::vector<std::uint32_t>> minimizers_;  // element -> maps reaching it
};

/// Open-addressing index from tuples to point ids; 64-bit hash with a full
/// comparison on every probe.
class TupleIndex {
 public:
  TupleIndex() = default;
  TupleIndex(const std::vector<ElemId>* data, std::size_t n);

  /// Point id, or -1.
  std::int64_t find(std::span<const ElemId> tuple) const;

 private:
  const std::vector<ElemId>* data_ = nullptr;
  std::size_t n_ = 0;
  std::vector<std::uint32_t> slots_;  // point id + 1, 0 for empty
  std::uint64_t mask_ = 0;
};

std::uint64_t hash_tuple(std::span<const ElemId> tuple);

/// F_h or F*_h: canonical representatives, sorted, with an index.
class Fiber {
 public:
  Fiber(const HurwitzParameter& h, const TupleSet& tuples, FiberMode mode, const AutGroup& acting);
  Fiber(const Fiber&) = delete;
  Fiber& operator=(const Fiber&) = delete;

  const HurwitzParameter& parameter() const { return h_; }
  const FiniteGroup& group() const { return *h_.group; }
  FiberMode mode() const { return mode_; }
  std::size_t size() const { return count_; }
  std::size_t n() const { return h_.n; }
  std::size_t tuple_count() const { return tuple_count_; }
  std::span<const ElemId> point(std::size_t i) const { return {points_.data() + i * h_.n, h_.n}; }
  const Canonicalizer& canonicalizer() const { return canon_; }
  const AutGroup& acting() const { return acting_; }

  /// Id of the point representing `tuple` (canonicalized first), or -1.
  std::int64_t locate(std::span<const ElemId> tuple) const;

 private:
  HurwitzParameter h_;
  FiberMode mode_;
  AutGroup acting_;
  Canonicalizer canon_;
  std::vector<ElemId> points_;
  std::size_t count_ = 0;
  std::size_t tuple_count_ = 0;
  TupleIndex index_;
};

/// The acting group for a mode: Inn(G), or Aut(G, C).
AutGroup acting_group(const HurwitzParameter& h, FiberMode mode);

std::unique_ptr<Fiber> build_fiber(const HurwitzParameter& h, const TupleSet& tuples, FiberMode mode);

/// Permutation of point ids induced by a braid word. Throws InternalError if
/// an image is missing from the fiber.
Permutation induced_permutation(const Fiber& fiber, const BraidWord& word);
Permutation induced_permutation_serial(const Fiber& fiber, const BraidWord& word);

std::vector<Permutation> induced_permutations(const Fiber& fiber, std::span<const BraidWord> words);

/// Orbits of Br_nu on the fiber computed a second way: breadth-first search
/// under the full Br_n on tuples with any block order, keeping the points of
/// the fiber. Returns the orbit id of every fiber point, numbered by least
/// point.
std::vector<std::uint32_t> orbits_via_full_braid_group(const Fiber& fiber);

}  // namespace hurwitz
