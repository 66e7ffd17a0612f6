#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hurwitz/finite_group.hpp"
#include "hurwitz/perm.hpp"

namespace hurwitz {

/// h = (G, C, nu) with C generating G, distinct nonidentity classes, and nu
/// allowed: prod [C_i]^nu_i = 1 in G^ab.
struct HurwitzParameter {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<ConjugacyClass> group_classes;  // every class of G
  std::vector<std::size_t> class_index;       // C_i = group_classes[class_index[i]]
  std::vector<ConjugacyClass> classes;
  std::vector<std::size_t> nu;
  std::size_t n = 0;

  /// Class slot of each tuple position.
  std::vector<std::size_t> position_class() const;
};

/// Builds h or throws InputError naming the violated invariant.
HurwitzParameter validate_parameter(std::shared_ptr<const FiniteGroup> group,
                                    std::span<const Permutation> class_representatives,
                                    std::span<const std::size_t> nu);

/// Tuples stored back to back, n entries each, sorted lexicographically.
struct TupleSet {
  std::size_t n = 0;
  std::vector<ElemId> data;

  std::size_t size() const { return n == 0 ? 0 : data.size() / n; }
  std::span<const ElemId> operator[](std::size_t i) const { return {data.data() + i * n, n}; }
};

struct EnumerateOptions {
  std::uint64_t budget = 100'000'000;  // prefix visits
  int threads = 0;                     // 0: OpenMP default
};

struct EnumerateStats {
  std::uint64_t estimate = 0;  // prod |C_i|^nu_i / |C_last| after rotation
  std::uint64_t prefix_visits = 0;
};

/// The estimated search size; saturates at UINT64_MAX.
std::uint64_t enumeration_estimate(const HurwitzParameter& h);

/// G_h: all tuples in the class blocks with product 1 that generate G.
/// Depth-first over the first n-1 entries with the last forced. The tuple is
/// cyclically rotated during the search so the forced entry falls in the
/// largest class. Parallel over first-entry choices. Throws ResourceError if
/// the estimate exceeds the budget.
TupleSet enumerate_tuples(const HurwitzParameter& h, const EnumerateOptions& options = {},
                          EnumerateStats* stats = nullptr);

/// Single-threaded version of the same search.
TupleSet enumerate_tuples_serial(const HurwitzParameter& h, const EnumerateOptions& options = {},
                                 EnumerateStats* stats = nullptr);

bool is_nielsen_tuple(const HurwitzParameter& h, std::span<const ElemId> tuple);

/// Ordered product of a tuple.
ElemId tuple_product(const FiniteGroup& group, std::span<const ElemId> tuple);

}  // namespace hurwitz
