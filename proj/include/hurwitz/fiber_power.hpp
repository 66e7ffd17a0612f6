#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hurwitz/bigint.hpp"
#include "hurwitz/finite_group.hpp"
#include "hurwitz/nielsen.hpp"

namespace hurwitz {

inline constexpr std::size_t kDefaultMaxFiberPower = 3;

/// G^[k] = G x_{G^ab} ... x_{G^ab} G acting on k disjoint copies of G's
/// points (copy c uses points c*d .. c*d + d - 1).
struct FiberPowerGroup {
  PermGroup base;
  std::size_t k = 1;
  PermGroup realized;

  /// Coordinate c of an element of the realized group.
  Permutation projection(const Permutation& x, std::size_t c) const;
};

/// Generated by the diagonal copies of G's generators and the per-coordinate
/// copies of G' generators; order checked against |G| |G'|^(k-1).
FiberPowerGroup fiber_power_group(const FiniteGroup& group, std::size_t k,
                                  std::size_t max_k = kDefaultMaxFiberPower);

/// Embeds (x_1, ..., x_k) into the realized degree.
Permutation embed_coordinates(std::span<const Permutation> coords);

/// Given k Nielsen tuples of the same h, generates the subgroup of G^[k]
/// by the n rows (g_1j, ..., g_kj) and tests whether it is all of G^[k].
/// Throws UnsupportedError if some class of h is ambiguous, unless
/// `require_unambiguous` is false (the order test itself is still exact).
bool row_span_check(const HurwitzParameter& h, const FiberPowerGroup& power,
                    std::span<const std::span<const ElemId>> tuples, bool require_unambiguous = true);

}  // namespace hurwitz
