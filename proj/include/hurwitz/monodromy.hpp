#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "hurwitz/bigint.hpp"
#include "hurwitz/covers.hpp"
#include "hurwitz/perm.hpp"

namespace hurwitz {

struct OrbitPartition {
  std::vector<std::uint32_t> orbit_of;        // point -> orbit id
  std::vector<std::vector<Point>> orbits;    // sorted, numbered by least point
  std::vector<std::optional<KernelElem>> labels;  // per orbit, when a cover is supplied

  std::vector<std::size_t> sizes() const;
};

/// Connected components of the Schreier graph of `gens` on `points` points.
OrbitPartition braid_orbits(std::size_t points, std::span<const Permutation> gens);

/// Orbit-by-orbit labels; throws InternalError if a label is not constant on
/// an orbit.
void attach_labels(OrbitPartition& partition, std::span<const KernelElem> point_labels);

struct OrbitVerdict {
  std::size_t size = 0;
  BigInt order;
  bool full = false;
  std::optional<std::vector<std::vector<Point>>> blocks;  // a nontrivial block system, points of the orbit
};

struct MonodromyReport {
  std::size_t fiber_size = 0;
  std::vector<Permutation> generators;
  BigInt group_order;
  OrbitPartition partition;
  std::vector<OrbitVerdict> per_orbit;
  bool quasi_full = false;
};

struct MonodromyOptions {
  std::size_t memory_budget_bytes = std::size_t{2} << 30;
};

/// Builds the group generated by `gens`, its order, and the orbit partition
/// with per-orbit restriction orders, fullness and (for non-full orbits) a
/// block system. Also evaluates quasi-fullness.
MonodromyReport monodromy_group(std::size_t points, std::span<const Permutation> gens,
                                const MonodromyOptions& options = {});

/// Full iff the order is m!/2 or m!; orbits of size <= 2 are full.
bool is_full_order(const BigInt& order, std::size_t m);

/// A nontrivial block system of a transitive group on 0..m-1, from the
/// minimal blocks containing {0, b}; the one with the most blocks is
/// returned. Empty optional when the group is primitive.
std::optional<std::vector<std::vector<Point>>> block_system(std::size_t m, std::span<const Permutation> gens);

/// Quasi-fullness from pointwise stabilizers: for each orbit the stabilizer
/// of all other orbits, restricted to the orbit, must contain Alt.
bool quasi_fullness(std::size_t points, std::span<const Permutation> gens, const OrbitPartition& partition,
                    const MonodromyOptions& options = {});

/// Independent fullness witness on a transitive group of degree m: the
/// group is primitive and some random element powers to a p-cycle with p
/// prime and p <= m - 3. Returns false if no witness was found in `tries`.
bool jordan_witness(std::size_t m, std::span<const Permutation> gens, std::mt19937_64& rng, std::size_t tries = 2000);

struct ConwayParkerReport {
  std::size_t orbit_count = 0;
  std::size_t label_count = 0;  // realized labels
  bool injective = false;       // distinct orbits carry distinct labels
  bool surjective = true;       // every realized label is carried by an orbit
  bool bijective() const { return injective && surjective; }
};

ConwayParkerReport conway_parker_report(const OrbitPartition& partition, std::span<const KernelElem> point_labels);

struct MassReport {
  BigInt numerator;               // prod |C_i|^nu_i
  double predicted_inn = 0;       // numerator / (|G'| |Inn G|)
  double predicted_aut = 0;       // numerator / (|G'| |Aut(G,C)|)
  std::optional<std::size_t> actual_inn;
  std::optional<std::size_t> actual_aut;
  std::optional<double> ratio_inn;  // predicted / actual; absent if actual is 0
  std::optional<double> ratio_aut;
};

MassReport mass_report(const HurwitzParameter& h, std::size_t inn_order, std::size_t aut_gc_order,
                       std::optional<std::size_t> actual_inn, std::optional<std::size_t> actual_aut);

}  // namespace hurwitz
