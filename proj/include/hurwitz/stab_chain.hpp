#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "hurwitz/bigint.hpp"
#include "hurwitz/perm.hpp"

namespace hurwitz {

/// Base and strong generating set built by the deterministic Schreier-Sims
/// algorithm with explicit transversals.
///
/// Level i stores base point b_i, the generators S_i that fix b_0..b_{i-1},
/// the orbit of b_i under <S_i>, and for every orbit point beta a transversal
/// element u with b_i^u = beta together with its inverse.
class StabChain {
 public:
  struct Options {
    /// Points placed at the front of the base, in order, even when the group
    /// fixes them. The group at level `base_prefix.size()` is then the
    /// pointwise stabilizer of the prefix.
    std::vector<Point> base_prefix;
    /// Upper bound on the bytes held by transversals.
    std::size_t memory_budget_bytes = std::size_t{2} << 30;
    /// A proven bound |G| <= bound. When given, a seeded random phase runs
    /// first; its chain order never exceeds |G|, so reaching the bound proves
    /// the chain complete and the Schreier generator check is skipped.
    std::optional<BigInt> order_upper_bound;
  };

  StabChain() = default;

  static StabChain build(std::size_t degree, std::span<const Permutation> generators,
                         const Options& options);
  static StabChain build(std::size_t degree, std::span<const Permutation> generators) {
    return build(degree, generators, Options{});
  }

  std::size_t degree() const { return degree_; }
  std::size_t depth() const { return levels_.size(); }
  std::vector<Point> base() const;
  BigInt order() const;

  bool contains(const Permutation& g) const;

  Point base_point(std::size_t level) const { return levels_[level].base; }
  std::span<const Point> orbit(std::size_t level) const { return levels_[level].orbit; }

  /// Generators of the group at `level` (the pointwise stabilizer of the
  /// first `level` base points). `level == depth()` gives the trivial group.
  std::vector<Permutation> generators_at(std::size_t level) const;

  /// Uniformly random element: a product of random transversal elements.
  Permutation random_element(std::mt19937_64& rng) const;

 private:
  struct Level {
    Point base = 0;
    std::vector<std::uint32_t> gens;  // indices into pool_
    std::vector<Point> orbit;
    std::vector<std::int32_t> slot;   // point -> orbit index, -1 if absent
    std::vector<std::vector<Point>> u;
    std::vector<std::vector<Point>> uinv;
    std::vector<std::uint32_t> checked;  // per orbit point: generators already used
  };

  // Returns the first level at which h fails to sift (depth() if it sifts
  // through every level); h is reduced in place.
  std::size_t sift(std::vector<Point>& h, std::size_t from) const;
  void push_level(Point base);
  void add_generator(std::uint32_t pool_index, std::size_t first, std::size_t last);
  void extend_orbit(std::size_t level, std::uint32_t new_gen);
  void charge(std::size_t points);
  void random_phase(std::span<const Permutation> generators, const BigInt& bound);

  std::size_t degree_ = 0;
  std::vector<std::vector<Point>> pool_;
  std::vector<Level> levels_;
  std::size_t budget_ = 0;
  std::size_t used_ = 0;
};

}  // namespace hurwitz
