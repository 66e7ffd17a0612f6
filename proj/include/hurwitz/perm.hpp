#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitz {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1} stored as its image array.
///
/// Permutations act on the right: x^(pq) = (x^p)^q, so `p * q` means
/// "apply p, then q". This matches the convention g^h = h^-1 g h used for
/// the braiding action.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);  // identity
  explicit Permutation(std::vector<Point> images);  // validated

  /// Skips the bijection check; for hot paths that construct images from
  /// existing permutations.
  static Permutation unchecked(std::vector<Point> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  /// Parses disjoint-cycle notation with 1-based points, e.g. "(1 2)(3 4 5)".
  /// "()" or "" is the identity. Points above `degree` are an error.
  static Permutation from_cycles(std::string_view text, std::size_t degree);

  /// Builds from 1-based one-line images, e.g. {2, 1, 3} for (1 2).
  static Permutation from_one_line(std::span<const std::int64_t> images_one_based);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation pow(std::int64_t e) const;
  std::uint64_t order() const;

  /// Sorted cycle lengths, longest first, fixed points included.
  std::vector<std::size_t> cycle_type() const;

  /// 1-based disjoint-cycle notation; "()" for the identity.
  std::string to_cycles() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

/// h^-1 g h. Throws InputError on degree mismatch.
Permutation conjugate(const Permutation& g, const Permutation& h);

/// x^-1 y^-1 x y.
Permutation commutator(const Permutation& x, const Permutation& y);

std::uint64_t hash_points(std::span<const Point> pts);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return hash_points(p.images()); }
};

}  // namespace hurwitz
