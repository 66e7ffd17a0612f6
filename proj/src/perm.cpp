#include "hurwitz/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "hurwitz/errors.hpp"

namespace hurwitz {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x]) {
      throw InputError("image array is not a bijection");
    }
    seen[x] = true;
  }
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') {
      throw InputError("cycle notation: expected '(' in \"" + std::string(text) + "\"");
    }
    ++pos;
    std::vector<Point> cycle;
    for (;;) {
      skip_space();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos >= text.size()) {
        throw InputError("cycle notation: unterminated cycle in \"" + std::string(text) + "\"");
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
        throw InputError("cycle notation: unexpected character in \"" + std::string(text) + "\"");
      }
      std::uint64_t value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (value > degree) {
          throw InputError("cycle notation: point exceeds degree " + std::to_string(degree));
        }
        ++pos;
      }
      if (value == 0) throw InputError("cycle notation: points are 1-based");
      Point p = static_cast<Point>(value - 1);
      if (used[p]) {
        throw InputError("cycle notation: point " + std::to_string(value) + " repeated");
      }
      used[p] = true;
      cycle.push_back(p);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
    skip_space();
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_line(std::span<const std::int64_t> images_one_based) {
  std::vector<Point> images;
  images.reserve(images_one_based.size());
  for (auto v : images_one_based) {
    if (v < 1 || static_cast<std::size_t>(v) > images_one_based.size()) {
      throw InputError("one-line image out of range");
    }
    images.push_back(static_cast<Point>(v - 1));
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::pow(std::int64_t e) const {
  Permutation base = e < 0 ? inverse() : *this;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Permutation result(degree());
  while (k > 0) {
    if (k & 1U) result = result * base;
    base = base * base;
    k >>= 1U;
  }
  return result;
}

std::uint64_t Permutation::order() const {
  std::uint64_t ord = 1;
  for (std::size_t len : cycle_type()) ord = std::lcm(ord, static_cast<std::uint64_t>(len));
  return ord;
}

std::vector<std::size_t> Permutation::cycle_type() const {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (Point x = static_cast<Point>(i); !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::string Permutation::to_cycles() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    any = true;
    out << '(';
    bool first = true;
    for (Point x = static_cast<Point>(i); !seen[x]; x = images_[x]) {
      seen[x] = true;
      if (!first) out << ' ';
      out << (x + 1);
      first = false;
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw InputError("permutation degree mismatch");
  Permutation r;
  r.images_.resize(a.images_.size());
  for (std::size_t i = 0; i < a.images_.size(); ++i) r.images_[i] = b.images_[a.images_[i]];
  return r;
}

Permutation conjugate(const Permutation& g, const Permutation& h) {
  if (g.degree() != h.degree()) throw InputError("conjugate: degree mismatch");
  // h^-1 g h sends x^h to (x^g)^h.
  std::vector<Point> images(g.degree());
  for (Point x = 0; x < g.degree(); ++x) images[h[x]] = h[g[x]];
  return Permutation::unchecked(std::move(images));
}

Permutation commutator(const Permutation& x, const Permutation& y) {
  return x.inverse() * y.inverse() * x * y;
}

std::uint64_t hash_points(std::span<const Point> pts) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ pts.size();
  for (Point p : pts) {
    h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 31;
  }
  return h;
}

}  // namespace hurwitz
