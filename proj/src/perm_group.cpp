#include "hurwitz/perm_group.hpp"

#include <algorithm>
#include <numeric>

#include "hurwitz/errors.hpp"

namespace hurwitz {

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)), lazy_(std::make_shared<Lazy>()) {
  for (const auto& g : generators_) {
    if (g.degree() != degree_) throw InputError("generator degree does not match group degree");
  }
}

PermGroup PermGroup::symmetric(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<Point> t(n), c(n);
    std::iota(t.begin(), t.end(), Point{0});
    std::swap(t[0], t[1]);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>((i + 1) % n);
    gens.emplace_back(std::move(t));
    if (n > 2) gens.emplace_back(std::move(c));
  }
  return PermGroup(n, std::move(gens));
}

PermGroup PermGroup::alternating(std::size_t n) {
  std::vector<Permutation> gens;
  for (std::size_t i = 2; i < n; ++i) {
    // 3-cycles (1 2 i+1) generate A_n.
    std::vector<Point> c(n);
    std::iota(c.begin(), c.end(), Point{0});
    c[0] = 1;
    c[1] = static_cast<Point>(i);
    c[i] = 0;
    gens.emplace_back(std::move(c));
  }
  return PermGroup(n, std::move(gens));
}

PermGroup PermGroup::cyclic(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<Point> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>((i + 1) % n);
    gens.emplace_back(std::move(c));
  }
  return PermGroup(n, std::move(gens));
}

const StabChain& PermGroup::chain() const {
  std::call_once(lazy_->once, [this] { lazy_->chain = StabChain::build(degree_, generators_); });
  return lazy_->chain;
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (other.degree() != degree_) return false;
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const Permutation& g) { return other.contains(g); });
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<std::int64_t> owner(degree_, -1);
  std::vector<std::vector<Point>> result;
  for (Point start = 0; start < degree_; ++start) {
    if (owner[start] >= 0) continue;
    std::vector<Point> orbit{start};
    owner[start] = static_cast<std::int64_t>(result.size());
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& g : generators_) {
        Point y = g[orbit[i]];
        if (owner[y] < 0) {
          owner[y] = static_cast<std::int64_t>(result.size());
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    result.push_back(std::move(orbit));
  }
  return result;
}

BigInt group_order(const PermGroup& group) { return group.order(); }

PermGroup normal_closure(const PermGroup& group, std::vector<Permutation> seeds) {
  std::vector<Permutation> gens;
  for (auto& s : seeds) {
    if (!s.is_identity()) gens.push_back(std::move(s));
  }
  PermGroup current(group.degree(), gens);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& g : group.generators()) {
      Permutation c = conjugate(gens[i], g);
      if (!current.contains(c)) {
        gens.push_back(std::move(c));
        current = PermGroup(group.degree(), gens);
      }
    }
  }
  return current;
}

PermGroup derived_subgroup(const PermGroup& group) {
  std::vector<Permutation> seeds;
  const auto& gens = group.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) seeds.push_back(commutator(gens[i], gens[j]));
  }
  return normal_closure(group, std::move(seeds));
}

PermGroup restrict_to(const PermGroup& group, std::span<const Point> points) {
  std::vector<std::int64_t> label(group.degree(), -1);
  for (std::size_t i = 0; i < points.size(); ++i) label[points[i]] = static_cast<std::int64_t>(i);
  std::vector<Permutation> gens;
  for (const auto& g : group.generators()) {
    std::vector<Point> images(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::int64_t l = label[g[points[i]]];
      if (l < 0) throw InputError("restrict_to: point set is not invariant");
      images[i] = static_cast<Point>(l);
    }
    gens.emplace_back(std::move(images));
  }
  return PermGroup(points.size(), std::move(gens));
}

}  // namespace hurwitz
