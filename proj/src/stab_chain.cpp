#include "hurwitz/stab_chain.hpp"

#include <algorithm>
#include <numeric>

#include "hurwitz/errors.hpp"

namespace hurwitz {

namespace {

bool is_identity(const std::vector<Point>& h) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] != i) return false;
  }
  return true;
}

}  // namespace

void StabChain::charge(std::size_t points) {
  used_ += points * sizeof(Point);
  if (used_ > budget_) {
    throw ResourceError("stabilizer chain exceeds memory budget of " + std::to_string(budget_) +
                        " bytes (degree " + std::to_string(degree_) + ")");
  }
}

void StabChain::push_level(Point base) {
  charge(3 * degree_);
  Level level;
  level.base = base;
  level.slot.assign(degree_, -1);
  level.slot[base] = 0;
  level.orbit.push_back(base);
  std::vector<Point> id(degree_);
  std::iota(id.begin(), id.end(), Point{0});
  level.u.push_back(id);
  level.uinv.push_back(std::move(id));
  level.checked.push_back(0);
  levels_.push_back(std::move(level));
}

void StabChain::extend_orbit(std::size_t li, std::uint32_t new_gen) {
  Level& level = levels_[li];
  const std::size_t old_size = level.orbit.size();
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    auto apply = [&](std::uint32_t gi) {
      const auto& s = pool_[gi];
      Point beta = level.orbit[i];
      Point gamma = s[beta];
      if (level.slot[gamma] >= 0) return;
      charge(2 * degree_);
      std::vector<Point> u(degree_);
      const auto& ub = level.u[i];
      for (std::size_t x = 0; x < degree_; ++x) u[x] = s[ub[x]];
      std::vector<Point> uinv(degree_);
      for (std::size_t x = 0; x < degree_; ++x) uinv[u[x]] = static_cast<Point>(x);
      level.slot[gamma] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(gamma);
      level.u.push_back(std::move(u));
      level.uinv.push_back(std::move(uinv));
      level.checked.push_back(0);
    };
    if (i < old_size) {
      apply(new_gen);
    } else {
      for (std::size_t k = 0; k < level.gens.size(); ++k) apply(level.gens[k]);
    }
  }
}

void StabChain::add_generator(std::uint32_t pool_index, std::size_t first, std::size_t last) {
  for (std::size_t li = first; li <= last; ++li) {
    levels_[li].gens.push_back(pool_index);
    extend_orbit(li, pool_index);
  }
}

void StabChain::random_phase(std::span<const Permutation> generators, const BigInt& bound) {
  constexpr std::size_t kSlots = 10;
  constexpr std::size_t kMaxMisses = 48;
  std::vector<std::vector<Point>> slots;
  for (const auto& g : generators) {
    if (!g.is_identity()) slots.emplace_back(g.images().begin(), g.images().end());
  }
  if (slots.empty()) return;
  for (std::size_t i = 0; slots.size() < kSlots; ++i) slots.push_back(slots[i]);
  std::vector<Point> acc(degree_);
  std::iota(acc.begin(), acc.end(), Point{0});
  std::vector<Point> tmp(degree_);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  auto step = [&] {
    std::size_t i = rng() % slots.size();
    std::size_t j = rng() % (slots.size() - 1);
    if (j >= i) ++j;
    for (std::size_t x = 0; x < degree_; ++x) tmp[x] = slots[j][slots[i][x]];
    slots[i].swap(tmp);
    for (std::size_t x = 0; x < degree_; ++x) tmp[x] = slots[i][acc[x]];
    acc.swap(tmp);
  };
  for (int k = 0; k < 40; ++k) step();

  std::size_t misses = 0;
  while (misses < kMaxMisses && order() < bound) {
    step();
    std::vector<Point> h = acc;
    std::size_t fail = sift(h, 0);
    if (fail == levels_.size()) {
      if (is_identity(h)) {
        ++misses;
        continue;
      }
      auto moved = std::find_if(h.begin(), h.end(), [i = Point{0}](Point v) mutable { return v != i++; });
      push_level(static_cast<Point>(moved - h.begin()));
      fail = levels_.size() - 1;
    }
    misses = 0;
    pool_.push_back(std::move(h));
    add_generator(static_cast<std::uint32_t>(pool_.size() - 1), 0, fail);
  }
}

std::size_t StabChain::sift(std::vector<Point>& h, std::size_t from) const {
  std::vector<Point> tmp(degree_);
  for (std::size_t j = from; j < levels_.size(); ++j) {
    const Level& level = levels_[j];
    Point beta = h[level.base];
    if (beta == level.base) continue;
    std::int32_t idx = level.slot[beta];
    if (idx < 0) return j;
    const auto& uinv = level.uinv[static_cast<std::size_t>(idx)];
    for (std::size_t x = 0; x < degree_; ++x) tmp[x] = uinv[h[x]];
    h.swap(tmp);
  }
  return levels_.size();
}

StabChain StabChain::build(std::size_t degree, std::span<const Permutation> generators,
                           const Options& options) {
  StabChain chain;
  chain.degree_ = degree;
  chain.budget_ = options.memory_budget_bytes;
  std::vector<bool> in_base(degree, false);
  for (Point p : options.base_prefix) {
    if (p >= degree) throw InputError("base prefix point out of range");
    if (in_base[p]) continue;
    in_base[p] = true;
    chain.push_level(p);
  }

  auto place = [&](std::vector<Point> images) {
    // Lowest level index whose base point the element moves; create a new
    // level when it fixes every base point.
    std::size_t k = 0;
    while (k < chain.levels_.size() && images[chain.levels_[k].base] == chain.levels_[k].base) ++k;
    if (k == chain.levels_.size()) {
      auto moved = std::find_if(images.begin(), images.end(), [&, i = Point{0}](Point v) mutable {
        return v != i++;
      });
      chain.push_level(static_cast<Point>(moved - images.begin()));
    }
    chain.pool_.push_back(std::move(images));
    chain.add_generator(static_cast<std::uint32_t>(chain.pool_.size() - 1), 0, k);
  };

  for (const auto& g : generators) {
    if (g.degree() != degree) throw InputError("generator degree mismatch");
    if (g.is_identity()) continue;
    place(std::vector<Point>(g.images().begin(), g.images().end()));
  }

  if (options.order_upper_bound) {
    chain.random_phase(generators, *options.order_upper_bound);
    BigInt reached = chain.order();
    if (reached > *options.order_upper_bound) throw InternalError("group order exceeds the stated upper bound");
    if (reached == *options.order_upper_bound) return chain;
  }

  std::vector<Point> h(degree);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t li = chain.levels_.size(); li-- > 0 && !changed;) {
      for (std::size_t oi = 0; oi < chain.levels_[li].orbit.size() && !changed; ++oi) {
        while (chain.levels_[li].checked[oi] < chain.levels_[li].gens.size()) {
          Level& level = chain.levels_[li];
          std::uint32_t gi = level.gens[level.checked[oi]++];
          const auto& s = chain.pool_[gi];
          const auto& ub = level.u[oi];
          const auto& uginv = level.uinv[static_cast<std::size_t>(level.slot[s[level.orbit[oi]]])];
          for (std::size_t x = 0; x < degree; ++x) h[x] = uginv[s[ub[x]]];
          if (is_identity(h)) continue;
          std::size_t fail = chain.sift(h, li + 1);
          if (fail == chain.levels_.size()) {
            if (is_identity(h)) continue;
            auto moved = std::find_if(h.begin(), h.end(), [i = Point{0}](Point v) mutable {
              return v != i++;
            });
            chain.push_level(static_cast<Point>(moved - h.begin()));
            fail = chain.levels_.size() - 1;
          }
          chain.pool_.push_back(h);
          chain.add_generator(static_cast<std::uint32_t>(chain.pool_.size() - 1), li + 1, fail);
          changed = true;
          break;
        }
      }
    }
  }
  return chain;
}

std::vector<Point> StabChain::base() const {
  std::vector<Point> b;
  b.reserve(levels_.size());
  for (const auto& level : levels_) b.push_back(level.base);
  return b;
}

BigInt StabChain::order() const {
  BigInt r = 1;
  for (const auto& level : levels_) r *= level.orbit.size();
  return r;
}

bool StabChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  std::vector<Point> h(g.images().begin(), g.images().end());
  return sift(h, 0) == levels_.size() && is_identity(h);
}

std::vector<Permutation> StabChain::generators_at(std::size_t level) const {
  std::vector<Permutation> out;
  if (level >= levels_.size()) return out;
  for (auto gi : levels_[level].gens) out.push_back(Permutation::unchecked(pool_[gi]));
  return out;
}

Permutation StabChain::random_element(std::mt19937_64& rng) const {
  std::vector<Point> r(degree_);
  std::iota(r.begin(), r.end(), Point{0});
  std::vector<Point> tmp(degree_);
  for (std::size_t li = levels_.size(); li-- > 0;) {
    const Level& level = levels_[li];
    std::uniform_int_distribution<std::size_t> pick(0, level.orbit.size() - 1);
    const auto& u = level.u[pick(rng)];
    for (std::size_t x = 0; x < degree_; ++x) tmp[x] = u[r[x]];
    r.swap(tmp);
  }
  return Permutation::unchecked(std::move(r));
}

}  // namespace hurwitz
