#include "hurwitz/finite_group.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <tuple>

#include "hurwitz/errors.hpp"

namespace hurwitz {

std::size_t ElementSet::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<ElemId> ElementSet::members() const {
  std::vector<ElemId> out;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word != 0) {
      int b = std::countr_zero(word);
      out.push_back(static_cast<ElemId>(w * 64 + static_cast<std::size_t>(b)));
      word &= word - 1;
    }
  }
  return out;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    if ((bits_[w] & ~other.bits_[w]) != 0) return false;
  }
  return true;
}

std::uint64_t ElementSet::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto w : bits_) {
    h ^= w;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return h;
}

FiniteGroup FiniteGroup::materialize(const PermGroup& group, std::size_t cap) {
  BigInt order = group.order();
  if (order > cap) {
    throw ResourceError("group of order " + order.str() + " exceeds element cap " +
                        std::to_string(cap));
  }
  FiniteGroup g;
  g.group_ = group;
  const std::size_t n = static_cast<std::size_t>(order);

  std::vector<Permutation> gens;
  for (const auto& s : group.generators()) {
    if (!s.is_identity()) gens.push_back(s);
  }

  // Breadth-first closure; remember the tree so products can be tabulated.
  std::vector<Permutation> found{Permutation::identity(group.degree())};
  std::unordered_map<Permutation, ElemId, PermutationHash> seen;
  seen.emplace(found[0], 0);
  std::vector<ElemId> parent{0};
  std::vector<std::uint32_t> via{0};
  found.reserve(n);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Permutation next = found[i] * gens[s];
      if (seen.emplace(next, static_cast<ElemId>(found.size())).second) {
        found.push_back(std::move(next));
        parent.push_back(static_cast<ElemId>(i));
        via.push_back(static_cast<std::uint32_t>(s));
      }
    }
  }
  if (found.size() != n) throw InternalError("closure size disagrees with stabilizer chain order");

  // Renumber in lexicographic order.
  std::vector<ElemId> by_lex(n);
  std::iota(by_lex.begin(), by_lex.end(), ElemId{0});
  std::sort(by_lex.begin(), by_lex.end(), [&](ElemId a, ElemId b) { return found[a] < found[b]; });
  std::vector<ElemId> new_id(n);
  for (std::size_t k = 0; k < n; ++k) new_id[by_lex[k]] = static_cast<ElemId>(k);

  g.elements_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) g.elements_.push_back(found[by_lex[k]]);
  for (std::size_t k = 0; k < n; ++k) g.index_.emplace(g.elements_[k], static_cast<ElemId>(k));

  // Right multiplication by each generator.
  std::vector<std::vector<ElemId>> right(gens.size(), std::vector<ElemId>(n));
  for (std::size_t s = 0; s < gens.size(); ++s) {
    for (std::size_t k = 0; k < n; ++k) right[s][k] = g.index_.at(g.elements_[k] * gens[s]);
  }

  if (n <= kTableLimit) {
    g.table_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      ElemId* row = &g.table_[a * n];
      row[0] = static_cast<ElemId>(a);
      for (std::size_t bfs = 1; bfs < n; ++bfs) {
        ElemId b = new_id[bfs];
        ElemId p = new_id[parent[bfs]];
        row[b] = right[via[bfs]][row[p]];
      }
    }
  }

  g.inverse_.resize(n);
  g.orders_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    g.inverse_[k] = g.index_.at(g.elements_[k].inverse());
    g.orders_[k] = static_cast<std::uint32_t>(g.elements_[k].order());
  }
  for (const auto& s : gens) g.generator_ids_.push_back(g.index_.at(s));
  return g;
}

std::optional<ElemId> FiniteGroup::find(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElemId FiniteGroup::id_of(const Permutation& p) const {
  auto id = find(p);
  if (!id) throw InputError("permutation " + p.to_cycles() + " is not an element of the group");
  return *id;
}

ElemId FiniteGroup::mul_slow(ElemId a, ElemId b) const {
  return index_.at(elements_[a] * elements_[b]);
}

ElemId FiniteGroup::pow(ElemId a, std::int64_t e) const {
  ElemId base = e < 0 ? inv(a) : a;
  std::uint64_t k = static_cast<std::uint64_t>(e < 0 ? -e : e) % orders_[a];
  ElemId r = identity();
  while (k > 0) {
    if (k & 1U) r = mul(r, base);
    base = mul(base, base);
    k >>= 1U;
  }
  return r;
}

ElementSet FiniteGroup::closure(std::span<const ElemId> gens) const {
  ElementSet set(size());
  std::vector<ElemId> queue{identity()};
  set.insert(identity());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (ElemId s : gens) {
      ElemId next = mul(queue[i], s);
      if (!set.contains(next)) {
        set.insert(next);
        queue.push_back(next);
      }
    }
  }
  return set;
}

ElementSet FiniteGroup::normal_closure(std::span<const ElemId> seeds,
                                       std::span<const ElemId> normalizers) const {
  std::vector<ElemId> gens;
  for (ElemId s : seeds) {
    if (s != identity()) gens.push_back(s);
  }
  ElementSet current = closure(gens);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (ElemId h : normalizers) {
      ElemId c = conj(gens[i], h);
      if (!current.contains(c)) {
        gens.push_back(c);
        current = closure(gens);
      }
    }
  }
  return current;
}

std::vector<ElemId> FiniteGroup::generators_of(const ElementSet& subgroup) const {
  std::vector<ElemId> gens;
  ElementSet current = closure(gens);
  // Largest element orders first keeps the generating set short.
  std::vector<ElemId> members = subgroup.members();
  std::stable_sort(members.begin(), members.end(),
                   [&](ElemId a, ElemId b) { return orders_[a] > orders_[b]; });
  for (ElemId e : members) {
    if (current.count() == subgroup.count()) break;
    if (!current.contains(e)) {
      gens.push_back(e);
      current = closure(gens);
    }
  }
  return gens;
}

ElementSet FiniteGroup::all() const {
  ElementSet set(size());
  for (std::size_t e = 0; e < size(); ++e) set.insert(static_cast<ElemId>(e));
  return set;
}

PermGroup FiniteGroup::subgroup(std::span<const ElemId> gens) const {
  std::vector<Permutation> perms;
  for (ElemId e : gens) perms.push_back(elements_[e]);
  return PermGroup(degree(), std::move(perms));
}

bool ConjugacyClass::contains(ElemId e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

std::vector<Permutation> ConjugacyClass::elements(const FiniteGroup& group) const {
  std::vector<Permutation> out;
  out.reserve(members.size());
  for (ElemId e : members) out.push_back(group.element(e));
  return out;
}

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& group) {
  std::vector<bool> done(group.size(), false);
  std::vector<ConjugacyClass> classes;
  for (std::size_t start = 0; start < group.size(); ++start) {
    if (done[start]) continue;
    std::vector<ElemId> orbit{static_cast<ElemId>(start)};
    done[start] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (ElemId g : group.generators()) {
        ElemId c = group.conj(orbit[i], g);
        if (!done[c]) {
          done[c] = true;
          orbit.push_back(c);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    ConjugacyClass cls;
    cls.representative_id = orbit.front();
    cls.representative = group.element(orbit.front());
    cls.element_order = group.order_of(orbit.front());
    cls.members = std::move(orbit);
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
    return std::tuple(a.element_order, a.size(), a.representative_id) <
           std::tuple(b.element_order, b.size(), b.representative_id);
  });
  return classes;
}

std::size_t class_index_of(std::span<const ConjugacyClass> classes, ElemId e) {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].contains(e)) return i;
  }
  throw InputError("element is not in any listed class");
}

ElementSet centralizer_set(const FiniteGroup& group, ElemId g) {
  ElementSet set(group.size());
  for (std::size_t z = 0; z < group.size(); ++z) {
    auto e = static_cast<ElemId>(z);
    if (group.mul(g, e) == group.mul(e, g)) set.insert(e);
  }
  return set;
}

PermGroup centralizer(const FiniteGroup& group, const Permutation& g) {
  ElemId id = group.id_of(g);
  ElementSet z = centralizer_set(group, id);
  return group.subgroup(group.generators_of(z));
}

ElementSet center_set(const FiniteGroup& group) {
  ElementSet set(group.size());
  for (std::size_t z = 0; z < group.size(); ++z) {
    auto e = static_cast<ElemId>(z);
    bool central = std::all_of(group.generators().begin(), group.generators().end(),
                               [&](ElemId s) { return group.mul(s, e) == group.mul(e, s); });
    if (central) set.insert(e);
  }
  return set;
}

ElementSet derived_set(const FiniteGroup& group) {
  std::vector<ElemId> seeds;
  const auto& gens = group.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) seeds.push_back(group.commutator(gens[i], gens[j]));
  }
  return group.normal_closure(seeds, gens);
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

Abelianization abelianization(const FiniteGroup& group) {
  Abelianization ab;
  ElementSet derived = derived_set(group);
  std::vector<ElemId> d = derived.members();
  ab.label.assign(group.size(), UINT32_MAX);
  std::vector<ElemId> reps;
  for (std::size_t e = 0; e < group.size(); ++e) {
    if (ab.label[e] != UINT32_MAX) continue;
    auto c = static_cast<std::uint32_t>(reps.size());
    reps.push_back(static_cast<ElemId>(e));
    for (ElemId x : d) ab.label[group.mul(static_cast<ElemId>(e), x)] = c;
  }
  ab.order = reps.size();
  ab.table.resize(ab.order * ab.order);
  for (std::size_t a = 0; a < ab.order; ++a) {
    for (std::size_t b = 0; b < ab.order; ++b) {
      ab.table[a * ab.order + b] = ab.label[group.mul(reps[a], reps[b])];
    }
  }

  // Invariant factors from the counts of elements killed by p^k.
  auto power = [&](std::uint32_t x, std::uint64_t e) {
    std::uint32_t r = 0;
    for (std::uint64_t i = 0; i < e; ++i) r = ab.mul(r, x);
    return r;
  };
  std::map<std::uint64_t, std::vector<std::uint64_t>> exponents;  // prime -> sorted desc
  for (std::uint64_t p : prime_factors(ab.order)) {
    std::vector<std::size_t> ranks;  // ranks[k-1] = #factors with p-exponent >= k
    std::size_t prev = 1;
    std::uint64_t pk = p;
    while (true) {
      std::size_t killed = 0;
      for (std::uint32_t x = 0; x < ab.order; ++x) killed += power(x, pk) == 0 ? 1 : 0;
      if (killed == prev) break;
      std::size_t ratio = killed / prev;
      std::size_t r = 0;
      while (ratio > 1) {
        ratio /= p;
        ++r;
      }
      ranks.push_back(r);
      prev = killed;
      pk *= p;
    }
    std::vector<std::uint64_t> ex;
    for (std::size_t i = 0; i < (ranks.empty() ? 0 : ranks[0]); ++i) {
      std::uint64_t k = 0;
      while (k < ranks.size() && ranks[k] > i) ++k;
      ex.push_back(k);
    }
    exponents[p] = ex;
  }
  std::size_t t = 0;
  for (auto& [p, ex] : exponents) t = std::max(t, ex.size());
  for (std::size_t j = 0; j < t; ++j) {
    std::uint64_t dj = 1;
    for (auto& [p, ex] : exponents) {
      if (j < ex.size()) {
        for (std::uint64_t k = 0; k < ex[j]; ++k) dj *= p;
      }
    }
    ab.invariants.push_back(dj);
  }
  std::reverse(ab.invariants.begin(), ab.invariants.end());
  return ab;
}

bool abelianization_splits(const FiniteGroup& group, const Abelianization& ab) {
  if (ab.order == 1) return true;
  if (!ab.is_cyclic()) {
    throw UnsupportedError("splitting test is implemented for cyclic abelianizations only");
  }
  auto image_order = [&](std::uint32_t x) {
    std::uint32_t r = x;
    std::size_t k = 1;
    while (r != 0) {
      r = ab.mul(r, x);
      ++k;
    }
    return k;
  };
  for (std::size_t e = 0; e < group.size(); ++e) {
    if (group.order_of(static_cast<ElemId>(e)) == ab.order &&
        image_order(ab.label[e]) == ab.order) {
      return true;
    }
  }
  return false;
}

}  // namespace hurwitz
