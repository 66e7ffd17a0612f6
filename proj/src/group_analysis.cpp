#include "hurwitz/group_analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <omp.h>

#include "hurwitz/errors.hpp"

namespace hurwitz {

std::string to_string(PseudosimpleFailure reason) {
  switch (reason) {
    case PseudosimpleFailure::kNone: return "none";
    case PseudosimpleFailure::kCenterNontrivial: return "center nontrivial";
    case PseudosimpleFailure::kDerivedNotPowerOfSimple: return "derived group not a power of a simple group";
    case PseudosimpleFailure::kNonabelianQuotient: return "nonabelian proper quotient";
    case PseudosimpleFailure::kDerivedAbelian: return "derived group abelian";
  }
  return "unknown";
}

std::size_t derived_orbit_count(const FiniteGroup& group, const ConjugacyClass& cls) {
  ElementSet derived = derived_set(group);
  std::vector<ElemId> dgens = group.generators_of(derived);
  ElementSet seen(group.size());
  std::size_t orbits = 0;
  for (ElemId start : cls.members) {
    if (seen.contains(start)) continue;
    ++orbits;
    std::vector<ElemId> queue{start};
    seen.insert(start);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (ElemId d : dgens) {
        ElemId c = group.conj(queue[i], d);
        if (!seen.contains(c)) {
          seen.insert(c);
          queue.push_back(c);
        }
      }
    }
  }
  return orbits;
}

bool is_ambiguous(const FiniteGroup& group, const ConjugacyClass& cls) {
  return derived_orbit_count(group, cls) > 1;
}

bool centralizer_covers_abelianization(const FiniteGroup& group, const ConjugacyClass& cls) {
  Abelianization ab = abelianization(group);
  ElementSet z = centralizer_set(group, cls.representative_id);
  std::vector<bool> hit(ab.order, false);
  std::size_t count = 0;
  for (ElemId e : z.members()) {
    if (!hit[ab.label[e]]) {
      hit[ab.label[e]] = true;
      ++count;
    }
  }
  return count == ab.order;
}

namespace {

bool is_abelian(const FiniteGroup& group, std::span<const ElemId> gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (group.mul(gens[i], gens[j]) != group.mul(gens[j], gens[i])) return false;
    }
  }
  return true;
}

// Representatives of the orbits of `normalizers` acting by conjugation on `set`.
std::vector<ElemId> conjugation_orbit_reps(const FiniteGroup& group, const ElementSet& set,
                                           std::span<const ElemId> normalizers) {
  ElementSet seen(group.size());
  std::vector<ElemId> reps;
  for (ElemId start : set.members()) {
    if (seen.contains(start)) continue;
    reps.push_back(start);
    std::vector<ElemId> queue{start};
    seen.insert(start);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (ElemId h : normalizers) {
        ElemId c = group.conj(queue[i], h);
        if (!seen.contains(c)) {
          seen.insert(c);
          queue.push_back(c);
        }
      }
    }
  }
  return reps;
}

bool is_simple_nonabelian(const FiniteGroup& group, const ElementSet& sub) {
  std::vector<ElemId> gens = group.generators_of(sub);
  if (is_abelian(group, gens)) return false;
  for (ElemId y : conjugation_orbit_reps(group, sub, gens)) {
    if (y == FiniteGroup::identity()) continue;
    ElemId seed[] = {y};
    if (!(group.normal_closure(seed, gens) == sub)) return false;
  }
  return true;
}

}  // namespace

StructureVerdict is_pseudosimple(const FiniteGroup& group) {
  StructureVerdict verdict;
  if (center_set(group).count() > 1) {
    verdict.reason = PseudosimpleFailure::kCenterNontrivial;
    return verdict;
  }
  ElementSet derived = derived_set(group);
  std::vector<ElemId> dgens = group.generators_of(derived);
  if (derived.count() == 1 || is_abelian(group, dgens)) {
    verdict.reason = PseudosimpleFailure::kDerivedAbelian;
    return verdict;
  }
  for (const auto& cls : conjugacy_classes(group)) {
    if (cls.representative_id == FiniteGroup::identity()) continue;
    ElemId seed[] = {cls.representative_id};
    if (!derived.is_subset_of(group.normal_closure(seed, group.generators()))) {
      verdict.reason = PseudosimpleFailure::kNonabelianQuotient;
      return verdict;
    }
  }

  // G' perfect.
  std::vector<ElemId> comms;
  for (std::size_t i = 0; i < dgens.size(); ++i) {
    for (std::size_t j = i + 1; j < dgens.size(); ++j) comms.push_back(group.commutator(dgens[i], dgens[j]));
  }
  if (!(group.normal_closure(comms, dgens) == derived)) {
    verdict.reason = PseudosimpleFailure::kDerivedNotPowerOfSimple;
    return verdict;
  }

  // Minimal normal subgroups of G' among normal closures of single elements.
  std::vector<ElementSet> closures;
  for (ElemId x : conjugation_orbit_reps(group, derived, dgens)) {
    if (x == FiniteGroup::identity()) continue;
    ElemId seed[] = {x};
    ElementSet n = group.normal_closure(seed, dgens);
    if (std::find(closures.begin(), closures.end(), n) == closures.end()) closures.push_back(std::move(n));
  }
  std::vector<ElementSet> minimal;
  for (const auto& n : closures) {
    bool is_min = std::none_of(closures.begin(), closures.end(), [&](const ElementSet& m) {
      return !(m == n) && m.is_subset_of(n);
    });
    if (is_min) minimal.push_back(n);
  }
  std::vector<ElemId> join_gens;
  for (const auto& m : minimal) {
    if (!is_simple_nonabelian(group, m)) {
      verdict.reason = PseudosimpleFailure::kDerivedNotPowerOfSimple;
      return verdict;
    }
    auto g = group.generators_of(m);
    join_gens.insert(join_gens.end(), g.begin(), g.end());
  }
  if (!(group.closure(join_gens) == derived)) {
    verdict.reason = PseudosimpleFailure::kDerivedNotPowerOfSimple;
    return verdict;
  }
  // G permutes the factors transitively.
  std::vector<bool> reached(minimal.size(), false);
  std::vector<std::size_t> queue{0};
  reached[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    ElemId probe = group.generators_of(minimal[queue[i]]).front();
    for (ElemId s : group.generators()) {
      ElemId image = group.conj(probe, s);
      for (std::size_t k = 0; k < minimal.size(); ++k) {
        if (minimal[k].contains(image) && !reached[k]) {
          reached[k] = true;
          queue.push_back(k);
        }
      }
    }
  }
  if (queue.size() != minimal.size()) {
    verdict.reason = PseudosimpleFailure::kDerivedNotPowerOfSimple;
    return verdict;
  }
  verdict.pseudosimple = true;
  verdict.simple_factor_count = minimal.size();
  return verdict;
}

bool is_rational_class(const FiniteGroup& group, const ConjugacyClass& cls) {
  const std::uint32_t ord = cls.element_order;
  for (std::uint32_t k = 1; k < std::max<std::uint32_t>(ord, 2); ++k) {
    if (std::gcd(k, ord) != 1) continue;
    if (!cls.contains(group.pow(cls.representative_id, k))) return false;
  }
  return true;
}

std::vector<ElemId> small_generating_set(const FiniteGroup& group,
                                         std::span<const ConjugacyClass> classes) {
  if (group.size() == 1) return {};
  const std::size_t n = group.size();
  for (const auto& c : classes) {
    ElemId x[] = {c.representative_id};
    if (c.element_order == n && group.closure(x).count() == n) return {c.representative_id};
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = 0; j < classes.size(); ++j) {
      if (classes[i].element_order > 1 && classes[j].element_order > 1) pairs.emplace_back(i, j);
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
    return classes[a.first].size() * classes[a.second].size() <
           classes[b.first].size() * classes[b.second].size();
  });
  for (auto [i, j] : pairs) {
    ElemId x = classes[i].representative_id;
    for (ElemId y : classes[j].members) {
      ElemId gens[] = {x, y};
      if (group.closure(gens).count() == n) return {x, y};
    }
  }
  // Greedy reduction of the defining generators.
  std::vector<ElemId> gens = group.generators();
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<ElemId> trial = gens;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (group.closure(trial).count() == n) gens = trial;
  }
  return gens;
}

namespace {

struct CayleyTree {
  std::vector<ElemId> order;             // BFS order from the identity
  std::vector<ElemId> parent;            // by element
  std::vector<std::uint32_t> via;        // generator index used to reach element
};

CayleyTree cayley_tree(const FiniteGroup& group, std::span<const ElemId> gens) {
  CayleyTree t;
  t.parent.assign(group.size(), 0);
  t.via.assign(group.size(), 0);
  std::vector<bool> seen(group.size(), false);
  t.order.push_back(FiniteGroup::identity());
  seen[FiniteGroup::identity()] = true;
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      ElemId next = group.mul(t.order[i], gens[s]);
      if (!seen[next]) {
        seen[next] = true;
        t.parent[next] = t.order[i];
        t.via[next] = static_cast<std::uint32_t>(s);
        t.order.push_back(next);
      }
    }
  }
  return t;
}

// Extends generator images to a map on all of G; empty if not an automorphism.
std::vector<ElemId> extend_to_automorphism(const FiniteGroup& group, const CayleyTree& tree,
                                           std::span<const ElemId> gens,
                                           std::span<const ElemId> images) {
  const std::size_t n = group.size();
  std::vector<ElemId> map(n, 0);
  std::vector<bool> hit(n, false);
  map[FiniteGroup::identity()] = FiniteGroup::identity();
  hit[FiniteGroup::identity()] = true;
  for (std::size_t i = 1; i < tree.order.size(); ++i) {
    ElemId e = tree.order[i];
    ElemId image = group.mul(map[tree.parent[e]], images[tree.via[e]]);
    if (hit[image]) return {};
    hit[image] = true;
    map[e] = image;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      if (map[group.mul(static_cast<ElemId>(a), gens[s])] != group.mul(map[a], images[s])) return {};
    }
  }
  return map;
}

std::vector<std::uint32_t> class_lookup(const FiniteGroup& group,
                                        std::span<const ConjugacyClass> classes) {
  std::vector<std::uint32_t> of(group.size(), UINT32_MAX);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (ElemId e : classes[c].members) of[e] = static_cast<std::uint32_t>(c);
  }
  return of;
}

void finish_aut_group(const FiniteGroup& group, std::span<const ConjugacyClass> classes,
                      AutGroup& aut) {
  auto class_of = class_lookup(group, classes);
  std::set<std::vector<ElemId>> inner_images;
  for (std::size_t g = 0; g < group.size(); ++g) {
    std::vector<ElemId> imgs;
    for (ElemId x : aut.domain_generators) imgs.push_back(group.conj(x, static_cast<ElemId>(g)));
    inner_images.insert(std::move(imgs));
  }
  aut.inner_count = inner_images.size();
  aut.class_representatives.clear();
  for (const auto& c : classes) aut.class_representatives.push_back(c.representative_id);
  for (auto& a : aut.maps) {
    a.inner = inner_images.count(a.generator_images) > 0;
    a.class_action.resize(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
      a.class_action[c] = class_of[a.map[classes[c].representative_id]];
    }
  }
  std::sort(aut.maps.begin(), aut.maps.end(), [](const Automorphism& a, const Automorphism& b) {
    return a.generator_images < b.generator_images;
  });
  // Identity first.
  auto id = std::find_if(aut.maps.begin(), aut.maps.end(), [&](const Automorphism& a) {
    return a.generator_images == aut.domain_generators;
  });
  if (id != aut.maps.end()) std::rotate(aut.maps.begin(), id, id + 1);
}

}  // namespace

AutGroup automorphism_group(const FiniteGroup& group, std::span<const ConjugacyClass> classes) {
  AutGroup aut;
  aut.domain_generators = small_generating_set(group, classes);
  const auto& gens = aut.domain_generators;
  if (gens.empty()) {
    Automorphism id;
    id.map = {FiniteGroup::identity()};
    aut.maps.push_back(std::move(id));
    finish_aut_group(group, classes, aut);
    return aut;
  }
  auto class_of = class_lookup(group, classes);
  CayleyTree tree = cayley_tree(group, gens);

  // Candidate images: same element order and class size.
  std::vector<std::vector<ElemId>> candidates(gens.size());
  for (std::size_t s = 0; s < gens.size(); ++s) {
    const auto& home = classes[class_of[gens[s]]];
    for (const auto& c : classes) {
      if (c.element_order == home.element_order && c.size() == home.size()) {
        candidates[s].insert(candidates[s].end(), c.members.begin(), c.members.end());
      }
    }
  }
  const auto& first = candidates[0];
  std::vector<std::vector<Automorphism>> found(first.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < first.size(); ++k) {
    std::vector<ElemId> images(gens.size());
    images[0] = first[k];
    // Depth-first over the remaining generators.
    auto recurse = [&](auto&& self, std::size_t s) -> void {
      if (s == gens.size()) {
        auto map = extend_to_automorphism(group, tree, gens, images);
        if (!map.empty()) {
          Automorphism a;
          a.generator_images = images;
          a.map = std::move(map);
          found[k].push_back(std::move(a));
        }
        return;
      }
      for (ElemId cand : candidates[s]) {
        images[s] = cand;
        bool ok = true;
        for (std::size_t a = 0; a < s && ok; ++a) {
          ok = group.order_of(group.mul(images[a], cand)) ==
               group.order_of(group.mul(gens[a], gens[s]));
        }
        if (ok) self(self, s + 1);
      }
    };
    recurse(recurse, 1);
  }
  for (auto& chunk : found) {
    for (auto& a : chunk) aut.maps.push_back(std::move(a));
  }
  finish_aut_group(group, classes, aut);
  return aut;
}

AutGroup aut_fixing_classes(const AutGroup& aut, std::span<const ConjugacyClass> classes) {
  std::vector<std::size_t> idx;
  for (const auto& c : classes) {
    auto it = std::find(aut.class_representatives.begin(), aut.class_representatives.end(),
                        c.representative_id);
    if (it == aut.class_representatives.end()) {
      throw InputError("class does not belong to the group of this automorphism group");
    }
    idx.push_back(static_cast<std::size_t>(it - aut.class_representatives.begin()));
  }
  AutGroup out;
  out.domain_generators = aut.domain_generators;
  out.class_representatives = aut.class_representatives;
  out.inner_count = aut.inner_count;
  for (const auto& a : aut.maps) {
    bool fixes = std::all_of(idx.begin(), idx.end(), [&](std::size_t c) { return a.class_action[c] == c; });
    if (fixes) out.maps.push_back(a);
  }
  return out;
}

AutGroup inner_automorphisms(const FiniteGroup& group, std::span<const ConjugacyClass> classes) {
  AutGroup aut;
  aut.domain_generators = small_generating_set(group, classes);
  std::set<std::vector<ElemId>> seen;
  for (std::size_t g = 0; g < group.size(); ++g) {
    Automorphism a;
    for (ElemId x : aut.domain_generators) a.generator_images.push_back(group.conj(x, static_cast<ElemId>(g)));
    if (!seen.insert(a.generator_images).second) continue;
    a.map.resize(group.size());
    for (std::size_t e = 0; e < group.size(); ++e) {
      a.map[e] = group.conj(static_cast<ElemId>(e), static_cast<ElemId>(g));
    }
    aut.maps.push_back(std::move(a));
  }
  finish_aut_group(group, classes, aut);
  return aut;
}

}  // namespace hurwitz
