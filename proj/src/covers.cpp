#include "hurwitz/covers.hpp"

#include <algorithm>
#include <numeric>

#include "hurwitz/errors.hpp"
#include "hurwitz/fiber.hpp"

namespace hurwitz {

KernelElem CentralExtension::kernel_index(ElemId cover_elem) const {
  std::int32_t k = kernel_pos[cover_elem];
  if (k < 0) throw InternalError("element is not in the kernel");
  return static_cast<KernelElem>(k);
}

KernelElem CentralExtension::kernel_mul(KernelElem a, KernelElem b) const {
  return kernel_index(cover->mul(kernel[a], kernel[b]));
}

namespace {

std::vector<ElemId> ids_of(const FiniteGroup& group, std::span<const Permutation> perms) {
  std::vector<ElemId> ids;
  for (const auto& p : perms) ids.push_back(group.id_of(p));
  return ids;
}

std::vector<KernelElem> to_kernel_indices(const CentralExtension& e, const ElementSet& set) {
  std::vector<KernelElem> out;
  for (ElemId c : set.members()) out.push_back(e.kernel_index(c));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Orbits of conjugation by `by` on `set`; returns the number of orbits.
std::size_t conjugation_orbit_count(const FiniteGroup& group, const std::vector<ElemId>& set,
                                    std::span<const ElemId> by) {
  ElementSet seen(group.size());
  std::size_t orbits = 0;
  for (ElemId start : set) {
    if (seen.contains(start)) continue;
    ++orbits;
    std::vector<ElemId> queue{start};
    seen.insert(start);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (ElemId h : by) {
        ElemId c = group.conj(queue[i], h);
        if (!seen.contains(c)) {
          seen.insert(c);
          queue.push_back(c);
        }
      }
    }
  }
  return orbits;
}

std::vector<ElemId> conjugacy_orbit(const FiniteGroup& group, ElemId start) {
  ElementSet seen(group.size());
  std::vector<ElemId> queue{start};
  seen.insert(start);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (ElemId h : group.generators()) {
      ElemId c = group.conj(queue[i], h);
      if (!seen.contains(c)) {
        seen.insert(c);
        queue.push_back(c);
      }
    }
  }
  return queue;
}

std::vector<ElemId> preimage_of_class(const CentralExtension& e, const ConjugacyClass& cls) {
  std::vector<ElemId> out;
  for (ElemId m : cls.members) {
    const auto& pre = e.preimages[m];
    out.insert(out.end(), pre.begin(), pre.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CentralExtension load_extension(std::vector<Permutation> cover_generators,
                                std::vector<Permutation> image_generators,
                                std::shared_ptr<const FiniteGroup> base, std::size_t element_cap) {
  if (!base) throw InputError("cover: no base group");
  if (cover_generators.size() != image_generators.size()) {
    throw InputError("cover: generator lists have different lengths");
  }
  if (cover_generators.empty()) throw InputError("cover: no generators");
  const std::size_t degree = cover_generators.front().degree();
  for (const auto& g : cover_generators) {
    if (g.degree() != degree) throw InputError("cover: generators have different degrees");
  }
  CentralExtension e;
  e.base = base;
  e.cover = std::make_shared<FiniteGroup>(FiniteGroup::materialize(PermGroup(degree, cover_generators), element_cap));
  std::vector<ElemId> image_ids;
  for (const auto& img : image_generators) {
    if (img.degree() != base->degree()) throw InputError("cover: image generator has the wrong degree");
    auto id = base->find(img);
    if (!id) throw InputError("cover: image generator " + img.to_cycles() + " is not in the base group");
    image_ids.push_back(*id);
  }
  std::vector<ElemId> gen_ids = ids_of(*e.cover, cover_generators);

  const FiniteGroup& cover = *e.cover;
  constexpr ElemId kUnset = ~ElemId{0};
  e.projection.assign(cover.size(), kUnset);
  e.projection[FiniteGroup::identity()] = FiniteGroup::identity();
  std::vector<ElemId> queue{FiniteGroup::identity()};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    ElemId x = queue[q];
    for (std::size_t j = 0; j < gen_ids.size(); ++j) {
      ElemId y = cover.mul(x, gen_ids[j]);
      ElemId py = base->mul(e.projection[x], image_ids[j]);
      if (e.projection[y] == kUnset) {
        e.projection[y] = py;
        queue.push_back(y);
      } else if (e.projection[y] != py) {
        throw InputError("cover: projection is not a homomorphism");
      }
    }
  }

  e.preimages.assign(base->size(), {});
  for (ElemId c = 0; c < cover.size(); ++c) e.preimages[e.projection[c]].push_back(c);
  for (const auto& pre : e.preimages) {
    if (pre.empty()) throw InputError("cover: projection is not surjective");
  }
  e.kernel = e.preimages[FiniteGroup::identity()];
  e.kernel_pos.assign(cover.size(), -1);
  for (std::size_t k = 0; k < e.kernel.size(); ++k) e.kernel_pos[e.kernel[k]] = static_cast<std::int32_t>(k);

  for (ElemId z : e.kernel) {
    for (ElemId g : gen_ids) {
      if (cover.mul(z, g) != cover.mul(g, z)) throw InputError("cover: kernel not central");
    }
  }
  if (e.kernel.size() > 1) {
    ElementSet derived = derived_set(cover);
    for (ElemId z : e.kernel) {
      if (!derived.contains(z)) throw InputError("cover: kernel not contained in the derived subgroup (not a stem extension)");
    }
  }
  e.cover_generators = std::move(cover_generators);
  e.image_generators = std::move(image_generators);
  return e;
}

CentralExtension trivial_extension(std::shared_ptr<const FiniteGroup> base) {
  std::vector<Permutation> gens;
  for (ElemId g : base->generators()) gens.push_back(base->element(g));
  if (gens.empty()) gens.push_back(Permutation(base->degree()));
  return load_extension(gens, gens, base);
}

KernelElem commutator_pairing(const CentralExtension& e, ElemId x, ElemId y) {
  const FiniteGroup& base = *e.base;
  if (base.mul(x, y) != base.mul(y, x)) throw InputError("commutator pairing needs commuting elements");
  return e.kernel_index(e.cover->commutator(e.lift(x), e.lift(y)));
}

std::vector<KernelElem> class_pairings(const CentralExtension& e, ElemId g, bool derived_only) {
  ElementSet z = centralizer_set(*e.base, g);
  ElementSet derived = derived_only ? derived_set(*e.base) : ElementSet();
  std::vector<ElemId> values;
  for (ElemId c : z.members()) {
    if (derived_only && !derived.contains(c)) continue;
    values.push_back(e.kernel[commutator_pairing(e, g, c)]);
  }
  return to_kernel_indices(e, e.cover->closure(values));
}

ObstructionSubgroups obstruction_subgroups(const CentralExtension& e, std::span<const ConjugacyClass> classes) {
  ObstructionSubgroups out;
  std::vector<ElemId> unprimed{FiniteGroup::identity()};
  std::vector<ElemId> primed{FiniteGroup::identity()};
  for (const auto& cls : classes) {
    for (KernelElem k : class_pairings(e, cls.representative_id, false)) unprimed.push_back(e.kernel[k]);
    for (KernelElem k : class_pairings(e, cls.representative_id, true)) primed.push_back(e.kernel[k]);
  }
  out.unprimed = to_kernel_indices(e, e.cover->closure(unprimed));
  out.primed = to_kernel_indices(e, e.cover->closure(primed));
  for (const auto& cls : classes) {
    if (out.witness) break;
    ElemId g = cls.representative_id;
    for (ElemId z : centralizer_set(*e.base, g).members()) {
      KernelElem v = commutator_pairing(e, g, z);
      if (!std::binary_search(out.primed.begin(), out.primed.end(), v)) {
        out.witness = PairingWitness{g, z, v};
        break;
      }
    }
  }
  return out;
}

CentralExtension quotient_by_kernel_subgroup(const CentralExtension& e, std::span<const KernelElem> sub) {
  if (sub.size() <= 1) return e;
  const FiniteGroup& cover = *e.cover;
  const std::size_t target = cover.size() / sub.size();
  std::vector<ElemId> k_ids;
  for (KernelElem k : sub) k_ids.push_back(e.kernel[k]);

  // First try the action on the K-orbits of points.
  const std::size_t degree = cover.degree();
  std::vector<std::int64_t> block(degree, -1);
  std::size_t blocks = 0;
  for (Point x = 0; x < degree; ++x) {
    if (block[x] >= 0) continue;
    for (ElemId k : k_ids) block[cover.element(k)[x]] = static_cast<std::int64_t>(blocks);
    ++blocks;
  }
  std::vector<Permutation> on_blocks;
  for (const auto& g : e.cover_generators) {
    std::vector<Point> img(blocks);
    for (Point x = 0; x < degree; ++x) img[static_cast<std::size_t>(block[x])] = static_cast<Point>(block[g[x]]);
    on_blocks.push_back(Permutation(std::move(img)));
  }
  std::vector<Permutation> new_gens;
  if (PermGroup(blocks, on_blocks).order() == target) {
    new_gens = std::move(on_blocks);
  } else {
    // Regular action on the cosets xK.
    std::vector<std::int64_t> coset(cover.size(), -1);
    std::size_t cosets = 0;
    for (ElemId x = 0; x < cover.size(); ++x) {
      if (coset[x] >= 0) continue;
      for (ElemId k : k_ids) coset[cover.mul(x, k)] = static_cast<std::int64_t>(cosets);
      ++cosets;
    }
    std::vector<ElemId> first(cosets);
    for (ElemId x = cover.size(); x-- > 0;) first[static_cast<std::size_t>(coset[x])] = x;
    for (const auto& g : e.cover_generators) {
      ElemId gid = cover.id_of(g);
      std::vector<Point> img(cosets);
      for (std::size_t c = 0; c < cosets; ++c) img[c] = static_cast<Point>(coset[cover.mul(first[c], gid)]);
      new_gens.push_back(Permutation(std::move(img)));
    }
  }
  return load_extension(std::move(new_gens), e.image_generators, e.base);
}

std::size_t lifted_class_count(const CentralExtension& e, const ConjugacyClass& cls) {
  return conjugation_orbit_count(*e.cover, preimage_of_class(e, cls), e.cover->generators());
}

CentralExtension reduce_cover(const CentralExtension& e, std::span<const ConjugacyClass> classes) {
  ObstructionSubgroups obs = obstruction_subgroups(e, classes);
  CentralExtension r = quotient_by_kernel_subgroup(e, obs.unprimed);
  if (r.kernel_order() * obs.unprimed.size() != e.kernel_order()) {
    throw InternalError("reduced cover has the wrong kernel order");
  }
  for (const auto& cls : classes) {
    if (lifted_class_count(r, cls) != r.kernel_order()) {
      throw InternalError("class " + cls.representative.to_cycles() + " does not split in the reduced cover");
    }
  }
  return r;
}

std::string to_string(ClassKindTag kind) {
  switch (kind) {
    case ClassKindTag::kSplit: return "split";
    case ClassKindTag::kMixed: return "mixed";
    case ClassKindTag::kInert: return "inert";
    case ClassKindTag::kAmbiguous: return "ambiguous";
  }
  return "unknown";
}

std::size_t require_split_pp(const CentralExtension& e) {
  Abelianization ab = abelianization(*e.base);
  if (!is_prime(ab.order)) {
    throw UnsupportedError("not split-p-p: |G^ab| = " + std::to_string(ab.order) + " is not prime");
  }
  if (e.kernel_order() != ab.order) {
    throw UnsupportedError("not split-p-p: |Z| = " + std::to_string(e.kernel_order()) +
                           " differs from |G^ab| = " + std::to_string(ab.order));
  }
  if (!abelianization_splits(*e.base, ab)) throw UnsupportedError("not split-p-p: G -> G^ab does not split");
  return ab.order;
}

ClassKind classify_class(const CentralExtension& e, const ConjugacyClass& cls) {
  std::size_t p = require_split_pp(e);
  ClassKind out;
  if (is_ambiguous(*e.base, cls)) {
    out.kind = ClassKindTag::kAmbiguous;
    return out;
  }
  std::vector<ElemId> pre = preimage_of_class(e, cls);
  out.lifted_class_count = conjugation_orbit_count(*e.cover, pre, e.cover->generators());
  std::vector<ElemId> dgens = e.cover->generators_of(derived_set(*e.cover));
  out.derived_orbit_count = conjugation_orbit_count(*e.cover, pre, dgens);
  if (out.lifted_class_count == p) {
    out.kind = ClassKindTag::kSplit;
  } else if (out.lifted_class_count == 1 && out.derived_orbit_count == p) {
    out.kind = ClassKindTag::kMixed;
  } else {
    out.kind = ClassKindTag::kInert;
  }
  return out;
}

ConditionE condition_e(const CentralExtension& e, std::span<const ConjugacyClass> classes) {
  for (const auto& cls : classes) {
    if (is_ambiguous(*e.base, cls)) {
      throw UnsupportedError("condition E: class " + cls.representative.to_cycles() + " is ambiguous");
    }
  }
  StructureVerdict v = is_pseudosimple(*e.base);
  if (!v.pseudosimple) throw UnsupportedError("condition E: group is not pseudosimple (" + to_string(v.reason) + ")");
  Abelianization ab = abelianization(*e.base);
  if (!ab.is_cyclic() || !abelianization_splits(*e.base, ab)) {
    throw UnsupportedError("condition E: abelianization is not split cyclic");
  }
  ConditionE out;
  out.subgroups = obstruction_subgroups(e, classes);
  out.holds = out.subgroups.unprimed == out.subgroups.primed;
  out.witness = out.subgroups.witness;
  return out;
}

bool condition_e_by_classification(const CentralExtension& e, std::span<const ConjugacyClass> classes) {
  bool inert = false;
  bool mixed = false;
  for (const auto& cls : classes) {
    ClassKind k = classify_class(e, cls);
    if (k.kind == ClassKindTag::kAmbiguous) {
      throw UnsupportedError("condition E: class " + cls.representative.to_cycles() + " is ambiguous");
    }
    inert = inert || k.kind == ClassKindTag::kInert;
    mixed = mixed || k.kind == ClassKindTag::kMixed;
  }
  return !(mixed && !inert);
}

LiftingInvariant::LiftingInvariant(const CentralExtension& reduced, const HurwitzParameter& h)
    : cover_(reduced.cover), kernel_pos_(reduced.kernel_pos), position_class_(h.position_class()),
      kernel_order_(reduced.kernel_order()) {
  const FiniteGroup& base = *reduced.base;
  if (base.size() != h.group->size()) throw InputError("cover base group does not match the parameter's group");
  lifts_.assign(h.classes.size(), std::vector<ElemId>(h.group->size(), 0));
  for (std::size_t i = 0; i < h.classes.size(); ++i) {
    const auto& cls = h.classes[i];
    ElemId rep = base.id_of(cls.representative);
    std::vector<ElemId> star = conjugacy_orbit(*cover_, reduced.lift(rep));
    std::vector<ElemId> hits(base.size(), 0);
    std::vector<std::size_t> count(base.size(), 0);
    for (ElemId c : star) {
      ElemId b = reduced.projection[c];
      hits[b] = c;
      ++count[b];
    }
    for (ElemId m : cls.members) {
      ElemId b = base.id_of(h.group->element(m));
      if (count[b] != 1) {
        throw InputError("extension is not reduced for the class list: " + cls.representative.to_cycles() +
                         " has " + std::to_string(count[b]) + " preimages in its chosen lifted class");
      }
      lifts_[i][m] = hits[b];
    }
  }
}

KernelElem LiftingInvariant::label(std::span<const ElemId> tuple) const {
  ElemId p = FiniteGroup::identity();
  for (std::size_t k = 0; k < tuple.size(); ++k) p = cover_->mul(p, lifts_[position_class_[k]][tuple[k]]);
  std::int32_t pos = kernel_pos_[p];
  if (pos < 0) throw InternalError("lifted product is outside the kernel");
  return static_cast<KernelElem>(pos);
}

LabelAction out_action_on_labels(const LiftingInvariant& inv, const Fiber& fiber, const AutGroup& aut_gc) {
  const std::size_t size = fiber.size();
  const std::size_t n = fiber.n();
  std::vector<KernelElem> labels(size);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < size; ++i) labels[i] = inv.label(fiber.point(i));

  LabelAction out;
  out.realized = labels;
  std::sort(out.realized.begin(), out.realized.end());
  out.realized.erase(std::unique(out.realized.begin(), out.realized.end()), out.realized.end());
  auto slot = [&](KernelElem l) {
    return static_cast<std::size_t>(std::lower_bound(out.realized.begin(), out.realized.end(), l) - out.realized.begin());
  };

  constexpr KernelElem kUnset = ~KernelElem{0};
  for (const auto& a : aut_gc.maps) {
    std::vector<KernelElem> img(out.realized.size(), kUnset);
    std::vector<ElemId> t(n);
    for (std::size_t i = 0; i < size; ++i) {
      auto p = fiber.point(i);
      for (std::size_t k = 0; k < n; ++k) t[k] = a.map[p[k]];
      KernelElem l = inv.label(t);
      KernelElem& slot_img = img[slot(labels[i])];
      if (slot_img == kUnset) {
        slot_img = l;
      } else if (slot_img != l) {
        throw InternalError("automorphism does not induce a map on lifting labels");
      }
    }
    out.images.push_back(std::move(img));
  }

  std::vector<std::size_t> parent(out.realized.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& img : out.images) {
    for (std::size_t s = 0; s < img.size(); ++s) {
      std::size_t a = find(s);
      std::size_t b = find(slot(img[s]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::vector<KernelElem>> groups;
  for (std::size_t s = 0; s < out.realized.size(); ++s) groups[find(s)].push_back(out.realized[s]);
  for (auto& [root, members] : groups) out.orbits.push_back(std::move(members));

  std::size_t inner = std::max<std::size_t>(aut_gc.inner_count, 1);
  for (std::size_t s = 0; s < out.realized.size(); ++s) {
    std::size_t fixed = 0;
    for (const auto& img : out.images) fixed += img[s] == out.realized[s] ? 1 : 0;
    out.out_stabilizer[out.realized[s]] = fixed / inner;
  }
  return out;
}

}  // namespace hurwitz
