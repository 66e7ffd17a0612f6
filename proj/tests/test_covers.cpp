#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hurwitz/braid.hpp"
#include "hurwitz/covers.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/fiber.hpp"
#include "test_support.hpp"

using namespace hurwitz;
namespace ts = testing_support;

namespace {

Permutation cyc(const char* text, std::size_t n) { return Permutation::from_cycles(text, n); }

// Class type of S_d read off the partition (1s included).
ClassKindTag table_kind(std::vector<std::size_t> parts, std::size_t degree) {
  std::size_t sum = 0;
  for (auto p : parts) sum += p;
  for (; sum < degree; ++sum) parts.push_back(1);
  std::size_t even = std::count_if(parts.begin(), parts.end(), [](std::size_t p) { return p % 2 == 0; });
  std::set<std::size_t> distinct(parts.begin(), parts.end());
  bool all_distinct = distinct.size() == parts.size();
  if (all_distinct) {
    if (even == 0) return ClassKindTag::kAmbiguous;
    return even % 2 == 0 ? ClassKindTag::kMixed : ClassKindTag::kSplit;
  }
  return even == 0 ? ClassKindTag::kSplit : ClassKindTag::kInert;
}

std::vector<std::size_t> parts_of(const Permutation& p) {
  auto ct = p.cycle_type();
  std::erase(ct, std::size_t{1});
  return ct;
}

// Cover classes and derived-subgroup orbits over a base class, by brute force
// on plain permutations.
struct BruteKind {
  std::size_t classes = 0;
  std::size_t derived_orbits = 0;
};

BruteKind brute_kind(const CentralExtension& e, const ConjugacyClass& cls, const std::vector<oracle::P>& cover_elems,
                     const std::vector<oracle::P>& cover_derived) {
  std::set<oracle::P> pre;
  for (ElemId c = 0; c < e.cover->size(); ++c) {
    if (cls.contains(e.projection[c])) pre.insert(cover_elems[c]);
  }
  auto count_orbits = [&](const std::vector<oracle::P>& acting) {
    std::set<oracle::P> seen;
    std::size_t orbits = 0;
    for (const auto& x : pre) {
      if (seen.count(x)) continue;
      ++orbits;
      for (const auto& h : acting) seen.insert(oracle::conj(x, h));
    }
    return orbits;
  };
  return {count_orbits(cover_elems), count_orbits(cover_derived)};
}

void check_against_brute_force(const CentralExtension& e) {
  std::vector<oracle::P> elems;
  for (ElemId c = 0; c < e.cover->size(); ++c) elems.push_back(ts::to_oracle(e.cover->element(c)));
  auto der = oracle::derived(elems);
  for (const auto& cls : conjugacy_classes(*e.base)) {
    auto k = classify_class(e, cls);
    if (k.kind == ClassKindTag::kAmbiguous) continue;
    auto b = brute_kind(e, cls, elems, der);
    EXPECT_EQ(k.lifted_class_count, b.classes) << cls.representative.to_cycles();
    EXPECT_EQ(k.derived_orbit_count, b.derived_orbits) << cls.representative.to_cycles();
    EXPECT_EQ(lifted_class_count(e, cls), b.classes);
  }
}

// The other double cover in the same isoclinism family: multiply the lift of
// each odd generator by a square root of the central involution, realized on
// two layers of the cover's points.
CentralExtension isoclinic_variant(const CentralExtension& e) {
  std::size_t d = e.cover->degree();
  ElemId zid = e.kernel.at(1);
  const Permutation& z = e.cover->element(zid);
  std::vector<Point> img(2 * d);
  for (Point v = 0; v < d; ++v) {
    img[v] = static_cast<Point>(v + d);
    img[v + d] = z[v];
  }
  Permutation root(img);
  auto doubled = [&](const Permutation& g) {
    std::vector<Point> out(2 * d);
    for (Point v = 0; v < d; ++v) {
      out[v] = g[v];
      out[v + d] = static_cast<Point>(g[v] + d);
    }
    return Permutation(out);
  };
  auto ab = abelianization(*e.base);
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < e.cover_generators.size(); ++i) {
    Permutation g = doubled(e.cover_generators[i]);
    ElemId b = e.base->id_of(e.image_generators[i]);
    if (ab.label[b] != 0) g = g * root;
    gens.push_back(g);
  }
  return load_extension(gens, e.image_generators, e.base);
}

}  // namespace

TEST(Extension, BundledCoversLoad) {
  struct Want {
    const char* file;
    std::size_t cover;
  };
  for (auto w : {Want{"SL25.json", 120}, Want{"2S5.json", 240}, Want{"2S6.json", 1440}, Want{"2PGL27.json", 672}}) {
    auto e = ts::cover(w.file);
    EXPECT_EQ(e.cover->size(), w.cover) << w.file;
    EXPECT_EQ(e.kernel_order(), 2U) << w.file;
    EXPECT_EQ(e.base->size() * 2, w.cover) << w.file;
    std::mt19937_64 rng(2);
    for (int i = 0; i < 300; ++i) {
      ElemId a = static_cast<ElemId>(rng() % e.cover->size()), b = static_cast<ElemId>(rng() % e.cover->size());
      ASSERT_EQ(e.projection[e.cover->mul(a, b)], e.base->mul(e.projection[a], e.projection[b]));
    }
  }
  auto triv = trivial_extension(ts::group("S5"));
  EXPECT_EQ(triv.kernel_order(), 1U);
}

TEST(Extension, RejectsBrokenCovers) {
  auto s3 = std::make_shared<FiniteGroup>(FiniteGroup::materialize(PermGroup::symmetric(3)));
  auto expect_error = [&](std::vector<Permutation> cg, std::vector<Permutation> ig, const std::string& needle) {
    try {
      load_extension(cg, ig, s3);
      ADD_FAILURE() << "expected " << needle;
    } catch (const InputError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  // S4 -> S3 through the three pairings: kernel V4 is not central.
  expect_error({cyc("(1 2)", 4), cyc("(1 2 3 4)", 4)}, {cyc("(2 3)", 3), cyc("(1 3)", 3)}, "kernel not central");
  expect_error({cyc("(1 2)", 3), cyc("(1 2 3)", 3)}, {cyc("(1 2 3)", 3), cyc("(1 2)", 3)}, "not a homomorphism");
  // S3 x C2 -> S3: the kernel is central but not in the derived subgroup.
  expect_error({cyc("(1 2)", 5), cyc("(1 2 3)", 5), cyc("(4 5)", 5)}, {cyc("(1 2)", 3), cyc("(1 2 3)", 3), cyc("()", 3)},
               "not a stem extension");
  expect_error({cyc("(1 2 3)", 3)}, {cyc("(1 2 3)", 3)}, "not surjective");
}

TEST(Pairing, Examples) {
  auto e = ts::cover("2S5.json");
  const auto& g = *e.base;
  ElemId x = g.id_of(cyc("(1 2)(3 4)", 5)), y = g.id_of(cyc("(1 3)(2 4)", 5));
  EXPECT_EQ(commutator_pairing(e, x, FiniteGroup::identity()), 0U);
  EXPECT_EQ(commutator_pairing(e, x, x), 0U);
  EXPECT_NE(commutator_pairing(e, x, y), 0U);
  EXPECT_THROW(commutator_pairing(e, x, g.id_of(cyc("(1 2 3)", 5))), InputError);
}

TEST(Pairing, IsBimultiplicativeOnCommutingPairs) {
  auto e = ts::cover("2S6.json");
  const auto& g = *e.base;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    ElemId x = static_cast<ElemId>(rng() % g.size());
    auto z = centralizer_set(g, x).members();
    ElemId a = z[rng() % z.size()], b = z[rng() % z.size()];
    EXPECT_EQ(commutator_pairing(e, x, g.mul(a, b)),
              e.kernel_mul(commutator_pairing(e, x, a), commutator_pairing(e, x, b)));
    EXPECT_EQ(commutator_pairing(e, x, a), commutator_pairing(e, a, x));  // Z has order 2
  }
}

TEST(Obstruction, Examples) {
  auto s5 = ts::group("S5");
  auto s5c = conjugacy_classes(*s5);
  auto e25 = ts::cover("2S5.json", s5);
  auto o = obstruction_subgroups(e25, std::vector<ConjugacyClass>{ts::class_by_type(s5c, {2})});
  EXPECT_EQ(o.unprimed.size(), 2U);
  EXPECT_EQ(o.primed.size(), 2U);

  auto a5 = ts::group("A5");
  auto a5c = conjugacy_classes(*a5);
  auto sl = ts::cover("SL25.json", a5);
  auto o3 = obstruction_subgroups(sl, std::vector<ConjugacyClass>{ts::class_by_type(a5c, {3})});
  EXPECT_EQ(o3.unprimed.size(), 1U);
  EXPECT_EQ(o3.primed.size(), 1U);

  auto s6 = ts::group("S6");
  auto s6c = conjugacy_classes(*s6);
  auto e26 = ts::cover("2S6.json", s6);
  auto o42 = obstruction_subgroups(e26, std::vector<ConjugacyClass>{ts::class_by_type(s6c, {4, 2})});
  EXPECT_EQ(o42.unprimed.size(), 2U);
  EXPECT_EQ(o42.primed.size(), 1U);
  ASSERT_TRUE(o42.witness.has_value());
  EXPECT_NE(o42.witness->value, 0U);
  EXPECT_EQ(commutator_pairing(e26, o42.witness->g, o42.witness->z), o42.witness->value);
}

TEST(ReduceCover, Examples) {
  auto s5 = ts::group("S5");
  auto s5c = conjugacy_classes(*s5);
  auto e25 = ts::cover("2S5.json", s5);
  std::vector<ConjugacyClass> c{ts::class_by_type(s5c, {2}), ts::class_by_type(s5c, {5})};
  auto r = reduce_cover(e25, c);
  EXPECT_EQ(r.cover->size(), 120U);
  EXPECT_EQ(r.kernel_order(), 1U);

  auto a5 = ts::group("A5");
  auto a5c = conjugacy_classes(*a5);
  auto sl = ts::cover("SL25.json", a5);
  auto r3 = reduce_cover(sl, std::vector<ConjugacyClass>{ts::class_by_type(a5c, {3})});
  EXPECT_EQ(r3.cover->size(), 120U);
  EXPECT_EQ(r3.kernel_order(), 2U);

  auto triv = trivial_extension(s5);
  EXPECT_EQ(reduce_cover(triv, c).cover->size(), 120U);
}

TEST(ReduceCover, QuotientIsAnExtension) {
  auto e = ts::cover("2S6.json");
  auto q = quotient_by_kernel_subgroup(e, e.kernel.size() == 2 ? std::vector<KernelElem>{0, 1} : std::vector<KernelElem>{0});
  EXPECT_EQ(q.cover->size(), 720U);
  EXPECT_EQ(q.kernel_order(), 1U);
  auto same = quotient_by_kernel_subgroup(e, std::vector<KernelElem>{0});
  EXPECT_EQ(same.cover->size(), 1440U);
}

TEST(Classify, S6MatchesPartitionTable) {
  auto s6 = ts::group("S6");
  auto e = ts::cover("2S6.json", s6);
  std::size_t mixed = 0;
  for (const auto& cls : conjugacy_classes(*s6)) {
    auto parts = parts_of(cls.representative);
    auto k = classify_class(e, cls);
    EXPECT_EQ(k.kind, table_kind(parts, 6)) << cls.representative.to_cycles();
    if (k.kind == ClassKindTag::kMixed) {
      ++mixed;
      EXPECT_EQ(parts, (std::vector<std::size_t>{4, 2}));
    }
  }
  EXPECT_EQ(mixed, 1U);
}

TEST(Classify, S5MatchesPartitionTable) {
  auto s5 = ts::group("S5");
  auto e = ts::cover("2S5.json", s5);
  for (const auto& cls : conjugacy_classes(*s5)) {
    EXPECT_EQ(classify_class(e, cls).kind, table_kind(parts_of(cls.representative), 5)) << cls.representative.to_cycles();
  }
}

TEST(Classify, PGL27) {
  auto pgl = ts::group("PGL27.json");
  auto e = ts::cover("2PGL27.json", pgl);
  for (const auto& cls : conjugacy_classes(*pgl)) {
    auto k = classify_class(e, cls).kind;
    if (cls.element_order == 7) {
      EXPECT_EQ(k, ClassKindTag::kAmbiguous);
    } else if (cls.element_order == 2) {
      EXPECT_EQ(k, ClassKindTag::kInert);
    } else {
      EXPECT_EQ(k, ClassKindTag::kSplit) << cls.representative.to_cycles();
    }
  }
}

TEST(Classify, AgreesWithBruteForce) {
  check_against_brute_force(ts::cover("2S5.json"));
  check_against_brute_force(ts::cover("2PGL27.json"));
  check_against_brute_force(ts::cover("2S6.json"));
}

TEST(Classify, IsoclinicVariantHasTheSameKinds) {
  auto s5 = ts::group("S5");
  auto e = ts::cover("2S5.json", s5);
  auto v = isoclinic_variant(e);
  EXPECT_EQ(v.cover->size(), 240U);
  EXPECT_EQ(v.kernel_order(), 2U);
  auto cls = conjugacy_classes(*s5);
  for (const auto& c : cls) EXPECT_EQ(classify_class(e, c).kind, classify_class(v, c).kind);
  // The variants differ in the orders of transposition lifts.
  ElemId t = s5->id_of(cyc("(1 2)", 5));
  EXPECT_NE(e.cover->order_of(e.lift(t)), v.cover->order_of(v.lift(t)));
  check_against_brute_force(v);
}

TEST(Classify, RequiresSplitPP) {
  auto a5 = ts::group("A5");
  auto sl = ts::cover("SL25.json", a5);
  EXPECT_THROW(require_split_pp(sl), UnsupportedError);
  EXPECT_EQ(require_split_pp(ts::cover("2S6.json")), 2U);
}

TEST(ConditionE, PGL27AlwaysHolds) {
  auto pgl = ts::group("PGL27.json");
  auto e = ts::cover("2PGL27.json", pgl);
  std::vector<ConjugacyClass> unamb;
  for (const auto& c : conjugacy_classes(*pgl)) {
    if (c.element_order != 1 && !is_ambiguous(*pgl, c)) unamb.push_back(c);
  }
  ASSERT_FALSE(unamb.empty());
  for (std::size_t mask = 1; mask < (std::size_t{1} << unamb.size()); ++mask) {
    std::vector<ConjugacyClass> sel;
    for (std::size_t i = 0; i < unamb.size(); ++i) {
      if (mask >> i & 1U) sel.push_back(unamb[i]);
    }
    EXPECT_TRUE(condition_e(e, sel).holds) << mask;
    EXPECT_TRUE(condition_e_by_classification(e, sel)) << mask;
  }
}

TEST(ConditionE, S6Pairs) {
  auto s6 = ts::group("S6");
  auto cls = conjugacy_classes(*s6);
  auto e = ts::cover("2S6.json", s6);
  std::vector<ConjugacyClass> bad{ts::class_by_type(cls, {4, 2}), ts::class_by_type(cls, {3, 3})};
  std::vector<ConjugacyClass> good{ts::class_by_type(cls, {4, 2}), ts::class_by_type(cls, {2})};
  auto b = condition_e(e, bad);
  EXPECT_FALSE(b.holds);
  EXPECT_TRUE(b.witness.has_value());
  EXPECT_FALSE(condition_e_by_classification(e, bad));
  EXPECT_TRUE(condition_e(e, good).holds);
  EXPECT_TRUE(condition_e_by_classification(e, good));
  std::vector<ConjugacyClass> amb{ts::class_by_type(cls, {5})};
  EXPECT_THROW(condition_e(e, amb), UnsupportedError);
}

TEST(ConditionE, RoutesAgreeOnAllS6Pairs) {
  auto s6 = ts::group("S6");
  auto e = ts::cover("2S6.json", s6);
  std::vector<ConjugacyClass> unamb;
  for (const auto& c : conjugacy_classes(*s6)) {
    if (c.element_order != 1 && !is_ambiguous(*s6, c)) unamb.push_back(c);
  }
  for (std::size_t i = 0; i < unamb.size(); ++i) {
    for (std::size_t j = i; j < unamb.size(); ++j) {
      std::vector<ConjugacyClass> sel{unamb[i]};
      if (j != i) sel.push_back(unamb[j]);
      EXPECT_EQ(condition_e(e, sel).holds, condition_e_by_classification(e, sel));
    }
  }
}

TEST(LiftingInvariant, TrivialKernelGivesOneLabel) {
  auto lp = ts::parameter("h25.json");
  auto e = ts::cover("2S5.json", lp.parameter.group);
  auto r = reduce_cover(e, lp.parameter.classes);
  LiftingInvariant inv(r, lp.parameter);
  EXPECT_EQ(inv.label_count(), 1U);
  auto tuples = enumerate_tuples(lp.parameter);
  for (std::size_t i = 0; i < tuples.size(); ++i) EXPECT_EQ(inv.label(tuples[i]), 0U);
}

TEST(LiftingInvariant, ChosenLiftsProject) {
  auto lp = ts::parameter("a5_c3_4.json");
  auto e = ts::cover("SL25.json", lp.parameter.group);
  LiftingInvariant inv(e, lp.parameter);
  for (auto m : lp.parameter.classes[0].members) {
    ElemId l = inv.chosen_lift(0, m);
    EXPECT_EQ(e.projection[l], m);
    EXPECT_EQ(e.cover->order_of(l), 3U);
  }
  // The unreduced 2.S5 does not split C2111.
  auto h = ts::parameter("h25.json");
  EXPECT_THROW(LiftingInvariant(ts::cover("2S5.json", h.parameter.group), h.parameter), InputError);
}

TEST(LiftingInvariant, ConstantUnderRandomBraidWords) {
  std::mt19937_64 rng(37);
  for (const char* f : {"a5_c3_5.json", "a5_c3_6.json"}) {
    auto lp = ts::parameter(f);
    const auto& h = lp.parameter;
    auto e = reduce_cover(ts::cover("SL25.json", h.group), h.classes);
    LiftingInvariant inv(e, h);
    auto tuples = enumerate_tuples(h);
    std::set<KernelElem> realized;
    for (std::size_t i = 0; i < tuples.size(); ++i) realized.insert(inv.label(tuples[i]));
    EXPECT_EQ(realized.size(), 2U) << f;
    auto gens = braid_n_generators(h.n);
    for (int trial = 0; trial < 1000; ++trial) {
      auto s = tuples[rng() % tuples.size()];
      std::vector<ElemId> t(s.begin(), s.end());
      KernelElem before = inv.label(t);
      BraidWord w;
      for (int k = 0; k < 50; ++k) {
        int i = 1 + static_cast<int>(rng() % (h.n - 1));
        w.letters.push_back(rng() % 2 ? i : -i);
      }
      apply_word(*h.group, t, w);
      ASSERT_EQ(inv.label(t), before) << f;
    }
  }
}

TEST(LabelAction, InnerAutomorphismsFixLabels) {
  auto lp = ts::parameter("a5_c3_5.json");
  const auto& h = lp.parameter;
  auto e = reduce_cover(ts::cover("SL25.json", h.group), h.classes);
  LiftingInvariant inv(e, h);
  auto tuples = enumerate_tuples(h);
  auto fiber = build_fiber(h, tuples, FiberMode::kInn);
  auto inn = acting_group(h, FiberMode::kInn);
  auto action = out_action_on_labels(inv, *fiber, inn);
  ASSERT_EQ(action.realized.size(), 2U);
  for (const auto& img : action.images) EXPECT_EQ(img, action.realized);
  EXPECT_EQ(action.orbits.size(), 2U);
  // Out(A5, C3) = C2; whether it swaps the labels is recorded as a regression value.
  auto aut = acting_group(h, FiberMode::kAutGC);
  auto full = out_action_on_labels(inv, *fiber, aut);
  EXPECT_EQ(full.orbits.size(), 2U);
  for (auto l : full.realized) EXPECT_EQ(full.out_stabilizer.at(l), 2U);
}

TEST(LabelAction, TrivialOutGivesSingletons) {
  auto lp = ts::parameter("h25.json");
  const auto& h = lp.parameter;
  auto r = reduce_cover(ts::cover("2S5.json", h.group), h.classes);
  LiftingInvariant inv(r, h);
  auto tuples = enumerate_tuples(h);
  auto fiber = build_fiber(h, tuples, FiberMode::kInn);
  auto action = out_action_on_labels(inv, *fiber, acting_group(h, FiberMode::kAutGC));
  EXPECT_EQ(action.orbits.size(), action.realized.size());
}
