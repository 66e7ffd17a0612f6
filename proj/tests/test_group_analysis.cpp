#include <gtest/gtest.h>

#include <set>

#include "hurwitz/errors.hpp"
#include "hurwitz/group_analysis.hpp"
#include "test_support.hpp"

using namespace hurwitz;
namespace ts = testing_support;

namespace {

// Number of G'-orbits on a class, by brute-force conjugation.
std::size_t brute_derived_orbits(const FiniteGroup& g, const ConjugacyClass& cls) {
  auto der = derived_set(g).members();
  std::set<ElemId> seen;
  std::size_t orbits = 0;
  for (auto m : cls.members) {
    if (seen.count(m)) continue;
    ++orbits;
    for (auto d : der) seen.insert(g.conj(m, d));
  }
  return orbits;
}

}  // namespace

TEST(Ambiguity, Examples) {
  auto s5 = ts::group("S5");
  auto cls = conjugacy_classes(*s5);
  EXPECT_TRUE(is_ambiguous(*s5, ts::class_by_type(cls, {5})));
  EXPECT_FALSE(is_ambiguous(*s5, ts::class_by_type(cls, {2})));
  auto pgl = ts::group("PGL27.json");
  auto pcls = conjugacy_classes(*pgl);
  std::size_t order7 = 0;
  for (const auto& c : pcls) {
    if (c.element_order == 7) {
      ++order7;
      EXPECT_TRUE(is_ambiguous(*pgl, c));
    }
  }
  // One class of 48 in PGL2(7), two G'-orbits of 24.
  EXPECT_EQ(order7, 1U);
  for (const auto& c : pcls) {
    if (c.element_order == 7) EXPECT_EQ(derived_orbit_count(*pgl, c), 2U);
  }
}

TEST(Ambiguity, MatchesBruteForceAndCentralizerCriterion) {
  for (const auto& name : ts::bundled_groups()) {
    auto g = ts::group(name);
    for (const auto& c : conjugacy_classes(*g)) {
      std::size_t orbits = brute_derived_orbits(*g, c);
      EXPECT_EQ(derived_orbit_count(*g, c), orbits) << name;
      EXPECT_EQ(is_ambiguous(*g, c), orbits > 1) << name;
      EXPECT_EQ(centralizer_covers_abelianization(*g, c), orbits == 1) << name;
    }
  }
}

TEST(Pseudosimple, Examples) {
  auto s5 = is_pseudosimple(*ts::group("S5"));
  EXPECT_TRUE(s5.pseudosimple);
  EXPECT_EQ(s5.simple_factor_count, 1U);
  EXPECT_TRUE(is_pseudosimple(*ts::group("A5")).pseudosimple);
  EXPECT_TRUE(is_pseudosimple(*ts::group("S6")).pseudosimple);
  EXPECT_TRUE(is_pseudosimple(*ts::group("PGL27.json")).pseudosimple);
  auto s4 = is_pseudosimple(*ts::group("S4"));
  EXPECT_FALSE(s4.pseudosimple);
  EXPECT_EQ(s4.reason, PseudosimpleFailure::kNonabelianQuotient);
  // SL2(5) has center {+-I}.
  auto sl = is_pseudosimple(*ts::group("SL25.json"));
  EXPECT_FALSE(sl.pseudosimple);
  EXPECT_EQ(sl.reason, PseudosimpleFailure::kCenterNontrivial);
}

TEST(Pseudosimple, DirectPowerOfA5) {
  // A5 x A5 on 10 points: G' = T^2.
  std::vector<Permutation> gens{Permutation::from_cycles("(1 2 3)", 10), Permutation::from_cycles("(3 4 5)", 10),
                                Permutation::from_cycles("(6 7 8)", 10), Permutation::from_cycles("(8 9 10)", 10)};
  auto g = FiniteGroup::materialize(PermGroup(10, gens));
  auto v = is_pseudosimple(g);
  // A nontrivial class inside one factor has normal closure that factor only.
  EXPECT_FALSE(v.pseudosimple);
  // A5 wr C2 permutes the factors, so every class closure is all of G'.
  gens.push_back(Permutation::from_cycles("(1 6)(2 7)(3 8)(4 9)(5 10)", 10));
  auto w = FiniteGroup::materialize(PermGroup(10, gens));
  ASSERT_EQ(w.size(), 7200U);
  auto vw = is_pseudosimple(w);
  EXPECT_TRUE(vw.pseudosimple);
  EXPECT_EQ(vw.simple_factor_count, 2U);
}

TEST(Automorphisms, Orders) {
  auto s5 = ts::group("S5");
  auto a5aut = automorphism_group(*s5, conjugacy_classes(*s5));
  EXPECT_EQ(a5aut.order(), 120U);
  EXPECT_EQ(a5aut.inner_count, 120U);
  auto s6 = ts::group("S6");
  auto s6cls = conjugacy_classes(*s6);
  auto s6aut = automorphism_group(*s6, s6cls);
  EXPECT_EQ(s6aut.order(), 1440U);
  EXPECT_EQ(s6aut.inner_count, 720U);
  auto a5 = ts::group("A5");
  auto a5a = automorphism_group(*a5, conjugacy_classes(*a5));
  EXPECT_EQ(a5a.order(), 120U);
  EXPECT_EQ(a5a.inner_count, 60U);
  auto pgl = ts::group("PGL27.json");
  EXPECT_EQ(automorphism_group(*pgl, conjugacy_classes(*pgl)).order(), 336U);
}

TEST(Automorphisms, MapsAreHomomorphismsAndIdentityFirst) {
  auto s6 = ts::group("S6");
  auto cls = conjugacy_classes(*s6);
  auto aut = automorphism_group(*s6, cls);
  std::mt19937_64 rng(1);
  for (ElemId e = 0; e < s6->size(); ++e) EXPECT_EQ(aut.maps[0].map[e], e);
  std::set<std::vector<ElemId>> distinct;
  for (const auto& a : aut.maps) {
    distinct.insert(a.map);
    for (int i = 0; i < 40; ++i) {
      ElemId x = static_cast<ElemId>(rng() % s6->size()), y = static_cast<ElemId>(rng() % s6->size());
      EXPECT_EQ(a.map[s6->mul(x, y)], s6->mul(a.map[x], a.map[y]));
    }
  }
  EXPECT_EQ(distinct.size(), aut.order());
}

TEST(Automorphisms, FixingClasses) {
  auto s6 = ts::group("S6");
  auto cls = conjugacy_classes(*s6);
  auto aut = automorphism_group(*s6, cls);
  std::vector<ConjugacyClass> c{ts::class_by_type(cls, {2}), ts::class_by_type(cls, {6})};
  auto fixed = aut_fixing_classes(aut, c);
  EXPECT_EQ(fixed.order(), 720U);
  EXPECT_EQ(aut_fixing_classes(aut, {}).order(), 1440U);
  // The outer automorphism swaps 2111 and 222.
  auto t = class_index_of(cls, ts::class_by_type(cls, {2}).representative_id);
  auto t3 = class_index_of(cls, ts::class_by_type(cls, {2, 2, 2}).representative_id);
  std::size_t swaps = 0;
  for (const auto& a : aut.maps) {
    if (a.class_action[t] == t3) ++swaps;
  }
  EXPECT_EQ(swaps, 720U);
  auto s5 = ts::group("S5");
  auto s5cls = conjugacy_classes(*s5);
  auto s5aut = automorphism_group(*s5, s5cls);
  EXPECT_EQ(aut_fixing_classes(s5aut, std::vector<ConjugacyClass>{ts::class_by_type(s5cls, {3})}).order(), 120U);
}

TEST(Automorphisms, InnerMatchesCenterQuotient) {
  for (const auto& name : ts::bundled_groups()) {
    auto g = ts::group(name);
    auto cls = conjugacy_classes(*g);
    auto inn = inner_automorphisms(*g, cls);
    EXPECT_EQ(inn.order() * center_set(*g).count(), g->size()) << name;
  }
}

TEST(Rationality, Examples) {
  auto s5 = ts::group("S5");
  for (const auto& c : conjugacy_classes(*s5)) EXPECT_TRUE(is_rational_class(*s5, c));
  auto a5 = ts::group("A5");
  auto cls = conjugacy_classes(*a5);
  for (const auto& c : cls) {
    if (c.element_order == 5) EXPECT_FALSE(is_rational_class(*a5, c));
    if (c.element_order == 1) EXPECT_TRUE(is_rational_class(*a5, c));
  }
}

TEST(SmallGeneratingSet, Generates) {
  for (const auto& name : ts::bundled_groups()) {
    auto g = ts::group(name);
    auto gens = small_generating_set(*g, conjugacy_classes(*g));
    EXPECT_LE(gens.size(), 2U) << name;
    EXPECT_EQ(g->closure(gens).count(), g->size()) << name;
  }
}
