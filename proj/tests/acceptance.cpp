// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "hurwitz/braid.hpp"
#include "hurwitz/covers.hpp"
#include "hurwitz/fiber.hpp"
#include "hurwitz/fiber_power.hpp"
#include "hurwitz/io.hpp"
#include "hurwitz/monodromy.hpp"
#include "test_support.hpp"

using namespace hurwitz;
namespace ts = testing_support;

namespace {

BigInt fact(unsigned m) {
  BigInt f = 1;
  for (unsigned i = 2; i <= m; ++i) f *= i;
  return f;
}

struct Check {
  std::ostringstream notes;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
  template <class T>
  void note(const std::string& key, const T& value) {
    notes << " " << key << "=" << value;
  }
};

struct Built {
  HurwitzParameter h;
  TupleSet tuples;
  std::unique_ptr<Fiber> fiber;
  std::vector<Permutation> gens;
};

Built build(const std::string& file, FiberMode mode) {
  Built b;
  b.h = ts::parameter(file).parameter;
  b.tuples = enumerate_tuples(b.h);
  b.fiber = build_fiber(b.h, b.tuples, mode);
  b.gens = induced_permutations(*b.fiber, braid_nu_generators(b.h.nu));
  return b;
}

ClassKindTag table_kind(const Permutation& rep, std::size_t degree) {
  std::vector<std::size_t> parts = rep.cycle_type();
  std::size_t sum = 0;
  for (auto p : parts) sum += p;
  for (; sum < degree; ++sum) parts.push_back(1);
  std::size_t even = 0;
  for (auto p : parts) even += p % 2 == 0;
  bool distinct = std::set<std::size_t>(parts.begin(), parts.end()).size() == parts.size();
  if (distinct) {
    if (even == 0) return ClassKindTag::kAmbiguous;
    return even % 2 == 0 ? ClassKindTag::kMixed : ClassKindTag::kSplit;
  }
  return even == 0 ? ClassKindTag::kSplit : ClassKindTag::kInert;
}

void criterion_1(Check& c) {
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  auto t0 = std::chrono::steady_clock::now();
  auto b = build("h25.json", FiberMode::kAutGC);
  auto r = monodromy_group(b.fiber->size(), b.gens);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  omp_set_num_threads(saved);
  c.note("fiber", b.fiber->size());
  c.note("orbits", r.partition.orbits.size());
  c.note("order", r.group_order == fact(25) ? "25!" : r.group_order * 2 == fact(25) ? "25!/2" : to_decimal(r.group_order));
  c.note("seconds", secs);
  c.expect(b.fiber->size() == 25, "fiber size 25");
  c.expect(r.partition.orbits.size() == 1, "transitive");
  c.expect(r.group_order == fact(25) || r.group_order * 2 == fact(25), "order in {25!/2, 25!}");
  c.expect(secs < 30, "under 30 s single-threaded");
}

void criterion_2(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  auto full = build("s5_221.json", FiberMode::kAutGC);
  auto rf = monodromy_group(full.fiber->size(), full.gens);
  auto wr = build("s5_212.json", FiberMode::kAutGC);
  auto rw = monodromy_group(wr.fiber->size(), wr.gens);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.note("fiber_221", full.fiber->size());
  c.note("fiber_212", wr.fiber->size());
  c.note("seconds", secs);
  c.expect(full.fiber->size() == 125, "fiber 125");
  c.expect(rf.group_order == fact(125), "order exactly 125!");
  c.expect(wr.fiber->size() == 170, "fiber 170");
  c.expect(rw.group_order == 2 * fact(85) * fact(85), "order exactly 2 (85!)^2");
  bool blocks = rw.per_orbit.size() == 1 && rw.per_orbit[0].blocks && rw.per_orbit[0].blocks->size() == 2 &&
                (*rw.per_orbit[0].blocks)[0].size() == 85 && (*rw.per_orbit[0].blocks)[1].size() == 85;
  c.expect(blocks, "2 blocks of size 85");
  c.expect(secs < 300, "under 5 min");
}

void criterion_3(Check& c) {
  for (auto [group, cover, degree] : {std::tuple{"S5", "2S5.json", 5}, std::tuple{"S6", "2S6.json", 6}}) {
    auto g = ts::group(group);
    auto e = ts::cover(cover, g);
    std::size_t mixed = 0;
    for (const auto& cls : conjugacy_classes(*g)) {
      auto kind = classify_class(e, cls).kind;
      c.expect(kind == table_kind(cls.representative, static_cast<std::size_t>(degree)),
               std::string(group) + " " + cls.representative.to_cycles() + " is " + to_string(kind));
      if (kind == ClassKindTag::kMixed) {
        ++mixed;
        auto ct = cls.representative.cycle_type();
        std::erase(ct, std::size_t{1});
        c.expect(ct == std::vector<std::size_t>{4, 2}, "mixed class is C42");
      }
    }
    c.note(std::string(group) + "_mixed", mixed);
    if (std::string(group) == "S6") c.expect(mixed == 1, "unique mixed class in S6");
  }
  auto pgl = ts::group("PGL27.json");
  auto e = ts::cover("2PGL27.json", pgl);
  std::size_t split = 0, inert = 0, amb = 0;
  for (const auto& cls : conjugacy_classes(*pgl)) {
    auto kind = classify_class(e, cls).kind;
    ClassKindTag want = cls.element_order == 7   ? ClassKindTag::kAmbiguous
                        : cls.element_order == 2 ? ClassKindTag::kInert
                                                 : ClassKindTag::kSplit;
    c.expect(kind == want, "PGL27 " + cls.representative.to_cycles() + " is " + to_string(kind));
    split += kind == ClassKindTag::kSplit;
    inert += kind == ClassKindTag::kInert;
    amb += kind == ClassKindTag::kAmbiguous;
  }
  c.note("PGL27_split", split);
  c.note("PGL27_inert", inert);
  c.note("PGL27_ambiguous", amb);
}

void criterion_4(Check& c) {
  auto pgl = ts::group("PGL27.json");
  auto e = ts::cover("2PGL27.json", pgl);
  std::vector<ConjugacyClass> unamb;
  for (const auto& cls : conjugacy_classes(*pgl)) {
    if (cls.element_order != 1 && !is_ambiguous(*pgl, cls)) unamb.push_back(cls);
  }
  std::size_t lists = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << unamb.size()); ++mask) {
    std::vector<ConjugacyClass> sel;
    for (std::size_t i = 0; i < unamb.size(); ++i) {
      if (mask >> i & 1U) sel.push_back(unamb[i]);
    }
    bool pairing = condition_e(e, sel).holds;
    bool rule = condition_e_by_classification(e, sel);
    c.expect(pairing && rule, "PGL27 list " + std::to_string(mask));
    ++lists;
  }
  c.note("PGL27_lists", lists);
  auto s6 = ts::group("S6");
  auto cls = conjugacy_classes(*s6);
  auto e6 = ts::cover("2S6.json", s6);
  std::vector<ConjugacyClass> bad{ts::class_by_type(cls, {4, 2}), ts::class_by_type(cls, {3, 3})};
  std::vector<ConjugacyClass> good{ts::class_by_type(cls, {4, 2}), ts::class_by_type(cls, {2})};
  bool bad_pair = condition_e(e6, bad).holds, bad_rule = condition_e_by_classification(e6, bad);
  bool good_pair = condition_e(e6, good).holds, good_rule = condition_e_by_classification(e6, good);
  c.note("C42_C33", bad_pair ? "holds" : "fails");
  c.note("C42_C2111", good_pair ? "holds" : "fails");
  c.expect(!bad_pair && !bad_rule, "(C42, C33) fails by both routes");
  c.expect(good_pair && good_rule, "(C42, C2111) holds by both routes");
}

void criterion_5(Check& c) {
  for (const char* f : {"a5_c3_5.json", "a5_c3_6.json"}) {
    auto b = build(f, FiberMode::kInn);
    auto e = reduce_cover(ts::cover("SL25.json", b.h.group), b.h.classes);
    LiftingInvariant inv(e, b.h);
    std::vector<KernelElem> labels(b.fiber->size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = inv.label(b.fiber->point(i));
    auto part = braid_orbits(b.fiber->size(), b.gens);
    attach_labels(part, labels);
    auto cp = conway_parker_report(part, labels);
    bool cross = orbits_via_full_braid_group(*b.fiber) == part.orbit_of;
    std::string n = std::to_string(b.h.n);
    c.note("n" + n + "_orbits", cp.orbit_count);
    c.note("n" + n + "_labels", cp.label_count);
    c.expect(cp.orbit_count == 2, "n=" + n + " two orbits");
    c.expect(cp.label_count == 2, "n=" + n + " two labels");
    c.expect(cp.bijective(), "n=" + n + " bijective");
    c.expect(cross, "n=" + n + " full braid group cross-check");
  }
}

void criterion_6(Check& c) {
  auto a = ts::parameter("a5_c3_6.json").parameter;
  auto tuples = enumerate_tuples(a);
  auto inn = build_fiber(a, tuples, FiberMode::kInn);
  auto aut = build_fiber(a, tuples, FiberMode::kAutGC);
  auto m = mass_report(a, inn->acting().order(), aut->acting().order(), inn->size(), aut->size());
  double predicted = std::pow(20.0, 6) / 3600.0;
  double dev = std::abs(static_cast<double>(inn->size()) - predicted) / predicted;
  c.note("A5_inn", inn->size());
  c.note("A5_predicted", m.predicted_inn);
  c.note("A5_deviation", dev);
  c.expect(std::abs(m.predicted_inn - predicted) < 1e-6, "predicted 20^6/3600");
  c.expect(dev <= 0.10, "within 10%");

  auto h = ts::parameter("h25.json").parameter;
  auto ht = enumerate_tuples(h);
  auto hi = build_fiber(h, ht, FiberMode::kInn);
  auto ha = build_fiber(h, ht, FiberMode::kAutGC);
  auto mh = mass_report(h, hi->acting().order(), ha->acting().order(), hi->size(), ha->size());
  c.note("h25_predicted", mh.predicted_aut);
  c.note("h25_actual", ha->size());
  c.note("h25_ratio", mh.ratio_aut.value_or(0));
}

void criterion_7(Check& c) {
  auto h = ts::parameter("h25.json").parameter;
  auto tuples = enumerate_tuples(h);
  auto fiber = build_fiber(h, tuples, FiberMode::kAutGC);
  auto power = fiber_power_group(*h.group, 2);
  std::size_t distinct_true = 0, distinct_false = 0, diag_true = 0, diag_false = 0;
  for (std::size_t a = 0; a < fiber->size(); ++a) {
    for (std::size_t b = 0; b < fiber->size(); ++b) {
      std::vector<std::span<const ElemId>> rows{fiber->point(a), fiber->point(b)};
      bool r = row_span_check(h, power, rows, false);
      if (a != b) {
        (r ? distinct_true : distinct_false)++;
      } else {
        (r ? diag_true : diag_false)++;
      }
    }
  }
  c.note("distinct_generate", distinct_true);
  c.note("diagonal_proper", diag_false);
  c.expect(distinct_true == 600 && distinct_false == 0, "all 600 distinct pairs generate");
  c.expect(diag_false == 25 && diag_true == 0, "all 25 diagonal pairs proper");
}

void criterion_8(Check& c) {
  std::mt19937_64 rng(20240518);
  // Braid relations, 10^3 random tuples per bundled group.
  std::size_t relation_failures = 0;
  BraidWord l{{1, 2, 1}, ""}, r{{2, 1, 2}, ""}, f1{{1, 3}, ""}, f2{{3, 1}, ""};
  for (const auto& name : ts::bundled_groups()) {
    auto g = ts::group(name);
    for (int i = 0; i < 1000; ++i) {
      std::vector<ElemId> t(4);
      for (auto& x : t) x = static_cast<ElemId>(rng() % g->size());
      auto a = t, b = t;
      apply_word(*g, a, l);
      apply_word(*g, b, r);
      relation_failures += a != b;
      a = t;
      b = t;
      apply_word(*g, a, f1);
      apply_word(*g, b, f2);
      relation_failures += a != b;
      a = t;
      apply_word(*g, a, l);
      apply_word(*g, a, l.inverse());
      relation_failures += a != t;
    }
  }
  c.note("relation_failures", relation_failures);
  c.expect(relation_failures == 0, "braid relations");

  // Lifting invariant under 50-letter words, 10^3 samples.
  auto a6 = ts::parameter("a5_c3_6.json").parameter;
  auto e = reduce_cover(ts::cover("SL25.json", a6.group), a6.classes);
  LiftingInvariant inv(e, a6);
  auto tuples = enumerate_tuples(a6);
  std::size_t label_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    auto s = tuples[rng() % tuples.size()];
    std::vector<ElemId> t(s.begin(), s.end());
    KernelElem before = inv.label(t);
    BraidWord w;
    for (int k = 0; k < 50; ++k) {
      int j = 1 + static_cast<int>(rng() % (a6.n - 1));
      w.letters.push_back(rng() % 2 ? j : -j);
    }
    apply_word(*a6.group, t, w);
    label_failures += inv.label(t) != before;
  }
  c.note("label_failures", label_failures);
  c.expect(label_failures == 0, "label constancy");

  // Canonicalization idempotence and orbit-size divisibility.
  std::size_t canon_failures = 0, divisibility_failures = 0;
  for (const char* f : {"h25.json", "a5_c3_5.json", "s5_212.json"}) {
    for (auto mode : {FiberMode::kInn, FiberMode::kAutGC}) {
      auto b = build(f, mode);
      const auto& canon = b.fiber->canonicalizer();
      for (int i = 0; i < 300; ++i) {
        auto s = b.tuples[rng() % b.tuples.size()];
        auto k = canon.canonical(s);
        canon_failures += canon.canonical(k) != k;
        auto u = std::vector<ElemId>(s.begin(), s.end());
        canon.apply(rng() % canon.acting_order(), u);
        canon_failures += canon.canonical(u) != k;
      }
      auto rep = monodromy_group(b.fiber->size(), b.gens);
      for (const auto& v : rep.per_orbit) divisibility_failures += rep.group_order % v.size != 0;
    }
  }
  c.note("canonical_failures", canon_failures);
  c.note("divisibility_failures", divisibility_failures);
  c.expect(canon_failures == 0, "canonicalization idempotence");
  c.expect(divisibility_failures == 0, "orbit sizes divide the group order");

  // Determinism under thread-count variation.
  auto h = ts::parameter("a5_c3_5.json").parameter;
  int saved = omp_get_max_threads();
  std::vector<ElemId> ref_tuples;
  std::vector<Permutation> ref_gens;
  std::size_t determinism_failures = 0;
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    EnumerateOptions opt;
    opt.threads = threads;
    auto t = enumerate_tuples(h, opt);
    auto fiber = build_fiber(h, t, FiberMode::kInn);
    auto gens = induced_permutations(*fiber, braid_nu_generators(h.nu));
    if (threads == 1) {
      ref_tuples = t.data;
      ref_gens = gens;
    } else {
      determinism_failures += t.data != ref_tuples;
      determinism_failures += gens != ref_gens;
    }
  }
  omp_set_num_threads(saved);
  c.note("determinism_failures", determinism_failures);
  c.expect(determinism_failures == 0, "determinism across thread counts");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"1 degree-25 cover", criterion_1},       {"2 contrasting pair", criterion_2},
      {"3 class classification", criterion_3},  {"4 condition E", criterion_4},
      {"5 Conway-Parker", criterion_5},         {"6 mass formula", criterion_6},
      {"7 Goursat criterion", criterion_7},     {"8 property suites", criterion_8},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.notes << " [exception: " << e.what() << "]";
    }
    std::printf("%s criterion %s:%s\n", c.ok ? "PASS" : "FAIL", name, c.notes.str().c_str());
    std::fflush(stdout);
    failures += !c.ok;
  }
  return failures == 0 ? 0 : 1;
}
