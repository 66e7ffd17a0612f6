#include "hurwitz/nielsen.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include <omp.h>

#include "hurwitz/errors.hpp"

namespace hurwitz {

std::vector<std::size_t> HurwitzParameter::position_class() const {
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < nu.size(); ++i) out.insert(out.end(), nu[i], i);
  return out;
}

HurwitzParameter validate_parameter(std::shared_ptr<const FiniteGroup> group,
                                    std::span<const Permutation> class_representatives,
                                    std::span<const std::size_t> nu) {
  if (!group) throw InputError("no group given");
  if (class_representatives.size() != nu.size()) {
    throw InputError("classes and nu have different lengths");
  }
  if (nu.empty()) throw InputError("empty class list");
  HurwitzParameter h;
  h.group = group;
  h.group_classes = conjugacy_classes(*group);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] == 0) throw InputError("nu entries must be positive");
    ElemId id = group->id_of(class_representatives[i]);
    if (id == FiniteGroup::identity()) throw InputError("identity class in class list");
    std::size_t ci = class_index_of(h.group_classes, id);
    if (std::find(h.class_index.begin(), h.class_index.end(), ci) != h.class_index.end()) {
      throw InputError("duplicate classes in class list");
    }
    h.class_index.push_back(ci);
    h.classes.push_back(h.group_classes[ci]);
    h.nu.push_back(nu[i]);
    h.n += nu[i];
  }

  std::vector<ElemId> all_members;
  for (const auto& c : h.classes) all_members.insert(all_members.end(), c.members.begin(), c.members.end());
  if (group->closure(all_members).count() != group->size()) {
    throw InputError("classes do not generate the group");
  }

  Abelianization ab = abelianization(*group);
  std::uint32_t prod = ab.identity();
  for (std::size_t i = 0; i < h.classes.size(); ++i) {
    for (std::size_t k = 0; k < h.nu[i]; ++k) prod = ab.mul(prod, ab.label[h.classes[i].representative_id]);
  }
  if (prod != ab.identity()) throw InputError("nu not allowed: class product is nontrivial in the abelianization");
  return h;
}

std::uint64_t enumeration_estimate(const HurwitzParameter& h) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::size_t largest = 0;
  for (std::size_t i = 1; i < h.classes.size(); ++i) {
    if (h.classes[i].size() > h.classes[largest].size()) largest = i;
  }
  std::uint64_t est = 1;
  for (std::size_t i = 0; i < h.classes.size(); ++i) {
    std::size_t reps = h.nu[i] - (i == largest ? 1 : 0);
    for (std::size_t k = 0; k < reps; ++k) {
      std::uint64_t s = h.classes[i].size();
      if (est > kMax / s) return kMax;
      est *= s;
    }
  }
  return est;
}

ElemId tuple_product(const FiniteGroup& group, std::span<const ElemId> tuple) {
  ElemId p = FiniteGroup::identity();
  for (ElemId g : tuple) p = group.mul(p, g);
  return p;
}

bool is_nielsen_tuple(const HurwitzParameter& h, std::span<const ElemId> tuple) {
  if (tuple.size() != h.n) return false;
  auto pos = h.position_class();
  for (std::size_t k = 0; k < h.n; ++k) {
    if (!h.classes[pos[k]].contains(tuple[k])) return false;
  }
  if (tuple_product(*h.group, tuple) != FiniteGroup::identity()) return false;
  return h.group->closure(tuple).count() == h.group->size();
}

namespace {

// Subgroups reached by adding one element at a time, memoized by
// (subgroup, element).
class SubgroupCache {
 public:
  explicit SubgroupCache(const FiniteGroup& group) : group_(group) {
    ElemId none[] = {FiniteGroup::identity()};
    subs_.push_back(group.closure(none));
    gens_.emplace_back();
  }

  std::uint32_t join(std::uint32_t sub, ElemId e) {
    if (subs_[sub].contains(e)) return sub;
    std::uint64_t key = static_cast<std::uint64_t>(sub) * group_.size() + e;
    if (auto it = step_.find(key); it != step_.end()) return it->second;
    std::vector<ElemId> gens = gens_[sub];
    gens.push_back(e);
    ElementSet s = group_.closure(gens);
    std::uint64_t hs = s.hash();
    std::uint32_t id = 0;
    bool found = false;
    for (auto [it, end] = by_hash_.equal_range(hs); it != end; ++it) {
      if (subs_[it->second] == s) {
        id = it->second;
        found = true;
        break;
      }
    }
    if (!found) {
      id = static_cast<std::uint32_t>(subs_.size());
      subs_.push_back(std::move(s));
      gens_.push_back(std::move(gens));
      by_hash_.emplace(hs, id);
    }
    step_.emplace(key, id);
    return id;
  }

  bool is_whole(std::uint32_t sub) const { return subs_[sub].count() == group_.size(); }

 private:
  const FiniteGroup& group_;
  std::vector<ElementSet> subs_;
  std::vector<std::vector<ElemId>> gens_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> by_hash_;
  std::unordered_map<std::uint64_t, std::uint32_t> step_;
};

struct SearchPlan {
  std::size_t n = 0;
  std::size_t rotation = 0;  // rotated position k holds original position (k + rotation) % n
  std::vector<const std::vector<ElemId>*> candidates;  // per rotated position
  std::vector<std::int32_t> class_of;                 // element -> class slot, -1 if none
  std::vector<std::size_t> slot;                      // per rotated position
};

SearchPlan make_plan(const HurwitzParameter& h) {
  SearchPlan plan;
  plan.n = h.n;
  auto pos = h.position_class();
  std::size_t largest = 0;
  for (std::size_t i = 1; i < h.classes.size(); ++i) {
    if (h.classes[i].size() > h.classes[largest].size()) largest = i;
  }
  std::size_t last_of_largest = 0;
  for (std::size_t k = 0; k < h.n; ++k) {
    if (pos[k] == largest) last_of_largest = k;
  }
  plan.rotation = (last_of_largest + 1) % h.n;
  for (std::size_t k = 0; k < h.n; ++k) {
    std::size_t s = pos[(k + plan.rotation) % h.n];
    plan.slot.push_back(s);
    plan.candidates.push_back(&h.classes[s].members);
  }
  plan.class_of.assign(h.group->size(), -1);
  for (std::size_t i = 0; i < h.classes.size(); ++i) {
    for (ElemId e : h.classes[i].members) plan.class_of[e] = static_cast<std::int32_t>(i);
  }
  return plan;
}

class Search {
 public:
  Search(const FiniteGroup& group, const SearchPlan& plan, SubgroupCache& cache)
      : group_(group), plan_(plan), cache_(cache), tuple_(plan.n) {}

  // Explores all tuples whose first `depth` rotated entries are already set.
  void run(std::size_t depth, ElemId prefix, std::uint32_t sub) {
    ++visits;
    const std::size_t n = plan_.n;
    if (depth + 1 == n) {
      ElemId last = group_.inv(prefix);
      if (plan_.class_of[last] != static_cast<std::int32_t>(plan_.slot[n - 1])) return;
      if (!cache_.is_whole(cache_.join(sub, last))) return;
      tuple_[n - 1] = last;
      found.insert(found.end(), tuple_.begin(), tuple_.end());
      return;
    }
    for (ElemId g : *plan_.candidates[depth]) {
      tuple_[depth] = g;
      run(depth + 1, group_.mul(prefix, g), cache_.join(sub, g));
    }
  }

  void set(std::size_t k, ElemId g) { tuple_[k] = g; }

  std::vector<ElemId> found;
  std::uint64_t visits = 0;

 private:
  const FiniteGroup& group_;
  const SearchPlan& plan_;
  SubgroupCache& cache_;
  std::vector<ElemId> tuple_;
};

TupleSet finish(const SearchPlan& plan, std::vector<ElemId> rotated) {
  TupleSet out;
  out.n = plan.n;
  const std::size_t n = plan.n;
  const std::size_t count = rotated.size() / n;
  std::vector<ElemId> data(rotated.size());
  for (std::size_t t = 0; t < count; ++t) {
    for (std::size_t k = 0; k < n; ++k) data[t * n + (k + plan.rotation) % n] = rotated[t * n + k];
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(data.begin() + a * n, data.begin() + (a + 1) * n,
                                        data.begin() + b * n, data.begin() + (b + 1) * n);
  });
  out.data.reserve(data.size());
  for (std::size_t t : order) out.data.insert(out.data.end(), data.begin() + t * n, data.begin() + (t + 1) * n);
  return out;
}

void check_budget(const HurwitzParameter& h, const EnumerateOptions& options, EnumerateStats* stats) {
  std::uint64_t est = enumeration_estimate(h);
  if (stats) stats->estimate = est;
  if (est > options.budget) {
    throw ResourceError("tuple enumeration estimate " + std::to_string(est) + " exceeds budget " +
                        std::to_string(options.budget));
  }
}

}  // namespace

TupleSet enumerate_tuples_serial(const HurwitzParameter& h, const EnumerateOptions& options,
                                 EnumerateStats* stats) {
  check_budget(h, options, stats);
  SearchPlan plan = make_plan(h);
  SubgroupCache cache(*h.group);
  Search search(*h.group, plan, cache);
  search.run(0, FiniteGroup::identity(), 0);
  if (stats) stats->prefix_visits = search.visits;
  return finish(plan, std::move(search.found));
}

TupleSet enumerate_tuples(const HurwitzParameter& h, const EnumerateOptions& options, EnumerateStats* stats) {
  if (h.n < 2) return enumerate_tuples_serial(h, options, stats);
  check_budget(h, options, stats);
  SearchPlan plan = make_plan(h);
  const FiniteGroup& group = *h.group;
  const auto& first = *plan.candidates[0];
  int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

  std::vector<std::vector<ElemId>> per_first(first.size());
  std::vector<std::unique_ptr<SubgroupCache>> caches(static_cast<std::size_t>(threads));
  std::uint64_t visits = 1;

#pragma omp parallel for num_threads(threads) schedule(dynamic) reduction(+ : visits)
  for (std::size_t c = 0; c < first.size(); ++c) {
    auto& cache = caches[static_cast<std::size_t>(omp_get_thread_num())];
    if (!cache) cache = std::make_unique<SubgroupCache>(group);
    Search search(group, plan, *cache);
    search.set(0, first[c]);
    search.run(1, first[c], cache->join(0, first[c]));
    per_first[c] = std::move(search.found);
    visits += search.visits;
  }

  if (stats) stats->prefix_visits = visits;
  std::vector<ElemId> rotated;
  for (auto& part : per_first) rotated.insert(rotated.end(), part.begin(), part.end());
  return finish(plan, std::move(rotated));
}

}  // namespace hurwitz
