#include "hurwitz/fiber.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

#include <omp.h>

#include "hurwitz/errors.hpp"

namespace hurwitz {

std::string to_string(FiberMode mode) { return mode == FiberMode::kInn ? "inn" : "aut"; }

Canonicalizer::Canonicalizer(std::shared_ptr<const FiniteGroup> group, const AutGroup& acting)
    : group_(std::move(group)) {
  const std::size_t size = group_->size();
  for (const auto& a : acting.maps) maps_.push_back(a.map);
  min_image_.assign(size, 0);
  minimizers_.assign(size, {});
  for (std::size_t e = 0; e < size; ++e) {
    ElemId best = static_cast<ElemId>(size);
    for (std::size_t a = 0; a < maps_.size(); ++a) {
      ElemId img = maps_[a][e];
      if (img < best) {
        best = img;
        minimizers_[e].clear();
      }
      if (img == best) minimizers_[e].push_back(static_cast<std::uint32_t>(a));
    }
    min_image_[e] = best;
  }
}

void Canonicalizer::canonicalize(std::span<ElemId> tuple) const {
  if (tuple.empty() || maps_.empty()) return;
  const std::size_t n = tuple.size();
  const auto& cands = minimizers_[tuple[0]];
  std::vector<ElemId> best(n);
  bool have = false;
  for (std::uint32_t a : cands) {
    const auto& m = maps_[a];
    if (!have) {
      for (std::size_t k = 0; k < n; ++k) best[k] = m[tuple[k]];
      have = true;
      continue;
    }
    std::size_t k = 1;
    while (k < n && m[tuple[k]] == best[k]) ++k;
    if (k < n && m[tuple[k]] < best[k]) {
      for (; k < n; ++k) best[k] = m[tuple[k]];
    }
  }
  std::copy(best.begin(), best.end(), tuple.begin());
}

std::vector<ElemId> Canonicalizer::canonical(std::span<const ElemId> tuple) const {
  std::vector<ElemId> t(tuple.begin(), tuple.end());
  canonicalize(t);
  return t;
}

void Canonicalizer::apply(std::size_t a, std::span<ElemId> tuple) const {
  for (ElemId& e : tuple) e = maps_[a][e];
}

std::uint64_t hash_tuple(std::span<const ElemId> tuple) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ tuple.size();
  for (ElemId e : tuple) {
    h ^= e;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 32;
  }
  h ^= h >> 29;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 32;
  return h;
}

TupleIndex::TupleIndex(const std::vector<ElemId>* data, std::size_t n) : data_(data), n_(n) {
  const std::size_t count = n == 0 ? 0 : data->size() / n;
  std::size_t cap = std::bit_ceil(std::max<std::size_t>(16, count * 2));
  slots_.assign(cap, 0);
  mask_ = cap - 1;
  for (std::size_t i = 0; i < count; ++i) {
    std::span<const ElemId> t(data->data() + i * n, n);
    std::uint64_t s = hash_tuple(t) & mask_;
    while (slots_[s] != 0) s = (s + 1) & mask_;
    slots_[s] = static_cast<std::uint32_t>(i + 1);
  }
}

std::int64_t TupleIndex::find(std::span<const ElemId> tuple) const {
  if (slots_.empty() || tuple.size() != n_) return -1;
  std::uint64_t s = hash_tuple(tuple) & mask_;
  while (slots_[s] != 0) {
    std::size_t id = slots_[s] - 1;
    if (std::equal(tuple.begin(), tuple.end(), data_->begin() + static_cast<std::ptrdiff_t>(id * n_))) {
      return static_cast<std::int64_t>(id);
    }
    s = (s + 1) & mask_;
  }
  return -1;
}

AutGroup acting_group(const HurwitzParameter& h, FiberMode mode) {
  if (mode == FiberMode::kInn) return inner_automorphisms(*h.group, h.group_classes);
  AutGroup aut = automorphism_group(*h.group, h.group_classes);
  return aut_fixing_classes(aut, h.classes);
}

Fiber::Fiber(const HurwitzParameter& h, const TupleSet& tuples, FiberMode mode, const AutGroup& acting)
    : h_(h), mode_(mode), acting_(acting), canon_(h.group, acting) {
  const std::size_t n = h.n;
  const std::size_t count = tuples.size();
  tuple_count_ = count;
  std::vector<ElemId> canon(tuples.data);

#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < count; ++t) {
    canon_.canonicalize(std::span<ElemId>(canon.data() + t * n, n));
  }

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(canon.begin() + a * n, canon.begin() + (a + 1) * n,
                                        canon.begin() + b * n, canon.begin() + (b + 1) * n);
  };
  auto same = [&](std::size_t a, std::size_t b) {
    return std::equal(canon.begin() + a * n, canon.begin() + (a + 1) * n, canon.begin() + b * n);
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0 && same(order[i], order[i - 1])) continue;
    points_.insert(points_.end(), canon.begin() + order[i] * n, canon.begin() + (order[i] + 1) * n);
    ++count_;
  }
  index_ = TupleIndex(&points_, n);
}

std::int64_t Fiber::locate(std::span<const ElemId> tuple) const {
  std::vector<ElemId> t = canon_.canonical(tuple);
  return index_.find(t);
}

std::unique_ptr<Fiber> build_fiber(const HurwitzParameter& h, const TupleSet& tuples, FiberMode mode) {
  return std::make_unique<Fiber>(h, tuples, mode, acting_group(h, mode));
}

namespace {

Point image_of(const Fiber& fiber, std::size_t i, const BraidWord& word, std::vector<ElemId>& scratch) {
  auto p = fiber.point(i);
  scratch.assign(p.begin(), p.end());
  apply_word(fiber.group(), scratch, word);
  std::int64_t j = fiber.locate(scratch);
  if (j < 0) {
    throw InternalError("braid image of point " + std::to_string(i) + " under " + word.name +
                        " is not in the fiber");
  }
  return static_cast<Point>(j);
}

}  // namespace

Permutation induced_permutation_serial(const Fiber& fiber, const BraidWord& word) {
  std::vector<Point> images(fiber.size());
  std::vector<ElemId> scratch;
  for (std::size_t i = 0; i < fiber.size(); ++i) images[i] = image_of(fiber, i, word, scratch);
  return Permutation(std::move(images));
}

Permutation induced_permutation(const Fiber& fiber, const BraidWord& word) {
  const std::size_t size = fiber.size();
  std::vector<Point> images(size);
  bool failed = false;
  std::string message;
#pragma omp parallel
  {
    std::vector<ElemId> scratch;
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < size; ++i) {
      try {
        images[i] = image_of(fiber, i, word, scratch);
      } catch (const InternalError& e) {
#pragma omp critical
        {
          failed = true;
          message = e.what();
        }
      }
    }
  }
  if (failed) throw InternalError(message);
  return Permutation(std::move(images));
}

std::vector<Permutation> induced_permutations(const Fiber& fiber, std::span<const BraidWord> words) {
  std::vector<Permutation> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(induced_permutation(fiber, w));
  return out;
}

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<ElemId>& t) const { return hash_tuple(t); }
};

}  // namespace

std::vector<std::uint32_t> orbits_via_full_braid_group(const Fiber& fiber) {
  const FiniteGroup& group = fiber.group();
  const HurwitzParameter& h = fiber.parameter();
  const std::size_t n = h.n;
  auto pos = h.position_class();
  std::vector<std::int32_t> class_of(group.size(), -1);
  for (std::size_t i = 0; i < h.classes.size(); ++i) {
    for (ElemId e : h.classes[i].members) class_of[e] = static_cast<std::int32_t>(i);
  }
  auto in_block_order = [&](const std::vector<ElemId>& t) {
    for (std::size_t k = 0; k < n; ++k) {
      if (class_of[t[k]] != static_cast<std::int32_t>(pos[k])) return false;
    }
    return true;
  };

  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> comp(fiber.size(), kUnset);
  std::unordered_set<std::vector<ElemId>, TupleHash> seen;
  std::uint32_t next = 0;
  for (std::size_t start = 0; start < fiber.size(); ++start) {
    if (comp[start] != kUnset) continue;
    std::vector<ElemId> s(fiber.point(start).begin(), fiber.point(start).end());
    std::vector<std::vector<ElemId>> queue{s};
    seen.insert(s);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      std::vector<ElemId> cur = queue[q];
      if (in_block_order(cur)) {
        std::int64_t id = fiber.locate(cur);
        if (id < 0) throw InternalError("block-ordered tuple missing from the fiber");
        comp[static_cast<std::size_t>(id)] = next;
      }
      for (std::size_t i = 1; i < n; ++i) {
        for (bool inv : {false, true}) {
          std::vector<ElemId> t = cur;
          apply_sigma(group, t, i, inv);
          fiber.canonicalizer().canonicalize(t);
          if (seen.insert(t).second) queue.push_back(std::move(t));
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace hurwitz
