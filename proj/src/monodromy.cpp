#include "hurwitz/monodromy.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include <boost/dynamic_bitset.hpp>

#include "hurwitz/errors.hpp"
#include "hurwitz/perm_group.hpp"
#include "hurwitz/stab_chain.hpp"

namespace hurwitz {

std::vector<std::size_t> OrbitPartition::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& o : orbits) out.push_back(o.size());
  return out;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<Permutation> restrict_gens(std::span<const Permutation> gens, std::span<const Point> points) {
  std::vector<Permutation> out;
  if (gens.empty()) return out;
  constexpr Point kOutside = std::numeric_limits<Point>::max();
  std::vector<Point> where(gens.front().degree(), kOutside);
  for (std::size_t i = 0; i < points.size(); ++i) where[points[i]] = static_cast<Point>(i);
  for (const auto& g : gens) {
    std::vector<Point> img(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      img[i] = where[g[points[i]]];
      if (img[i] == kOutside) throw InternalError("point set is not invariant");
    }
    out.push_back(Permutation::unchecked(std::move(img)));
  }
  return out;
}

bool is_odd(const Permutation& g) {
  std::size_t t = 0;
  for (std::size_t c : g.cycle_type()) t += c - 1;
  return t % 2 == 1;
}

// Order of the alternating group, or 1 below degree 2.
BigInt alternating_order(std::size_t m) { return m < 2 ? BigInt{1} : factorial(m) / 2; }

// |G| for G = <gens> on `degree` points; `bound` must be a proven upper bound.
BigInt chain_order(std::size_t degree, std::span<const Permutation> gens, const MonodromyOptions& options,
                   std::optional<BigInt> bound = std::nullopt) {
  StabChain::Options o;
  o.memory_budget_bytes = options.memory_budget_bytes;
  o.order_upper_bound = std::move(bound);
  return StabChain::build(degree, gens, o).order();
}

// Transitive group on m points. The bound is A_m or S_m by parity; with a
// block system of k blocks of size b it is also cut to the part of
// S_b wr S_k over the (recursively computed) block action whose point sign
// and block sign lie in the span of the generators' signs.
BigInt transitive_order(std::size_t m, std::span<const Permutation> gens, const MonodromyOptions& options) {
  bool odd = std::any_of(gens.begin(), gens.end(), [](const Permutation& g) { return is_odd(g); });
  BigInt bound = odd ? factorial(m) : alternating_order(m);
  if (m >= 4) {
    if (auto sys = block_system(m, gens)) {
      const std::size_t k = sys->size(), b = m / k;
      std::vector<Point> block_of(m);
      for (std::size_t i = 0; i < k; ++i) {
        for (Point x : (*sys)[i]) block_of[x] = static_cast<Point>(i);
      }
      std::vector<Permutation> on_blocks;
      std::set<unsigned> signs;
      bool odd_on_blocks = false;
      for (const auto& g : gens) {
        std::vector<Point> img(k);
        for (std::size_t i = 0; i < k; ++i) img[i] = block_of[g[(*sys)[i].front()]];
        on_blocks.push_back(Permutation::unchecked(std::move(img)));
        bool e2 = is_odd(on_blocks.back());
        odd_on_blocks = odd_on_blocks || e2;
        signs.insert((is_odd(g) ? 1U : 0U) | (e2 ? 2U : 0U));
      }
      // Rank of the sign vectors in F2^2.
      signs.erase(0U);
      std::size_t rank = std::min<std::size_t>(signs.size(), 2);
      BigInt imp = transitive_order(k, on_blocks, options) * pow(factorial(b), static_cast<unsigned>(k));
      imp = (imp << rank) / (odd_on_blocks ? 4 : 2);
      bound = std::min(bound, imp);
    }
  }
  return chain_order(m, gens, options, bound);
}

// Orders of the orbit restrictions and the F2-rank of the generators' sign
// vectors (one coordinate per orbit).
struct OrbitData {
  std::vector<std::vector<Permutation>> restricted;
  std::vector<BigInt> orders;
  std::vector<bool> has_odd;
  std::size_t sign_rank = 0;

  // G embeds in prod (G_i cap A_i) extended by the sign image.
  BigInt order_bound() const {
    BigInt b = BigInt{1} << sign_rank;
    for (std::size_t i = 0; i < orders.size(); ++i) b *= has_odd[i] ? orders[i] / 2 : orders[i];
    return b;
  }
};

OrbitData orbit_data(std::span<const Permutation> gens, const OrbitPartition& partition,
                     const MonodromyOptions& options) {
  OrbitData d;
  const std::size_t k = partition.orbits.size();
  std::vector<boost::dynamic_bitset<>> rows;
  for (std::size_t g = 0; g < gens.size(); ++g) rows.emplace_back(k);
  d.has_odd.assign(k, false);
  for (std::size_t o = 0; o < k; ++o) {
    d.restricted.push_back(restrict_gens(gens, partition.orbits[o]));
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (is_odd(d.restricted[o][g])) {
        rows[g].set(o);
        d.has_odd[o] = true;
      }
    }
    d.orders.push_back(transitive_order(partition.orbits[o].size(), d.restricted[o], options));
  }
  for (std::size_t col = 0, r = 0; col < k && r < rows.size(); ++col) {
    auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                              [col](const auto& row) { return row.test(col); });
    if (pivot == rows.end()) continue;
    std::swap(rows[r], *pivot);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i].test(col)) rows[i] ^= rows[r];
    }
    d.sign_rank = ++r;
  }
  return d;
}

// True when G contains the product of the alternating groups of its orbits.
bool contains_alternating_product(const OrbitPartition& partition, const OrbitData& d, const BigInt& order) {
  BigInt alt = BigInt{1} << d.sign_rank;
  for (const auto& orbit : partition.orbits) alt *= alternating_order(orbit.size());
  return order == alt;
}

bool quasi_full_by_stabilizers(std::size_t points, std::span<const Permutation> gens,
                               const OrbitPartition& partition, const BigInt& bound,
                               const MonodromyOptions& options) {
  for (std::size_t o = 0; o < partition.orbits.size(); ++o) {
    const auto& orbit = partition.orbits[o];
    StabChain::Options opts;
    opts.memory_budget_bytes = options.memory_budget_bytes;
    opts.order_upper_bound = bound;
    for (Point x = 0; x < points; ++x) {
      if (partition.orbit_of[x] != o) opts.base_prefix.push_back(x);
    }
    StabChain chain = StabChain::build(points, gens, opts);
    std::vector<Permutation> stab = chain.generators_at(std::min(opts.base_prefix.size(), chain.depth()));
    std::vector<Permutation> restricted = restrict_gens(stab, orbit);
    // The stabilizer's orbits on this orbit need not be transitive.
    if (!is_full_order(chain_order(orbit.size(), restricted, options), orbit.size())) return false;
  }
  return true;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

OrbitPartition braid_orbits(std::size_t points, std::span<const Permutation> gens) {
  UnionFind uf(points);
  for (const auto& g : gens) {
    for (Point x = 0; x < points; ++x) uf.unite(x, g[x]);
  }
  OrbitPartition out;
  out.orbit_of.assign(points, 0);
  std::map<std::size_t, std::uint32_t> id;
  for (Point x = 0; x < points; ++x) {
    std::size_t r = uf.find(x);
    auto [it, inserted] = id.emplace(r, static_cast<std::uint32_t>(out.orbits.size()));
    if (inserted) out.orbits.emplace_back();
    out.orbit_of[x] = it->second;
    out.orbits[it->second].push_back(x);
  }
  out.labels.assign(out.orbits.size(), std::nullopt);
  return out;
}

void attach_labels(OrbitPartition& partition, std::span<const KernelElem> point_labels) {
  partition.labels.assign(partition.orbits.size(), std::nullopt);
  for (std::size_t o = 0; o < partition.orbits.size(); ++o) {
    for (Point x : partition.orbits[o]) {
      if (!partition.labels[o]) {
        partition.labels[o] = point_labels[x];
      } else if (*partition.labels[o] != point_labels[x]) {
        throw InternalError("lifting label is not constant on a braid orbit");
      }
    }
  }
}

bool is_full_order(const BigInt& order, std::size_t m) {
  if (m <= 2) return true;
  BigInt f = factorial(m);
  return order == f || order * 2 == f;
}

std::optional<std::vector<std::vector<Point>>> block_system(std::size_t m, std::span<const Permutation> gens) {
  std::optional<std::vector<std::vector<Point>>> best;
  for (Point b = 1; b < m; ++b) {
    UnionFind uf(m);
    uf.unite(0, b);
    std::vector<std::pair<Point, Point>> queue{{0, b}};
    while (!queue.empty()) {
      auto [x, y] = queue.back();
      queue.pop_back();
      for (const auto& g : gens) {
        std::size_t a = uf.find(g[x]);
        std::size_t c = uf.find(g[y]);
        if (a != c) {
          uf.unite(a, c);
          queue.emplace_back(static_cast<Point>(a), static_cast<Point>(c));
        }
      }
    }
    std::map<std::size_t, std::vector<Point>> classes;
    for (Point x = 0; x < m; ++x) classes[uf.find(x)].push_back(x);
    if (classes.size() == 1) continue;
    if (best && best->size() >= classes.size()) continue;
    std::vector<std::vector<Point>> sys;
    for (auto& [r, pts] : classes) sys.push_back(std::move(pts));
    best = std::move(sys);
  }
  return best;
}

bool quasi_fullness(std::size_t points, std::span<const Permutation> gens, const OrbitPartition& partition,
                    const MonodromyOptions& options) {
  OrbitData d = orbit_data(gens, partition, options);
  for (std::size_t o = 0; o < partition.orbits.size(); ++o) {
    if (!is_full_order(d.orders[o], partition.orbits[o].size())) return false;
  }
  BigInt bound = d.order_bound();
  if (contains_alternating_product(partition, d, chain_order(points, gens, options, bound))) return true;
  return quasi_full_by_stabilizers(points, gens, partition, bound, options);
}

MonodromyReport monodromy_group(std::size_t points, std::span<const Permutation> gens,
                                const MonodromyOptions& options) {
  MonodromyReport report;
  report.fiber_size = points;
  report.generators.assign(gens.begin(), gens.end());
  report.partition = braid_orbits(points, gens);
  OrbitData d = orbit_data(gens, report.partition, options);
  BigInt bound = d.order_bound();
  report.group_order = chain_order(points, gens, options, bound);
  bool all_full = true;
  for (std::size_t o = 0; o < report.partition.orbits.size(); ++o) {
    const auto& orbit = report.partition.orbits[o];
    OrbitVerdict v;
    v.size = orbit.size();
    v.order = d.orders[o];
    v.full = is_full_order(v.order, orbit.size());
    if (!v.full) {
      if (auto sys = block_system(orbit.size(), d.restricted[o])) {
        for (auto& block : *sys) {
          for (Point& x : block) x = orbit[x];
        }
        v.blocks = std::move(sys);
      }
    }
    all_full = all_full && v.full;
    report.per_orbit.push_back(std::move(v));
  }
  if (!all_full) {
    report.quasi_full = false;
  } else if (report.partition.orbits.size() == 1 ||
             contains_alternating_product(report.partition, d, report.group_order)) {
    report.quasi_full = true;
  } else {
    report.quasi_full = quasi_full_by_stabilizers(points, gens, report.partition, bound, options);
  }
  return report;
}

bool jordan_witness(std::size_t m, std::span<const Permutation> gens, std::mt19937_64& rng, std::size_t tries) {
  if (m < 5) return false;
  if (block_system(m, gens)) return false;
  StabChain chain = StabChain::build(m, gens);
  for (std::size_t t = 0; t < tries; ++t) {
    Permutation g = chain.random_element(rng);
    std::vector<std::size_t> ct = g.cycle_type();
    for (std::size_t p : ct) {
      if (!is_prime(p) || p + 3 > m) continue;
      std::size_t same = static_cast<std::size_t>(std::count(ct.begin(), ct.end(), p));
      bool coprime = true;
      std::uint64_t l = 1;
      for (std::size_t c : ct) {
        if (c == p) continue;
        if (c % p == 0) coprime = false;
        l = l / gcd_u64(l, c) * c;
      }
      if (same != 1 || !coprime) continue;
      std::vector<std::size_t> power = g.pow(static_cast<std::int64_t>(l)).cycle_type();
      if (power.front() == p && (power.size() == 1 || power[1] == 1)) return true;
    }
  }
  return false;
}

ConwayParkerReport conway_parker_report(const OrbitPartition& partition, std::span<const KernelElem> point_labels) {
  ConwayParkerReport r;
  r.orbit_count = partition.orbits.size();
  std::set<KernelElem> realized(point_labels.begin(), point_labels.end());
  r.label_count = realized.size();
  std::set<KernelElem> carried;
  for (const auto& orbit : partition.orbits) {
    if (!orbit.empty()) carried.insert(point_labels[orbit.front()]);
  }
  r.injective = carried.size() == r.orbit_count;
  r.surjective = carried == realized;
  return r;
}

MassReport mass_report(const HurwitzParameter& h, std::size_t inn_order, std::size_t aut_gc_order,
                       std::optional<std::size_t> actual_inn, std::optional<std::size_t> actual_aut) {
  MassReport r;
  r.numerator = 1;
  for (std::size_t i = 0; i < h.classes.size(); ++i) {
    for (std::size_t k = 0; k < h.nu[i]; ++k) r.numerator *= h.classes[i].size();
  }
  double derived = static_cast<double>(derived_set(*h.group).count());
  double num = r.numerator.convert_to<double>();
  r.predicted_inn = num / (derived * static_cast<double>(inn_order));
  r.predicted_aut = num / (derived * static_cast<double>(aut_gc_order));
  r.actual_inn = actual_inn;
  r.actual_aut = actual_aut;
  if (actual_inn && *actual_inn > 0) r.ratio_inn = r.predicted_inn / static_cast<double>(*actual_inn);
  if (actual_aut && *actual_aut > 0) r.ratio_aut = r.predicted_aut / static_cast<double>(*actual_aut);
  return r;
}

}  // namespace hurwitz
