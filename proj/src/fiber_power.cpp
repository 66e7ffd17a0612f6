#include "hurwitz/fiber_power.hpp"

#include "hurwitz/errors.hpp"
#include "hurwitz/group_analysis.hpp"

namespace hurwitz {

Permutation FiberPowerGroup::projection(const Permutation& x, std::size_t c) const {
  const std::size_t d = base.degree();
  std::vector<Point> img(d);
  for (std::size_t i = 0; i < d; ++i) img[i] = x[static_cast<Point>(c * d + i)] - static_cast<Point>(c * d);
  return Permutation(std::move(img));
}

Permutation embed_coordinates(std::span<const Permutation> coords) {
  if (coords.empty()) return Permutation();
  const std::size_t d = coords.front().degree();
  std::vector<Point> img(d * coords.size());
  for (std::size_t c = 0; c < coords.size(); ++c) {
    if (coords[c].degree() != d) throw InputError("coordinates have different degrees");
    for (std::size_t i = 0; i < d; ++i) img[c * d + i] = static_cast<Point>(c * d + coords[c][static_cast<Point>(i)]);
  }
  return Permutation::unchecked(std::move(img));
}

FiberPowerGroup fiber_power_group(const FiniteGroup& group, std::size_t k, std::size_t max_k) {
  if (k < 1) throw InputError("fiber power needs k >= 1");
  if (k > max_k) throw InputError("fiber power k = " + std::to_string(k) + " exceeds the cap " + std::to_string(max_k));
  FiberPowerGroup out;
  out.base = group.perm_group();
  out.k = k;
  const std::size_t d = group.degree();
  std::vector<Permutation> gens;
  for (ElemId g : group.generators()) {
    std::vector<Permutation> coords(k, group.element(g));
    gens.push_back(embed_coordinates(coords));
  }
  ElementSet derived = derived_set(group);
  for (ElemId g : group.generators_of(derived)) {
    for (std::size_t c = 1; c < k; ++c) {
      std::vector<Permutation> coords(k, Permutation(d));
      coords[c] = group.element(g);
      gens.push_back(embed_coordinates(coords));
    }
  }
  out.realized = PermGroup(d * k, std::move(gens));
  BigInt expected = group.size();
  for (std::size_t c = 1; c < k; ++c) expected *= derived.count();
  if (out.realized.order() != expected) throw InternalError("fiber power group has the wrong order");
  return out;
}

bool row_span_check(const HurwitzParameter& h, const FiberPowerGroup& power,
                    std::span<const std::span<const ElemId>> tuples, bool require_unambiguous) {
  for (const auto& cls : h.classes) {
    if (require_unambiguous && is_ambiguous(*h.group, cls)) {
      throw UnsupportedError("row span check: class " + cls.representative.to_cycles() + " is ambiguous");
    }
  }
  if (tuples.size() != power.k) throw InputError("row span check needs exactly k tuples");
  std::vector<Permutation> rows;
  for (std::size_t j = 0; j < h.n; ++j) {
    std::vector<Permutation> coords;
    for (const auto& t : tuples) {
      if (t.size() != h.n) throw InputError("row span check: tuple has the wrong length");
      coords.push_back(h.group->element(t[j]));
    }
    rows.push_back(embed_coordinates(coords));
  }
  PermGroup sub(power.realized.degree(), std::move(rows));
  return sub.order() == power.realized.order();
}

}  // namespace hurwitz
