#include "hurwitz/braid.hpp"

#include <algorithm>
#include <cstdlib>

#include "hurwitz/errors.hpp"

namespace hurwitz {

BraidWord BraidWord::inverse() const {
  BraidWord w;
  w.letters.assign(letters.rbegin(), letters.rend());
  for (int& l : w.letters) l = -l;
  w.name = name + "^-1";
  return w;
}

namespace {

void check_index(std::size_t n, std::size_t i) {
  if (i < 1 || i + 1 > n) {
    throw InputError("braid generator index " + std::to_string(i) + " out of range for " +
                     std::to_string(n) + " strands");
  }
}

}  // namespace

void apply_sigma(const FiniteGroup& group, std::span<ElemId> tuple, std::size_t i, bool inverse) {
  check_index(tuple.size(), i);
  ElemId& a = tuple[i - 1];
  ElemId& b = tuple[i];
  if (!inverse) {
    ElemId moved = group.conj(a, b);
    a = b;
    b = moved;
  } else {
    ElemId moved = group.mul(group.mul(a, b), group.inv(a));
    b = a;
    a = moved;
  }
}

std::vector<Permutation> apply_sigma(std::span<const Permutation> tuple, std::size_t i, bool inverse) {
  check_index(tuple.size(), i);
  std::vector<Permutation> out(tuple.begin(), tuple.end());
  const Permutation& a = tuple[i - 1];
  const Permutation& b = tuple[i];
  if (!inverse) {
    out[i - 1] = b;
    out[i] = conjugate(a, b);
  } else {
    out[i - 1] = conjugate(b, a.inverse());
    out[i] = a;
  }
  return out;
}

void apply_word(const FiniteGroup& group, std::span<ElemId> tuple, const BraidWord& word) {
  for (int l : word.letters) apply_sigma(group, tuple, static_cast<std::size_t>(std::abs(l)), l < 0);
}

std::vector<Permutation> apply_word(std::span<const Permutation> tuple, const BraidWord& word) {
  std::vector<Permutation> cur(tuple.begin(), tuple.end());
  for (int l : word.letters) cur = apply_sigma(cur, static_cast<std::size_t>(std::abs(l)), l < 0);
  return cur;
}

BraidWord pure_braid_generator(std::size_t i, std::size_t j) {
  if (i < 1 || j <= i) throw InputError("A_ij needs 1 <= i < j");
  BraidWord w;
  for (std::size_t k = j - 1; k > i; --k) w.letters.push_back(static_cast<int>(k));
  w.letters.push_back(static_cast<int>(i));
  w.letters.push_back(static_cast<int>(i));
  for (std::size_t k = i + 1; k < j; ++k) w.letters.push_back(-static_cast<int>(k));
  w.name = "A" + std::to_string(i) + "," + std::to_string(j);
  return w;
}

std::vector<BraidWord> braid_nu_generators(std::span<const std::size_t> nu) {
  std::size_t n = 0;
  for (std::size_t v : nu) n += v;
  std::vector<BraidWord> gens;
  std::size_t start = 1;
  for (std::size_t v : nu) {
    for (std::size_t i = start; i + 1 < start + v; ++i) {
      gens.push_back({{static_cast<int>(i)}, "s" + std::to_string(i)});
    }
    start += v;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) gens.push_back(pure_braid_generator(i, j));
  }
  return gens;
}

std::vector<BraidWord> braid_n_generators(std::size_t n) {
  std::vector<BraidWord> gens;
  for (std::size_t i = 1; i < n; ++i) gens.push_back({{static_cast<int>(i)}, "s" + std::to_string(i)});
  return gens;
}

}  // namespace hurwitz
