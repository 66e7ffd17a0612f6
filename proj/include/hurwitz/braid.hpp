#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hurwitz/finite_group.hpp"
#include "hurwitz/perm.hpp"

namespace hurwitz {

/// A braid word. Letter +i is sigma_i, -i is sigma_i^-1 (1-based). Letters
/// are applied to a tuple left to right.
struct BraidWord {
  std::vector<int> letters;
  std::string name;

  /// Reversed word with inverted letters.
  BraidWord inverse() const;
};

/// sigma_i on positions i, i+1 (1-based):
///   (g_i, g_{i+1}) -> (g_{i+1}, g_{i+1}^-1 g_i g_{i+1}),
/// and the inverse (g_i, g_{i+1}) -> (g_i g_{i+1} g_i^-1, g_i).
/// Throws InputError if i is not in 1..n-1.
void apply_sigma(const FiniteGroup& group, std::span<ElemId> tuple, std::size_t i, bool inverse);
std::vector<Permutation> apply_sigma(std::span<const Permutation> tuple, std::size_t i, bool inverse);

void apply_word(const FiniteGroup& group, std::span<ElemId> tuple, const BraidWord& word);
std::vector<Permutation> apply_word(std::span<const Permutation> tuple, const BraidWord& word);

/// A_ij = (s_{j-1} ... s_{i+1}) s_i^2 (s_{i+1}^-1 ... s_{j-1}^-1), 1 <= i < j <= n.
BraidWord pure_braid_generator(std::size_t i, std::size_t j);

/// Generators of Br_nu: sigma_i for adjacent positions inside one block,
/// then every A_ij.
std::vector<BraidWord> braid_nu_generators(std::span<const std::size_t> nu);

/// sigma_1, ..., sigma_{n-1}.
std::vector<BraidWord> braid_n_generators(std::size_t n);

}  // namespace hurwitz
