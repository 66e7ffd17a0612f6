#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "hurwitz/covers.hpp"
#include "hurwitz/finite_group.hpp"
#include "hurwitz/io.hpp"
#include "oracle.hpp"

namespace testing_support {

inline std::filesystem::path data_dir() { return HURWITZ_TEST_DATA; }

inline std::filesystem::path data(const std::string& rel) { return data_dir() / rel; }

inline std::shared_ptr<hurwitz::FiniteGroup> group(const std::string& name) {
  hurwitz::NamedGroup ng = hurwitz::resolve_group(name, data_dir(), data_dir());
  return std::make_shared<hurwitz::FiniteGroup>(hurwitz::FiniteGroup::materialize(ng.group));
}

inline hurwitz::LoadedParameter parameter(const std::string& file) {
  return hurwitz::load_parameter_file(data("params/" + file), data_dir());
}

inline hurwitz::CentralExtension cover(const std::string& file,
                                       std::shared_ptr<const hurwitz::FiniteGroup> base = nullptr) {
  return hurwitz::load_cover_file(data("covers/" + file), data_dir(), std::move(base));
}

inline oracle::P to_oracle(const hurwitz::Permutation& p) {
  oracle::P out;
  for (auto x : p.images()) out.push_back(static_cast<int>(x));
  return out;
}

inline hurwitz::Permutation from_oracle(const oracle::P& p) {
  std::vector<hurwitz::Point> img;
  for (int x : p) img.push_back(static_cast<hurwitz::Point>(x));
  return hurwitz::Permutation(img);
}

/// Class of `g` whose representative has cycle type `parts` (fixed points omitted).
inline const hurwitz::ConjugacyClass& class_by_type(const std::vector<hurwitz::ConjugacyClass>& classes,
                                                   std::vector<std::size_t> parts, std::uint32_t order = 0) {
  for (const auto& c : classes) {
    auto ct = c.representative.cycle_type();
    std::erase(ct, std::size_t{1});
    if (ct == parts && (order == 0 || c.element_order == order)) return c;
  }
  throw std::runtime_error("no class with that cycle type");
}

inline const std::vector<std::string>& bundled_groups() {
  static const std::vector<std::string> names{"S4", "S5", "S6", "A5", "PGL27.json", "SL25.json"};
  return names;
}

}  // namespace testing_support
