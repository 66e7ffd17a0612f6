#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hurwitz/covers.hpp"
#include "hurwitz/nielsen.hpp"

namespace hurwitz {

struct NamedGroup {
  std::string name;
  PermGroup group;
};

/// "S<n>", "A<n>", "C<n>" are built in; anything else is a group file,
/// looked up relative to `relative_to` and then under `data_dir`/groups.
NamedGroup resolve_group(const std::string& ref, const std::filesystem::path& relative_to,
                         const std::filesystem::path& data_dir);

/// {"name": ..., "degree": d, "generators": ["(1 2)", ...]}
NamedGroup load_group_file(const std::filesystem::path& path);

/// A representative in cycle notation, or {"order": k, "cycle_type": [...]}
/// which must match exactly one class (fixed points may be omitted).
Permutation select_class(const FiniteGroup& group, std::span<const ConjugacyClass> classes,
                         const nlohmann::json& selector, const std::string& pointer);

struct LoadedParameter {
  std::string group_name;
  HurwitzParameter parameter;
  std::optional<std::filesystem::path> cover_path;
};

/// {"group": name-or-file, "classes": [selectors], "nu": [ints], "cover"?: file}
LoadedParameter load_parameter_file(const std::filesystem::path& path, const std::filesystem::path& data_dir,
                                    std::size_t element_cap = kDefaultElementCap);

/// A list of distinct nonidentity classes of a group, without nu and
/// without the generation requirement: {"group": ..., "classes": [...], "cover"?: file}.
/// Parameter files are accepted too (nu is ignored).
struct LoadedClassList {
  std::string group_name;
  std::shared_ptr<const FiniteGroup> group;
  std::vector<ConjugacyClass> classes;
  std::optional<std::filesystem::path> cover_path;
};

LoadedClassList load_class_list_file(const std::filesystem::path& path, const std::filesystem::path& data_dir,
                                     std::size_t element_cap = kDefaultElementCap);

/// {"cover_generators": [...], "image_generators": [...], "base_group": name-or-file}.
/// The base is taken from `base` when given, otherwise resolved from the file.
CentralExtension load_cover_file(const std::filesystem::path& path, const std::filesystem::path& data_dir,
                                 std::shared_ptr<const FiniteGroup> base = nullptr,
                                 std::size_t element_cap = kDefaultElementCap);

/// FNV-1a over the file contents, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);

/// Data directory compiled into the build, overridable by HURWITZ_DATA.
std::filesystem::path default_data_dir();

}  // namespace hurwitz
