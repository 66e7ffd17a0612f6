#include "hurwitz/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hurwitz/errors.hpp"

#ifndef HURWITZ_DATA_DIR
#define HURWITZ_DATA_DIR "data"
#endif

namespace hurwitz {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_digest(const fs::path& path) { return fnv1a_hex(read_file(path)); }

fs::path default_data_dir() {
  if (const char* env = std::getenv("HURWITZ_DATA")) return env;
  return HURWITZ_DATA_DIR;
}

namespace {

json parse_json(const fs::path& path) {
  std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": malformed JSON: " + e.what());
  }
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + "/" + key + ": missing");
  return *it;
}

std::vector<Permutation> parse_cycles_list(const json& arr, std::size_t degree, const std::string& where) {
  if (!arr.is_array()) throw InputError(where + ": expected an array of cycle strings");
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string at = where + "/" + std::to_string(i);
    if (!arr[i].is_string()) throw InputError(at + ": expected a cycle string");
    try {
      out.push_back(Permutation::from_cycles(arr[i].get<std::string>(), degree));
    } catch (const InputError& e) {
      throw InputError(at + ": " + e.what());
    }
  }
  return out;
}

std::size_t max_point(const json& arr) {
  std::size_t m = 0;
  for (const auto& s : arr) {
    if (!s.is_string()) continue;
    std::string text = s.get<std::string>();
    std::size_t v = 0;
    bool in_num = false;
    for (char c : text) {
      if (c >= '0' && c <= '9') {
        v = v * 10 + static_cast<std::size_t>(c - '0');
        in_num = true;
      } else {
        if (in_num) m = std::max(m, v);
        v = 0;
        in_num = false;
      }
    }
    if (in_num) m = std::max(m, v);
  }
  return m;
}

std::optional<NamedGroup> builtin_group(const std::string& ref) {
  if (ref.size() < 2) return std::nullopt;
  char kind = ref[0];
  if (kind != 'S' && kind != 'A' && kind != 'C') return std::nullopt;
  std::string digits = ref.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
  std::size_t n = std::stoul(digits);
  if (n == 0 || n > 1000) return std::nullopt;
  if (kind == 'S') return NamedGroup{ref, PermGroup::symmetric(n)};
  if (kind == 'A') return NamedGroup{ref, PermGroup::alternating(n)};
  return NamedGroup{ref, PermGroup::cyclic(n)};
}

}  // namespace

NamedGroup load_group_file(const fs::path& path) {
  json j = parse_json(path);
  std::string where = path.string() + "#";
  const json& gens = member(j, "generators", where);
  std::size_t degree = j.contains("degree") ? j["degree"].get<std::size_t>() : max_point(gens);
  NamedGroup out;
  out.name = j.value("name", path.stem().string());
  out.group = PermGroup(degree, parse_cycles_list(gens, degree, where + "/generators"));
  return out;
}

NamedGroup resolve_group(const std::string& ref, const fs::path& relative_to, const fs::path& data_dir) {
  if (auto g = builtin_group(ref)) return *g;
  std::vector<fs::path> candidates{relative_to / ref, data_dir / "groups" / ref,
                                   data_dir / "groups" / (ref + ".json")};
  for (const auto& c : candidates) {
    if (fs::is_regular_file(c)) return load_group_file(c);
  }
  throw InputError("unknown group '" + ref + "'");
}

Permutation select_class(const FiniteGroup& group, std::span<const ConjugacyClass> classes, const json& selector,
                         const std::string& pointer) {
  if (selector.is_string()) {
    try {
      Permutation p = Permutation::from_cycles(selector.get<std::string>(), group.degree());
      if (!group.find(p)) throw InputError("representative is not in the group");
      return p;
    } catch (const InputError& e) {
      throw InputError(pointer + ": " + e.what());
    }
  }
  if (!selector.is_object()) throw InputError(pointer + ": class selector must be a string or an object");
  std::optional<std::uint64_t> order;
  if (selector.contains("order")) order = selector["order"].get<std::uint64_t>();
  std::optional<std::vector<std::size_t>> type;
  if (selector.contains("cycle_type")) {
    std::vector<std::size_t> t = selector["cycle_type"].get<std::vector<std::size_t>>();
    std::erase(t, std::size_t{1});
    std::sort(t.rbegin(), t.rend());
    type = t;
  }
  std::vector<const ConjugacyClass*> matches;
  for (const auto& c : classes) {
    if (order && c.element_order != *order) continue;
    if (type) {
      std::vector<std::size_t> ct = c.representative.cycle_type();
      std::erase(ct, std::size_t{1});
      if (ct != *type) continue;
    }
    matches.push_back(&c);
  }
  if (matches.empty()) throw InputError(pointer + ": selector matches no class");
  if (matches.size() > 1) {
    throw InputError(pointer + ": selector matches " + std::to_string(matches.size()) +
                     " classes; give an explicit representative");
  }
  return matches.front()->representative;
}

namespace {

struct ParsedClasses {
  std::string where;
  json doc;
  NamedGroup named;
  std::shared_ptr<FiniteGroup> group;
  std::vector<Permutation> reps;
};

ParsedClasses parse_classes(const fs::path& path, const fs::path& data_dir, std::size_t element_cap) {
  ParsedClasses out;
  out.doc = parse_json(path);
  out.where = path.string() + "#";
  const json& gref = member(out.doc, "group", out.where);
  if (!gref.is_string()) throw InputError(out.where + "/group: expected a string");
  out.named = resolve_group(gref.get<std::string>(), path.parent_path(), data_dir);
  out.group = std::make_shared<FiniteGroup>(FiniteGroup::materialize(out.named.group, element_cap));
  std::vector<ConjugacyClass> classes = conjugacy_classes(*out.group);
  const json& sel = member(out.doc, "classes", out.where);
  if (!sel.is_array()) throw InputError(out.where + "/classes: expected an array");
  for (std::size_t i = 0; i < sel.size(); ++i) {
    out.reps.push_back(select_class(*out.group, classes, sel[i], out.where + "/classes/" + std::to_string(i)));
  }
  return out;
}

std::optional<fs::path> cover_ref(const json& doc, const fs::path& path) {
  if (!doc.contains("cover")) return std::nullopt;
  return path.parent_path() / doc["cover"].get<std::string>();
}

}  // namespace

LoadedParameter load_parameter_file(const fs::path& path, const fs::path& data_dir, std::size_t element_cap) {
  ParsedClasses pc = parse_classes(path, data_dir, element_cap);
  const std::string& where = pc.where;
  const json& nu_j = member(pc.doc, "nu", where);
  if (!nu_j.is_array()) throw InputError(where + "/nu: expected an array");
  std::vector<std::size_t> nu;
  for (std::size_t i = 0; i < nu_j.size(); ++i) {
    if (!nu_j[i].is_number_integer() || nu_j[i].get<std::int64_t>() <= 0) {
      throw InputError(where + "/nu/" + std::to_string(i) + ": expected a positive integer");
    }
    nu.push_back(nu_j[i].get<std::size_t>());
  }

  LoadedParameter out;
  out.group_name = pc.named.name;
  try {
    out.parameter = validate_parameter(pc.group, pc.reps, nu);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  out.cover_path = cover_ref(pc.doc, path);
  return out;
}

LoadedClassList load_class_list_file(const fs::path& path, const fs::path& data_dir, std::size_t element_cap) {
  ParsedClasses pc = parse_classes(path, data_dir, element_cap);
  LoadedClassList out;
  out.group_name = pc.named.name;
  out.group = pc.group;
  std::vector<ConjugacyClass> all = conjugacy_classes(*pc.group);
  std::vector<std::size_t> seen;
  for (std::size_t i = 0; i < pc.reps.size(); ++i) {
    std::string at = pc.where + "/classes/" + std::to_string(i);
    ElemId id = pc.group->id_of(pc.reps[i]);
    if (id == FiniteGroup::identity()) throw InputError(at + ": identity class in class list");
    std::size_t ci = class_index_of(all, id);
    if (std::find(seen.begin(), seen.end(), ci) != seen.end()) throw InputError(at + ": duplicate class");
    seen.push_back(ci);
    out.classes.push_back(all[ci]);
  }
  if (out.classes.empty()) throw InputError(pc.where + "/classes: empty class list");
  out.cover_path = cover_ref(pc.doc, path);
  return out;
}

CentralExtension load_cover_file(const fs::path& path, const fs::path& data_dir,
                                 std::shared_ptr<const FiniteGroup> base, std::size_t element_cap) {
  json j = parse_json(path);
  std::string where = path.string() + "#";
  if (!base) {
    const json& bref = member(j, "base_group", where);
    NamedGroup ng = resolve_group(bref.get<std::string>(), path.parent_path(), data_dir);
    base = std::make_shared<FiniteGroup>(FiniteGroup::materialize(ng.group, element_cap));
  }
  const json& cg = member(j, "cover_generators", where);
  const json& ig = member(j, "image_generators", where);
  std::size_t degree = j.contains("cover_degree") ? j["cover_degree"].get<std::size_t>() : max_point(cg);
  auto cover_gens = parse_cycles_list(cg, degree, where + "/cover_generators");
  auto image_gens = parse_cycles_list(ig, base->degree(), where + "/image_generators");
  try {
    return load_extension(std::move(cover_gens), std::move(image_gens), base, element_cap);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

}  // namespace hurwitz
