// Command line front end: reads parameter, group and cover files and prints
// JSON reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "hurwitz/covers.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/fiber.hpp"
#include "hurwitz/fiber_power.hpp"
#include "hurwitz/io.hpp"
#include "hurwitz/monodromy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hurwitz;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct RunConfig {
  std::string subcommand;
  std::string input;         // parameter file, or group for `classify`
  std::string cover;         // optional cover file
  std::uint64_t budget_tuples = 100'000'000;
  std::size_t element_cap = kDefaultElementCap;
  std::size_t memory_budget = std::size_t{2} << 30;
  int threads = 0;
  std::string out;
  std::string mode = "aut";
  std::uint64_t seed = 1;
  std::size_t power = 2;
  std::uint64_t max_rows = 1'000'000;
  bool allow_ambiguous = false;
  std::string data_dir;
};

// Partial results travel with the exception so budget failures can still
// print what was computed.
struct BudgetExceeded {
  std::string message;
  json partial;
};

FiberMode parse_mode(const std::string& m) {
  if (m == "inn") return FiberMode::kInn;
  if (m == "aut") return FiberMode::kAutGC;
  throw InputError("--mode must be inn or aut");
}

std::string cycles_1based(const Permutation& p) { return p.to_cycles(); }

json class_json(const ConjugacyClass& c) {
  std::vector<std::size_t> ct = c.representative.cycle_type();
  std::erase(ct, std::size_t{1});
  return {{"representative", c.representative.to_cycles()},
          {"order", c.element_order},
          {"size", c.size()},
          {"cycle_type", ct}};
}

struct Session {
  RunConfig cfg;
  fs::path data_dir;
  LoadedParameter lp;
  std::optional<CentralExtension> cover;
  std::string digest_source;
  json report;

  const HurwitzParameter& h() const { return lp.parameter; }

  void load_parameter(bool want_cover) {
    fs::path p = cfg.input;
    if (!fs::is_regular_file(p)) throw InputError("parameter file not found: " + cfg.input);
    digest_source += read_file(p);
    lp = load_parameter_file(p, data_dir, cfg.element_cap);
    std::optional<fs::path> cp;
    if (!cfg.cover.empty()) {
      cp = fs::path(cfg.cover);
    } else if (lp.cover_path) {
      cp = lp.cover_path;
    }
    if (want_cover && cp) {
      if (!fs::is_regular_file(*cp)) throw InputError("cover file not found: " + cp->string());
      digest_source += read_file(*cp);
      cover = load_cover_file(*cp, data_dir, lp.parameter.group, cfg.element_cap);
    }
    report["parameter"] = parameter_json();
  }

  json parameter_json() const {
    json classes = json::array();
    for (const auto& c : h().classes) classes.push_back(class_json(c));
    return {{"group", lp.group_name}, {"group_order", h().group->size()}, {"classes", classes},
            {"nu", h().nu},           {"n", h().n}};
  }

  TupleSet tuples() {
    EnumerateOptions opts;
    opts.budget = cfg.budget_tuples;
    opts.threads = cfg.threads;
    EnumerateStats stats;
    stats.estimate = enumeration_estimate(h());
    report["budget"] = {{"tuple_budget", cfg.budget_tuples}, {"estimate", stats.estimate}};
    try {
      TupleSet t = enumerate_tuples(h(), opts, &stats);
      report["budget"]["prefix_visits"] = stats.prefix_visits;
      return t;
    } catch (const ResourceError& e) {
      report["budget"]["prefix_visits"] = 0;
      throw BudgetExceeded{e.what(), report};
    }
  }
};

json fiber_sizes(const TupleSet& tuples, const Fiber& inn, const Fiber& aut) {
  return {{"tuples", tuples.size()},
          {"inn", inn.size()},
          {"aut", aut.size()},
          {"inn_order", inn.acting().order()},
          {"aut_gc_order", aut.acting().order()}};
}

std::vector<KernelElem> point_labels(const LiftingInvariant& inv, const Fiber& fiber) {
  std::vector<KernelElem> labels(fiber.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < fiber.size(); ++i) labels[i] = inv.label(fiber.point(i));
  return labels;
}

json label_census(const std::vector<KernelElem>& labels, const CentralExtension& reduced) {
  std::map<KernelElem, std::size_t> census;
  for (KernelElem l : labels) ++census[l];
  json out = json::array();
  for (auto [l, c] : census) {
    out.push_back({{"label", l}, {"kernel_element", reduced.cover->element(reduced.kernel[l]).to_cycles()},
                   {"points", c}});
  }
  return out;
}

int cmd_validate(Session& s) {
  s.load_parameter(false);
  s.report["valid"] = true;
  s.report["budget"] = {{"tuple_budget", s.cfg.budget_tuples}, {"estimate", enumeration_estimate(s.h())}};
  return kExitOk;
}

int cmd_fiber(Session& s) {
  s.load_parameter(false);
  TupleSet t = s.tuples();
  auto inn = build_fiber(s.h(), t, FiberMode::kInn);
  auto aut = build_fiber(s.h(), t, FiberMode::kAutGC);
  s.report["fiber"] = fiber_sizes(t, *inn, *aut);
  return kExitOk;
}

struct Monodromy {
  std::unique_ptr<Fiber> inn;
  std::unique_ptr<Fiber> aut;
  const Fiber* used = nullptr;
  std::vector<Permutation> gens;
  OrbitPartition partition;
  std::optional<CentralExtension> reduced;
  std::vector<KernelElem> labels;
};

Monodromy orbits_common(Session& s) {
  s.load_parameter(true);
  Monodromy m;
  TupleSet t = s.tuples();
  m.inn = build_fiber(s.h(), t, FiberMode::kInn);
  m.aut = build_fiber(s.h(), t, FiberMode::kAutGC);
  FiberMode mode = parse_mode(s.cfg.mode);
  m.used = mode == FiberMode::kInn ? m.inn.get() : m.aut.get();
  s.report["mode"] = to_string(mode);
  s.report["fiber"] = fiber_sizes(t, *m.inn, *m.aut);
  std::vector<BraidWord> words = braid_nu_generators(s.h().nu);
  m.gens = induced_permutations(*m.used, words);
  m.partition = braid_orbits(m.used->size(), m.gens);
  s.report["fiber_size"] = m.used->size();
  s.report["orbit_sizes"] = m.partition.sizes();
  if (s.cover) {
    m.reduced = reduce_cover(*s.cover, s.h().classes);
    LiftingInvariant inv(*m.reduced, s.h());
    m.labels = point_labels(inv, *m.used);
    attach_labels(m.partition, m.labels);
    json per_orbit = json::array();
    for (const auto& l : m.partition.labels) per_orbit.push_back(*l);
    ConwayParkerReport cp = conway_parker_report(m.partition, m.labels);
    s.report["labels"] = {{"reduced_kernel_order", m.reduced->kernel_order()},
                          {"census", label_census(m.labels, *m.reduced)},
                          {"per_orbit", per_orbit},
                          {"bijective_with_orbits", cp.bijective()}};
  }
  return m;
}

int cmd_orbits(Session& s) {
  Monodromy m = orbits_common(s);
  std::vector<std::uint32_t> cross = orbits_via_full_braid_group(*m.used);
  s.report["full_braid_cross_check"] = cross == m.partition.orbit_of;
  if (cross != m.partition.orbit_of) throw InternalError("Br_nu orbits disagree with the full braid group route");
  return kExitOk;
}

json mass_json(const MassReport& r) {
  json out = {{"numerator", to_decimal(r.numerator)},
              {"predicted", {{"inn", r.predicted_inn}, {"aut", r.predicted_aut}}}};
  json actual = json::object();
  json ratio = json::object();
  if (r.actual_inn) actual["inn"] = *r.actual_inn;
  if (r.actual_aut) actual["aut"] = *r.actual_aut;
  if (r.ratio_inn) ratio["inn"] = *r.ratio_inn;
  if (r.ratio_aut) ratio["aut"] = *r.ratio_aut;
  out["actual"] = actual;
  if (ratio.empty()) {
    out["degenerate"] = true;
  } else {
    out["ratio"] = ratio;
  }
  return out;
}

int cmd_monodromy(Session& s) {
  Monodromy m = orbits_common(s);
  s.report["generators"] = json::array();
  for (const auto& g : m.gens) s.report["generators"].push_back(cycles_1based(g));
  MonodromyOptions opts;
  opts.memory_budget_bytes = s.cfg.memory_budget;
  MonodromyReport rep;
  try {
    rep = monodromy_group(m.used->size(), m.gens, opts);
  } catch (const ResourceError& e) {
    throw BudgetExceeded{e.what(), s.report};
  }
  s.report["group_order"] = to_decimal(rep.group_order);
  json per_orbit = json::array();
  for (const auto& v : rep.per_orbit) {
    json o = {{"size", v.size}, {"order", to_decimal(v.order)}, {"full", v.full}};
    if (v.blocks) {
      json blocks = json::array();
      for (const auto& b : *v.blocks) {
        json pts = json::array();
        for (Point x : b) pts.push_back(x + 1);
        blocks.push_back(pts);
      }
      o["blocks"] = blocks;
    }
    per_orbit.push_back(o);
  }
  s.report["per_orbit"] = per_orbit;
  s.report["quasi_full"] = rep.quasi_full;
  MassReport mass = mass_report(s.h(), m.inn->acting().order(), m.aut->acting().order(), m.inn->size(),
                                m.aut->size());
  s.report["mass"] = mass_json(mass);
  return kExitOk;
}

int cmd_conway_parker(Session& s) {
  Monodromy m = orbits_common(s);
  if (!m.reduced) throw InputError("conway-parker needs a cover (--cover or \"cover\" in the parameter file)");
  ConwayParkerReport cp = conway_parker_report(m.partition, m.labels);
  s.report["conway_parker"] = {{"orbits", cp.orbit_count},
                               {"labels", cp.label_count},
                               {"injective", cp.injective},
                               {"surjective", cp.surjective},
                               {"bijective", cp.bijective()}};
  LabelAction act = out_action_on_labels(LiftingInvariant(*m.reduced, s.h()), *m.inn, m.aut->acting());
  json orbits = json::array();
  for (const auto& o : act.orbits) orbits.push_back(o);
  json stab = json::object();
  for (auto [l, c] : act.out_stabilizer) stab[std::to_string(l)] = c;
  s.report["out_action"] = {{"label_orbits", orbits}, {"out_stabilizer", stab}};
  return kExitOk;
}

int cmd_mass(Session& s) {
  s.load_parameter(true);
  TupleSet t = s.tuples();
  auto inn = build_fiber(s.h(), t, FiberMode::kInn);
  auto aut = build_fiber(s.h(), t, FiberMode::kAutGC);
  s.report["fiber"] = fiber_sizes(t, *inn, *aut);
  MassReport mass = mass_report(s.h(), inn->acting().order(), aut->acting().order(), inn->size(), aut->size());
  s.report["mass"] = mass_json(mass);
  if (s.cover) {
    CentralExtension reduced = reduce_cover(*s.cover, s.h().classes);
    LiftingInvariant inv(reduced, s.h());
    std::vector<KernelElem> labels = point_labels(inv, *inn);
    std::map<KernelElem, std::size_t> census;
    for (KernelElem l : labels) ++census[l];
    double predicted = mass.predicted_inn / static_cast<double>(reduced.kernel_order());
    json per = json::array();
    for (auto [l, c] : census) {
      per.push_back({{"label", l}, {"actual", c}, {"predicted", predicted},
                     {"ratio", predicted / static_cast<double>(c)}});
    }
    s.report["mass"]["per_label_inn"] = per;
  }
  return kExitOk;
}

std::shared_ptr<FiniteGroup> load_group_arg(Session& s, const std::string& ref) {
  fs::path p = ref;
  if (fs::is_regular_file(p)) s.digest_source += read_file(p);
  NamedGroup ng = resolve_group(ref, fs::current_path(), s.data_dir);
  s.report["group"] = ng.name;
  return std::make_shared<FiniteGroup>(FiniteGroup::materialize(ng.group, s.cfg.element_cap));
}

int cmd_classify(Session& s) {
  auto group = load_group_arg(s, s.cfg.input);
  std::optional<CentralExtension> cover;
  if (!s.cfg.cover.empty()) {
    if (!fs::is_regular_file(s.cfg.cover)) throw InputError("cover file not found: " + s.cfg.cover);
    s.digest_source += read_file(s.cfg.cover);
    cover = load_cover_file(s.cfg.cover, s.data_dir, group, s.cfg.element_cap);
    require_split_pp(*cover);
  }
  json classes = json::array();
  for (const auto& c : conjugacy_classes(*group)) {
    if (c.representative_id == FiniteGroup::identity()) continue;
    json j = class_json(c);
    j["ambiguous"] = is_ambiguous(*group, c);
    j["derived_orbits"] = derived_orbit_count(*group, c);
    j["rational"] = is_rational_class(*group, c);
    if (cover) {
      ClassKind k = classify_class(*cover, c);
      j["kind"] = to_string(k.kind);
      if (k.kind != ClassKindTag::kAmbiguous) {
        j["lifted_classes"] = k.lifted_class_count;
        j["lifted_derived_orbits"] = k.derived_orbit_count;
      }
    }
    classes.push_back(j);
  }
  StructureVerdict v = is_pseudosimple(*group);
  s.report["pseudosimple"] = v.pseudosimple;
  if (!v.pseudosimple) s.report["pseudosimple_failure"] = to_string(v.reason);
  s.report["classes"] = classes;
  return kExitOk;
}

int cmd_condition_e(Session& s) {
  fs::path p = s.cfg.input;
  if (!fs::is_regular_file(p)) throw InputError("class list file not found: " + s.cfg.input);
  s.digest_source += read_file(p);
  LoadedClassList cl = load_class_list_file(p, s.data_dir, s.cfg.element_cap);
  std::optional<fs::path> cp = s.cfg.cover.empty() ? cl.cover_path : std::optional<fs::path>(s.cfg.cover);
  if (!cp) throw InputError("condition-e needs a cover (--cover or \"cover\" in the class list file)");
  if (!fs::is_regular_file(*cp)) throw InputError("cover file not found: " + cp->string());
  s.digest_source += read_file(*cp);
  CentralExtension cover = load_cover_file(*cp, s.data_dir, cl.group, s.cfg.element_cap);
  json classes = json::array();
  for (const auto& c : cl.classes) classes.push_back(class_json(c));
  s.report["group"] = cl.group_name;
  s.report["classes"] = classes;
  ConditionE e = condition_e(cover, cl.classes);
  bool by_rule = condition_e_by_classification(cover, cl.classes);
  json kinds = json::array();
  for (const auto& c : cl.classes) kinds.push_back(to_string(classify_class(cover, c).kind));
  s.report["condition_e"] = {{"holds", e.holds},
                             {"h2_c_order", e.subgroups.unprimed.size()},
                             {"h2_prime_c_order", e.subgroups.primed.size()},
                             {"class_kinds", kinds},
                             {"holds_by_classification", by_rule},
                             {"routes_agree", by_rule == e.holds}};
  if (e.witness) {
    const FiniteGroup& base = *cover.base;
    s.report["condition_e"]["witness"] = {
        {"g", base.element(e.witness->g).to_cycles()},
        {"z", base.element(e.witness->z).to_cycles()},
        {"pairing", cover.cover->element(cover.kernel[e.witness->value]).to_cycles()}};
  }
  if (by_rule != e.holds) throw InternalError("condition E routes disagree");
  return kExitOk;
}

int cmd_goursat(Session& s) {
  s.load_parameter(false);
  TupleSet t = s.tuples();
  auto fiber = build_fiber(s.h(), t, FiberMode::kAutGC);
  FiberPowerGroup power = fiber_power_group(*s.h().group, s.cfg.power);
  const std::size_t f = fiber->size();
  const std::size_t k = s.cfg.power;
  double rows = 1;
  for (std::size_t i = 0; i < k; ++i) rows *= static_cast<double>(f);
  if (rows > static_cast<double>(s.cfg.max_rows)) {
    throw InputError("goursat sweep over " + std::to_string(f) + "^" + std::to_string(k) +
                     " point tuples exceeds --max-rows");
  }
  bool unambiguous = true;
  for (const auto& c : s.h().classes) unambiguous = unambiguous && !is_ambiguous(*s.h().group, c);
  if (!unambiguous && !s.cfg.allow_ambiguous) {
    throw UnsupportedError("row span check needs unambiguous classes (pass --allow-ambiguous to sweep anyway)");
  }
  const std::size_t total = static_cast<std::size_t>(rows);
  std::vector<char> result(total, 0);
  std::vector<char> distinct(total, 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::span<const ElemId>> pts;
    std::set<std::size_t> ids;
    std::size_t r = idx;
    for (std::size_t c = 0; c < k; ++c) {
      pts.push_back(fiber->point(r % f));
      ids.insert(r % f);
      r /= f;
    }
    distinct[idx] = ids.size() == k;
    result[idx] = row_span_check(s.h(), power, pts, false);
  }
  std::size_t tt = 0, tf = 0, ft = 0, ff = 0;
  for (std::size_t i = 0; i < total; ++i) {
    if (distinct[i]) {
      (result[i] ? tt : tf)++;
    } else {
      (result[i] ? ft : ff)++;
    }
  }
  s.report["goursat"] = {{"k", k},
                         {"classes_unambiguous", unambiguous},
                         {"fiber_size", f},
                         {"fiber_power_order", to_decimal(power.realized.order())},
                         {"distinct_generate", tt},
                         {"distinct_proper", tf},
                         {"repeated_generate", ft},
                         {"repeated_proper", ff},
                         {"criterion_holds", tf == 0 && ft == 0}};
  return kExitOk;
}

void emit(const RunConfig& cfg, const json& report) {
  std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw InputError("cannot write " + cfg.out);
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Hurwitz parameter fibers, braid monodromy and lifting invariants"};
  app.require_subcommand(1);
  app.add_option("--budget-tuples", cfg.budget_tuples, "Tuple enumeration budget (prefix visits)")
      ->check(CLI::PositiveNumber);
  app.add_option("--element-cap", cfg.element_cap, "Largest group that is materialized")->check(CLI::PositiveNumber);
  app.add_option("--memory-budget", cfg.memory_budget, "Stabilizer chain memory budget in bytes")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", cfg.out, "Write the report here instead of stdout");
  app.add_option("--mode", cfg.mode, "Fiber quotient: inn or aut")->check(CLI::IsMember({"inn", "aut"}));
  app.add_option("--cover", cfg.cover, "Cover file");
  app.add_option("--seed", cfg.seed, "Seed for sampled checks");
  app.add_option("--data-dir", cfg.data_dir, "Fixture directory for named groups");

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(Session&);
  };
  const Sub subs[] = {
      {"validate", "Check a Hurwitz parameter", cmd_validate},
      {"fiber", "Sizes of G_h, F_h and F*_h", cmd_fiber},
      {"orbits", "Braid orbits, with lifting labels when a cover is given", cmd_orbits},
      {"monodromy", "Monodromy group, fullness and quasi-fullness", cmd_monodromy},
      {"classify", "Ambiguity and split/mixed/inert kind of every class", cmd_classify},
      {"condition-e", "Condition E by pairings and by class kinds", cmd_condition_e},
      {"conway-parker", "Braid orbits against lifting labels", cmd_conway_parker},
      {"goursat", "Row span check over all point tuples of F*_h", cmd_goursat},
      {"mass", "Asymptotic mass formula against the fiber sizes", cmd_mass},
  };
  std::map<std::string, int (*)(Session&)> dispatch;
  for (const auto& sub : subs) {
    CLI::App* sc = app.add_subcommand(sub.name, sub.help);
    sc->add_option("input", cfg.input,
                   std::string(sub.name) == "classify"      ? "Group name or file"
                   : std::string(sub.name) == "condition-e" ? "Class list or parameter file"
                                                            : "Parameter file")
        ->required();
    if (std::string(sub.name) == "classify") sc->add_option("cover", cfg.cover, "Cover file");
    if (std::string(sub.name) == "goursat") {
      sc->add_option("-k,--power", cfg.power, "Number of points per tuple")->check(CLI::Range(1, 3));
      sc->add_option("--max-rows", cfg.max_rows, "Largest number of point tuples swept");
      sc->add_flag("--allow-ambiguous", cfg.allow_ambiguous, "Sweep even when some class is ambiguous");
    }
    dispatch[sub.name] = sub.run;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  for (const auto& sub : subs) {
    if (app.got_subcommand(sub.name)) cfg.subcommand = sub.name;
  }
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  Session s;
  s.cfg = cfg;
  s.data_dir = cfg.data_dir.empty() ? default_data_dir() : fs::path(cfg.data_dir);
  s.report["command"] = cfg.subcommand;
  int code = kExitOk;
  try {
    code = dispatch.at(cfg.subcommand)(s);
    s.report["truncated"] = false;
  } catch (const BudgetExceeded& e) {
    s.report = e.partial;
    s.report["command"] = cfg.subcommand;
    s.report["truncated"] = true;
    s.report["error"] = e.message;
    code = kExitBudget;
  } catch (const ResourceError& e) {
    s.report["truncated"] = true;
    s.report["error"] = e.what();
    code = kExitBudget;
  } catch (const InputError& e) {
    s.report["error"] = e.what();
    code = kExitInput;
  } catch (const UnsupportedError& e) {
    s.report["error"] = std::string("unsupported: ") + e.what();
    code = kExitInput;
  } catch (const nlohmann::json::exception& e) {
    s.report["error"] = std::string("malformed input: ") + e.what();
    code = kExitInput;
  } catch (const InternalError& e) {
    s.report["error"] = std::string("internal: ") + e.what();
    code = kExitInternal;
  } catch (const std::exception& e) {
    s.report["error"] = std::string("internal: ") + e.what();
    code = kExitInternal;
  }
  s.report["input_digest"] = fnv1a_hex(s.digest_source);
  if (!s.report.contains("budget")) s.report["budget"] = {{"tuple_budget", cfg.budget_tuples}, {"prefix_visits", 0}};
  try {
    emit(cfg, s.report);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
  if (code != kExitOk && s.report.contains("error")) std::cerr << "error: " << s.report["error"].get<std::string>() << "\n";
  return code;
}
