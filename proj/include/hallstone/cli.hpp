#pragma once

// Command-line front door.  Exit codes: 0 = success and no theorem
// violation, 2 = a violation was found (violations are data, not errors),
// 1 = usage or input error.

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hallstone/catalog.hpp"
#include "hallstone/formation.hpp"
#include "hallstone/group.hpp"
#include "hallstone/group_file.hpp"
#include "hallstone/hall.hpp"
#include "hallstone/lattice.hpp"
#include "hallstone/report.hpp"

namespace hallstone {

namespace cli_detail {

inline constexpr const char* kUnset = "\x01unset";

struct CliOptions {
  std::string group_name;
  std::string file_path;
  std::string out_path;
  std::string pi_text = kUnset;
  std::string pi_cof_text = kUnset;
  std::string subgroup_text;
  std::uint64_t max_order = 10000;
  std::uint64_t max_lattice = 500;
  unsigned jobs = 0;
  std::vector<std::string> checks;
  bool corpus = false;
};

inline Limits limits_of(const CliOptions& o) { return Limits{o.max_order, o.max_lattice}; }

inline std::vector<std::uint64_t> parse_prime_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(',', start);
    std::string part = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    std::size_t a = part.find_first_not_of(" \t");
    if (a != std::string::npos) {
      std::size_t b = part.find_last_not_of(" \t");
      part = part.substr(a, b - a + 1);
      out.push_back(std::stoull(part));
    }
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<PrimeSet> resolve_pi(const CliOptions& o, bool required) {
  bool fin = o.pi_text != kUnset;
  bool cof = o.pi_cof_text != kUnset;
  if (fin && cof) throw Error("--pi and --pi-cofinite are mutually exclusive");
  if (fin) return PrimeSet::finite(parse_prime_list(o.pi_text));
  if (cof) return PrimeSet::complement_of(parse_prime_list(o.pi_cof_text));
  if (required) throw Error("this subcommand requires --pi or --pi-cofinite");
  return std::nullopt;
}

struct LoadedGroup {
  Group group;
  Json source;
  std::string display;
};

inline LoadedGroup load_group(const CliOptions& o) {
  if (o.group_name.empty() == o.file_path.empty()) throw Error("exactly one of --group or --file is required");
  if (!o.group_name.empty()) {
    CatalogEntry e = catalog_lookup(o.group_name);
    Group g = realize(e, limits_of(o));
    return LoadedGroup{g, group_source_json("name", e.name, g), e.name};
  }
  ParsedGroupFile f = parse_group_file(o.file_path);
  Group g = Group::generate(f.degree, f.generators, limits_of(o));
  return LoadedGroup{g, group_source_json("file", o.file_path, g), o.file_path};
}

inline void emit(const Json& doc, const CliOptions& o, std::ostream& out) {
  if (o.out_path.empty()) {
    out << render_report(doc);
  } else {
    write_report(doc, o.out_path);
  }
}

// All subsets of pi(G) followed by the cofinite sets P \ S for S ⊆ pi(G).
inline std::vector<PrimeSet> pi_sweep(std::uint64_t order) {
  std::vector<std::uint64_t> gprimes = prime_divisors(order);
  std::vector<PrimeSet> out;
  for (int cof = 0; cof < 2; ++cof) {
    for (std::uint64_t mask = 0; mask < (1ull << gprimes.size()); ++mask) {
      std::vector<std::uint64_t> subset;
      for (std::size_t i = 0; i < gprimes.size(); ++i)
        if (mask & (1ull << i)) subset.push_back(gprimes[i]);
      out.push_back(cof ? PrimeSet::complement_of(subset) : PrimeSet::finite(subset));
    }
  }
  return out;
}

inline const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names{"theorem1", "theorem2", "du", "d-pi-implication"};
  return names;
}

// Runs the selected checks; returns the per-check JSON and the violation
// count.
inline std::pair<Json, int> run_checks(const Group& g, const PrimeSet& pi, const std::vector<std::string>& checks,
                                       bool with_witnesses) {
  Json j;
  int violations = 0;
  auto selected = [&](const std::string& name) {
    return std::find(checks.begin(), checks.end(), name) != checks.end();
  };
  if (selected("theorem1")) {
    Theorem1Report r = verify_theorem1(g, pi);
    j["theorem1"] = theorem1_report_json(r, with_witnesses || r.violation);
    if (r.violation) ++violations;
  }
  if (selected("theorem2")) {
    Theorem2Report r = verify_theorem2(g, pi);
    j["theorem2"] = theorem2_report_json(r, with_witnesses || r.violation);
    if (r.violation) ++violations;
  }
  if (selected("du")) {
    DuReport r = du_equivalence(g, pi);
    j["du"] = du_report_json(r);
    if (!r.consistent) ++violations;
  }
  if (selected("d-pi-implication")) {
    DpiReport r = dpi_implies_separable_check(g, pi);
    j["d_pi_implication"] = dpi_report_json(r);
    if (r.violation) ++violations;
  }
  return {j, violations};
}

inline int cmd_info(const CliOptions& o, std::ostream& out) {
  LoadedGroup lg = load_group(o);
  std::optional<PrimeSet> pi = resolve_pi(o, false);
  Json doc = report_skeleton();
  doc["command"] = "info";
  doc["group"] = lg.source;
  doc["order"] = lg.group.order();
  doc["soluble"] = is_soluble(lg.group);
  doc["nilpotent"] = is_nilpotent(lg.group);
  doc["composition_factors"] = composition_factors_json(composition_factors(lg.group));
  if (pi) {
    doc["pi"] = prime_set_json(*pi);
    doc["pi_separable"] = is_pi_separable(lg.group, *pi);
    doc["pi_soluble"] = is_pi_soluble(lg.group, *pi);
  }
  emit(doc, o, out);
  return 0;
}

inline int cmd_hall_systems(const CliOptions& o, std::ostream& out) {
  LoadedGroup lg = load_group(o);
  PrimeSet pi = *resolve_pi(o, true);
  const Group& g = lg.group;
  std::vector<ComplementBasis> bases = complement_pi_bases(g, pi);
  HallSystemEnumeration en = enumerate_hall_systems(g, pi);
  Json doc = report_skeleton();
  doc["command"] = "hall-systems";
  doc["group"] = lg.source;
  doc["pi"] = prime_set_json(pi);
  doc["pi_separable"] = is_pi_separable(g, pi);
  doc["complement_basis_count"] = bases.size();
  doc["system_count"] = en.systems.size();
  if (!bases.empty()) doc["count_formula"] = hall_system_count_formula(g, bases.front());
  doc["transitive"] = orbit_is_all(g, pi);
  Json systems = Json::array();
  for (const HallSystem& sys : en.systems) {
    Json members = Json::array();
    for (const auto& [rho, sub] : sys.members) {
      Json m;
      m["rho"] = rho;
      m["order"] = sub.order();
      m["elements"] = subgroup_json(sub);
      members.push_back(m);
    }
    Json sj;
    sj["members"] = members;
    systems.push_back(sj);
  }
  doc["systems"] = systems;
  Json failures = Json::array();
  for (const BasisFailure& f : en.failures) failures.push_back(f.message);
  doc["failures"] = failures;
  emit(doc, o, out);
  return 0;
}

inline int cmd_projectors(const CliOptions& o, std::ostream& out) {
  LoadedGroup lg = load_group(o);
  PrimeSet pi = *resolve_pi(o, true);
  const Group& g = lg.group;
  ProjectorReport r = projector_report(g, pi);
  Json doc = report_skeleton();
  doc["command"] = "projectors";
  doc["group"] = lg.source;
  doc["pi"] = prime_set_json(pi);
  doc["projectors"] = subgroup_list_json(r.projectors);
  doc["covering"] = subgroup_list_json(r.covering);
  Json classes = Json::array();
  for (const auto& cls : r.classes) classes.push_back(cls);
  doc["classes"] = classes;
  doc["nonempty"] = r.nonempty;
  doc["equal_sets"] = r.equal_sets;
  doc["single_class"] = r.single_class;
  doc["theorem1_hypothesis"] = is_pi_soluble(g, pi.complement());
  if (pi.size_class() <= 1) doc["carter_subgroups"] = subgroup_list_json(carter_subgroups(g));
  emit(doc, o, out);
  return 0;
}

inline int cmd_dnormal(const CliOptions& o, std::ostream& out) {
  LoadedGroup lg = load_group(o);
  PrimeSet pi = *resolve_pi(o, true);
  const Group& g = lg.group;
  if (o.subgroup_text.empty()) throw Error("dnormal requires --subgroup with generator permutations");
  Subgroup h = subgroup_from(g, parse_perm_list(o.subgroup_text, g.degree()));
  bool dn = is_dnormal(g, h, pi);
  bool dn_red = is_dnormal_reduction(g, h, pi);
  NpiDecomposition dec = in_npi(h, pi);
  Json doc = report_skeleton();
  doc["command"] = "dnormal";
  doc["group"] = lg.source;
  doc["pi"] = prime_set_json(pi);
  doc["subgroup"] = subgroup_json(h);
  doc["subgroup_order"] = h.order();
  doc["dnormal"] = dn;
  doc["dnormal_reduction"] = dn_red;
  doc["agreement"] = dn == dn_red;
  doc["self_dnormalizing"] = is_self_dnormalizing(g, h, pi);
  Json npi;
  npi["member"] = dec.member;
  npi["pi_part_order"] = dec.pi_part.order();
  npi["pi_prime_part_order"] = dec.pi_prime_part.order();
  doc["in_npi"] = npi;
  emit(doc, o, out);
  return 0;
}

inline int cmd_catalog(const CliOptions& o, std::ostream& out) {
  Json doc = report_skeleton();
  doc["command"] = "catalog";
  Json entries = Json::array();
  for (const CatalogEntry& e : catalog_entries()) {
    Json ej;
    ej["name"] = e.name;
    ej["degree"] = e.degree;
    ej["order"] = e.expected_order;
    ej["soluble"] = e.tags.soluble;
    ej["simple"] = e.tags.simple;
    ej["notes"] = e.tags.notes;
    entries.push_back(ej);
  }
  doc["entries"] = entries;
  emit(doc, o, out);
  return 0;
}

inline int cmd_verify(const CliOptions& o, std::ostream& out) {
  std::vector<std::string> checks = o.checks.empty() ? all_check_names() : o.checks;
  for (const std::string& c : checks) {
    if (std::find(all_check_names().begin(), all_check_names().end(), c) == all_check_names().end())
      throw Error("unknown check \"" + c + "\"; expected theorem1, theorem2, du or d-pi-implication");
  }

  if (!o.corpus) {
    LoadedGroup lg = load_group(o);
    PrimeSet pi = *resolve_pi(o, true);
    auto [checks_json, violations] = run_checks(lg.group, pi, checks, true);
    Json doc = report_skeleton();
    doc["command"] = "verify";
    doc["group"] = lg.source;
    doc["pi"] = prime_set_json(pi);
    doc["checks"] = checks_json;
    doc["violations"] = violations;
    emit(doc, o, out);
    return violations > 0 ? 2 : 0;
  }

  // Corpus mode: every catalog entry, full pi-sweep, deterministic merge.
  std::vector<CatalogEntry> entries = catalog_entries();
  std::vector<Group> groups;
  groups.reserve(entries.size());
  for (const CatalogEntry& e : entries) groups.push_back(realize(e, limits_of(o)));

  struct Task {
    std::size_t entry;
    PrimeSet pi;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (const PrimeSet& pi : pi_sweep(groups[i].order())) tasks.push_back(Task{i, pi});

  std::vector<Json> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> total_violations{0};
  std::mutex err_mu;
  std::vector<std::string> errors;
  unsigned jobs = o.jobs > 0 ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size() == 0 ? 1 : tasks.size()));
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const Task& t = tasks[i];
        auto [checks_json, violations] = run_checks(groups[t.entry], t.pi, checks, false);
        Json row;
        row["group"] = entries[t.entry].name;
        row["pi"] = prime_set_json(t.pi);
        row["checks"] = checks_json;
        row["violations"] = violations;
        rows[i] = std::move(row);
        total_violations += violations;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mu);
        errors.push_back(std::string(e.what()));
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (!errors.empty()) throw Error("corpus verification failed: " + errors.front());

  Json doc = report_skeleton();
  doc["command"] = "verify";
  doc["mode"] = "corpus";
  Json checks_list = Json::array();
  for (const std::string& c : checks) checks_list.push_back(c);
  doc["checks"] = checks_list;
  Json runs = Json::array();
  for (Json& row : rows) runs.push_back(std::move(row));
  doc["runs"] = runs;
  doc["task_count"] = tasks.size();
  doc["violations"] = total_violations.load();
  emit(doc, o, out);
  return total_violations.load() > 0 ? 2 : 0;
}

}  // namespace cli_detail

// Entry point shared by the binary and the tests; `args` excludes the
// program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using cli_detail::CliOptions;
  CliOptions o;
  CLI::App app{"Finite-group engine for Hall pi-systems and Carter-like subgroups", "hallstone"};
  app.require_subcommand(1);

  auto add_group_source = [&](CLI::App* sub) {
    sub->add_option("--group", o.group_name, "catalog group name (see `hallstone catalog`)");
    sub->add_option("--file", o.file_path, "group file path");
  };
  auto add_pi = [&](CLI::App* sub) {
    auto* fin = sub->add_option("--pi", o.pi_text, "finite prime set, e.g. 2,3 (empty value means {})");
    auto* cof = sub->add_option("--pi-cofinite", o.pi_cof_text, "complement of the listed primes, e.g. 2,3,5");
    fin->excludes(cof);
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "write the JSON report to this path instead of stdout");
    sub->add_option("--max-order", o.max_order, "element-enumeration cap")->envname("HALLSTONE_MAX_ORDER");
    sub->add_option("--max-lattice", o.max_lattice, "subgroup-lattice order cap");
  };

  CLI::App* info = app.add_subcommand("info", "order, solubility, composition factors, separability");
  add_group_source(info);
  add_pi(info);
  add_common(info);

  CLI::App* hs = app.add_subcommand("hall-systems", "complement bases, Hall systems, counting, transitivity");
  add_group_source(hs);
  add_pi(hs);
  add_common(hs);

  CLI::App* proj = app.add_subcommand("projectors", "N^pi-projectors, covering subgroups, conjugacy classes");
  add_group_source(proj);
  add_pi(proj);
  add_common(proj);

  CLI::App* dn = app.add_subcommand("dnormal", "test a subgroup for N^pi-Dnormality");
  add_group_source(dn);
  add_pi(dn);
  add_common(dn);
  dn->add_option("--subgroup", o.subgroup_text, "generators of the subgroup, e.g. \"(1 2),(3 4)\"")->required();

  CLI::App* ver = app.add_subcommand("verify", "theorem verification for one group or the whole catalog");
  add_group_source(ver);
  add_pi(ver);
  add_common(ver);
  ver->add_option("--check", o.checks, "theorem1|theorem2|du|d-pi-implication (repeatable; default all)");
  ver->add_flag("--corpus", o.corpus, "verify the whole catalog over the full pi-sweep");
  ver->add_option("--jobs", o.jobs, "worker threads for corpus verification");

  CLI::App* cat = app.add_subcommand("catalog", "list the built-in group catalog");
  cat->add_option("--out", o.out_path, "write the JSON report to this path instead of stdout");

  std::vector<const char*> argv;
  argv.push_back("hallstone");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(info)) return cli_detail::cmd_info(o, out);
    if (app.got_subcommand(hs)) return cli_detail::cmd_hall_systems(o, out);
    if (app.got_subcommand(proj)) return cli_detail::cmd_projectors(o, out);
    if (app.got_subcommand(dn)) return cli_detail::cmd_dnormal(o, out);
    if (app.got_subcommand(ver)) return cli_detail::cmd_verify(o, out);
    if (app.got_subcommand(cat)) return cli_detail::cmd_catalog(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace hallstone
