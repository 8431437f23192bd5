#pragma once

// Deterministic JSON report documents.  Keys are emitted sorted, all values
// are integers, booleans or strings, lists are canonical, and serialization
// ends with a trailing newline, so identical inputs produce byte-identical
// files.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hallstone/formation.hpp"
#include "hallstone/group.hpp"
#include "hallstone/hall.hpp"
#include "hallstone/primes.hpp"
#include "hallstone/version.hpp"

namespace hallstone {

using Json = nlohmann::json;

inline Json prime_set_json(const PrimeSet& pi) {
  Json j;
  j["primes"] = pi.listed_primes();
  j["cofinite"] = pi.cofinite();
  return j;
}

// A subgroup as its sorted element list of cycle strings.
inline Json subgroup_json(const Subgroup& s) {
  Json j = Json::array();
  for (const Perm& p : s.element_perms()) j.push_back(p.cycle_string());
  return j;
}

inline Json subgroup_list_json(const std::vector<Subgroup>& list) {
  Json j = Json::array();
  for (const Subgroup& s : list) j.push_back(subgroup_json(s));
  return j;
}

inline Json group_source_json(const std::string& source_kind, const std::string& source_name, const Group& g) {
  Json j;
  j[source_kind] = source_name;
  j["degree"] = g.degree();
  j["order"] = g.order();
  Json gens = Json::array();
  for (const Perm& p : g.generators()) gens.push_back(p.cycle_string());
  j["generators"] = gens;
  return j;
}

inline Json report_skeleton() {
  Json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kToolVersion;
  return j;
}

inline Json composition_factors_json(const std::vector<CompositionFactor>& factors) {
  Json j = Json::array();
  for (const CompositionFactor& f : factors) {
    Json fj;
    fj["order"] = f.order;
    fj["abelian"] = f.abelian;
    j.push_back(fj);
  }
  return j;
}

inline Json du_report_json(const DuReport& r) {
  Json j;
  j["separable"] = r.separable;
  j["cond_ii"] = r.cond_ii;
  j["cond_iii"] = r.cond_iii;
  j["consistent"] = r.consistent;
  return j;
}

inline Json dpi_report_json(const DpiReport& r) {
  Json j;
  j["two_in_pi"] = r.two_in_pi;
  j["basis_exists"] = r.basis_exists;
  j["satisfies_d_pi"] = r.satisfies_d_pi;
  j["hypothesis"] = r.hypothesis;
  j["separable"] = r.separable;
  j["violation"] = r.violation;
  return j;
}

inline Json theorem1_report_json(const Theorem1Report& r, bool with_witnesses) {
  Json j;
  j["hypothesis"] = r.hypothesis;
  j["conclusion"] = r.conclusion;
  j["violation"] = r.violation;
  j["projector_count"] = r.proj.projectors.size();
  j["covering_count"] = r.proj.covering.size();
  j["class_count"] = r.proj.classes.size();
  j["nonempty"] = r.proj.nonempty;
  j["equal_sets"] = r.proj.equal_sets;
  j["single_class"] = r.proj.single_class;
  if (with_witnesses) {
    j["projectors"] = subgroup_list_json(r.proj.projectors);
    j["covering"] = subgroup_list_json(r.proj.covering);
  }
  return j;
}

inline Json theorem2_report_json(const Theorem2Report& r, bool with_witnesses) {
  Json j;
  j["hypothesis"] = r.hypothesis;
  j["conclusion"] = r.conclusion;
  j["violation"] = r.violation;
  j["projector_count"] = r.as_projector.size();
  j["covering_count"] = r.as_covering.size();
  j["self_dnormalizing_count"] = r.as_self_dnormalizing.size();
  j["pairwise_equal"] = r.pairwise_equal;
  j["prop2_ok"] = r.prop2_ok;
  j["cor2_ok"] = r.cor2_ok;
  j["lem5_ok"] = r.lem5_ok;
  if (with_witnesses) {
    j["projectors"] = subgroup_list_json(r.as_projector);
    j["covering"] = subgroup_list_json(r.as_covering);
    j["self_dnormalizing"] = subgroup_list_json(r.as_self_dnormalizing);
  }
  return j;
}

inline std::string render_report(const Json& doc) { return doc.dump(2) + "\n"; }

inline void write_report(const Json& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << render_report(doc);
  if (!out) throw Error("failed writing output file: " + path);
}

}  // namespace hallstone
