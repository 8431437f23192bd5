// Acceptance suite: runs each criterion at its stated tolerance (exact
// arithmetic throughout) and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hallstone/catalog.hpp"
#include "hallstone/cli.hpp"
#include "hallstone/formation.hpp"
#include "hallstone/hall.hpp"

using namespace hallstone;

namespace {

std::vector<PrimeSet> sweep(std::uint64_t order) {
  std::vector<std::uint64_t> ps = prime_divisors(order);
  std::vector<PrimeSet> out;
  for (int cof = 0; cof < 2; ++cof) {
    for (std::uint64_t mask = 0; mask < (1ull << ps.size()); ++mask) {
      std::vector<std::uint64_t> sub;
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (mask & (1ull << i)) sub.push_back(ps[i]);
      out.push_back(cof ? PrimeSet::complement_of(sub) : PrimeSet::finite(sub));
    }
  }
  return out;
}

std::vector<IndexVec> index_sets(const std::vector<Subgroup>& list) {
  std::vector<IndexVec> out;
  for (const Subgroup& s : list) out.push_back(s.elem_indices());
  return out;
}

struct Corpus {
  std::vector<CatalogEntry> entries;
  std::vector<Group> groups;
};

Corpus load_corpus() {
  Corpus c;
  c.entries = catalog_entries();
  for (const CatalogEntry& e : c.entries) c.groups.push_back(realize(e));
  return c;
}

bool criterion1(const Corpus&, std::string& detail) {
  Group a5 = realize(catalog_lookup("A5"));
  PrimeSet pi = PrimeSet::finite({2, 3});
  bool ok = true;
  ok = ok && !is_pi_separable(a5, pi);
  std::size_t bases = complement_pi_bases(a5, pi).size();
  ok = ok && bases == 30;
  std::size_t systems = enumerate_hall_systems(a5, pi).systems.size();
  ok = ok && systems == 30;
  ok = ok && orbit_is_all(a5, pi);
  ok = ok && !satisfies_D(a5, pi);
  std::ostringstream d;
  d << "separable=false, bases=" << bases << ", systems=" << systems << ", transitive, D_pi=false";
  detail = d.str();
  return ok;
}

bool criterion2(const Corpus&, std::string& detail) {
  Group a5 = realize(catalog_lookup("A5"));
  PrimeSet pi = PrimeSet::complement_of({2, 3, 5});
  ProjectorReport r = projector_report(a5, pi);
  std::vector<IndexVec> sylows;
  for (std::uint64_t p : {2, 3, 5})
    for (const Subgroup& s : hall_subgroups(a5, PrimeSet::finite({p}))) sylows.push_back(s.elem_indices());
  std::sort(sylows.begin(), sylows.end(), [](const IndexVec& a, const IndexVec& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  bool ok = index_sets(r.projectors) == sylows && r.covering.empty() && r.classes.size() == 3;
  std::ostringstream d;
  d << r.projectors.size() << " projectors = all Sylow subgroups, " << r.classes.size()
    << " classes, covering empty";
  detail = d.str();
  return ok;
}

bool criterion3(const Corpus& corpus, std::string& detail) {
  std::size_t checked = 0;
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    const Group& g = corpus.groups[i];
    if (!corpus.entries[i].tags.soluble || g.order() > 120) continue;
    for (const PrimeSet& pi : sweep(g.order())) {
      Theorem1Report t1 = verify_theorem1(g, pi);
      Theorem2Report t2 = verify_theorem2(g, pi);
      if (!(t1.hypothesis && t1.conclusion && !t1.violation && t2.hypothesis && t2.conclusion && !t2.violation)) {
        detail = "failed for " + corpus.entries[i].name + " with pi=" + pi.to_string();
        return false;
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " (group, pi) pairs, zero violations";
  return true;
}

bool criterion4(const Corpus& corpus, std::string& detail) {
  std::size_t checked = 0;
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    const Group& g = corpus.groups[i];
    if (g.order() > 60) continue;
    SubgroupLattice lat = all_subgroups(g);
    for (const PrimeSet& pi : sweep(g.order())) {
      for (std::uint32_t s = 0; s < lat.size(); ++s) {
        Subgroup h = lat.at(s);
        if (is_dnormal(g, h, pi) != is_dnormal_reduction(g, h, pi)) {
          detail = "disagreement for " + corpus.entries[i].name + " with pi=" + pi.to_string();
          return false;
        }
        ++checked;
      }
    }
  }
  detail = std::to_string(checked) + " (G, H, pi) triples, zero disagreements";
  return true;
}

bool criterion5(const Corpus& corpus, std::string& detail) {
  bool s4_covered = false;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    const Group& g = corpus.groups[i];
    for (const PrimeSet& pi : sweep(g.order())) {
      if (!pi.contains(2) || !is_pi_separable(g, pi)) continue;
      std::vector<ComplementBasis> bases = complement_pi_bases(g, pi);
      if (bases.empty()) {
        detail = "no complement basis for " + corpus.entries[i].name + " with pi=" + pi.to_string();
        return false;
      }
      std::uint64_t formula = hall_system_count_formula(g, bases.front());
      std::size_t enumerated = enumerate_hall_systems(g, pi).systems.size();
      if (formula != enumerated) {
        detail = "count mismatch for " + corpus.entries[i].name + " with pi=" + pi.to_string();
        return false;
      }
      if (corpus.entries[i].name == "S4" && pi == PrimeSet::finite({2}) && formula == 12) s4_covered = true;
      ++checked;
    }
  }
  if (!s4_covered) {
    detail = "S4 with pi={2} did not give 12";
    return false;
  }
  detail = std::to_string(checked) + " cases, formula = enumeration everywhere (S4, pi={2} -> 12)";
  return true;
}

bool criterion6(const Corpus& corpus, std::string& detail) {
  std::size_t checked = 0;
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    const Group& g = corpus.groups[i];
    for (const PrimeSet& pi : sweep(g.order())) {
      if (!pi.contains(2)) continue;
      for (const HallSystem& sys : enumerate_hall_systems(g, pi).systems) {
        if (!(hall_system_from_basis(basis_of_system(sys)) == sys) ||
            !(system_from_sylow_basis(sylow_basis_of_system(sys)) == sys)) {
          detail = "round trip failed for " + corpus.entries[i].name + " with pi=" + pi.to_string();
          return false;
        }
        ++checked;
      }
    }
  }
  detail = std::to_string(checked) + " systems round-tripped both ways";
  return true;
}

bool criterion7(const Corpus& corpus, std::string& detail) {
  Group s4 = realize(catalog_lookup("S4"));
  std::vector<Subgroup> s4_carter = carter_subgroups(s4);
  if (s4_carter.size() != 3) {
    detail = "S4 Carter count";
    return false;
  }
  for (const Subgroup& c : s4_carter) {
    if (c.order() != 8) {
      detail = "S4 Carter order";
      return false;
    }
  }
  std::vector<IndexVec> sylow2;
  for (const Subgroup& s : hall_subgroups(s4, PrimeSet::finite({2}))) sylow2.push_back(s.elem_indices());
  if (index_sets(s4_carter) != sylow2) {
    detail = "S4 Carter subgroups are not the Sylow 2 class";
    return false;
  }

  Group sl = realize(catalog_lookup("SL(2,3)"));
  std::vector<Subgroup> sl_carter = carter_subgroups(sl);
  if (sl_carter.empty()) {
    detail = "SL(2,3) Carter empty";
    return false;
  }
  for (const Subgroup& c : sl_carter) {
    if (c.order() != 6) {
      detail = "SL(2,3) Carter order";
      return false;
    }
    if (!are_conjugate(sl, sl_carter.front(), c)) {
      detail = "SL(2,3) Carter subgroups not one class";
      return false;
    }
  }

  if (!carter_subgroups(realize(catalog_lookup("A5"))).empty()) {
    detail = "A5 should have no Carter subgroups";
    return false;
  }

  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    if (!corpus.entries[i].tags.soluble) continue;
    const Group& g = corpus.groups[i];
    if (index_sets(carter_subgroups(g)) != index_sets(projectors(g, PrimeSet::empty()))) {
      detail = "Carter != projectors(pi = {}) for " + corpus.entries[i].name;
      return false;
    }
  }
  detail = "S4: Sylow 2 class; SL(2,3): one class of order 6; A5: empty; Carter = projectors on solubles";
  return true;
}

bool criterion8(const Corpus& corpus, std::string& detail) {
  std::size_t checked = 0;
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    const Group& g = corpus.groups[i];
    if (g.order() > 120) continue;
    for (const PrimeSet& pi : sweep(g.order())) {
      DuReport r = du_equivalence(g, pi);
      if (!r.consistent) {
        detail = "inconsistent for " + corpus.entries[i].name + " with pi=" + pi.to_string();
        return false;
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " (group, pi) pairs consistent (includes A5 and S5)";
  return true;
}

bool criterion9(const Corpus& corpus, std::string& detail) {
  std::size_t checked = 0;
  for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
    const Group& g = corpus.groups[i];
    for (const PrimeSet& pi : sweep(g.order())) {
      if (!pi.contains(2) || !is_pi_separable(g, pi)) continue;
      std::vector<Subgroup> normals = normal_subgroups(g);
      for (const HallSystem& sys : enumerate_hall_systems(g, pi).systems) {
        for (const Subgroup& k : normals) {
          Quotient q = quotient_group(g, k);
          Group k_ctx = k.as_group();
          std::vector<Subgroup> images;
          std::vector<Subgroup> meets;
          for (const auto& [rho, member] : sys.members) {
            images.push_back(q.image_of(member));
            meets.push_back(restrict_to(k_ctx, intersect(member, k)));
          }
          if (!is_hall_system_family(q.group(), pi, images) || !is_hall_system_family(k_ctx, pi, meets)) {
            detail = "heredity failed for " + corpus.entries[i].name + " with pi=" + pi.to_string();
            return false;
          }
          ++checked;
        }
      }
    }
  }
  detail = std::to_string(checked) + " (system, normal) pairs hereditary both ways";
  return true;
}

bool criterion10(const Corpus&, std::string& detail) {
  std::ostringstream out1, err1, out2, err2;
  int code1 = run_cli({"verify", "--corpus"}, out1, err1);
  int code2 = run_cli({"verify", "--corpus"}, out2, err2);
  if (code1 != 0 || code2 != 0) {
    detail = "corpus verify exited " + std::to_string(code1) + "/" + std::to_string(code2);
    return false;
  }
  if (out1.str() != out2.str()) {
    detail = "corpus reports differ between runs";
    return false;
  }
  detail = "two corpus runs byte-identical (" + std::to_string(out1.str().size()) + " bytes), exit 0";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<bool(const Corpus&, std::string&)> run;
    long long budget_ms;  // 0 = no stated budget
  };
  Corpus corpus = load_corpus();
  std::vector<Criterion> criteria = {
      {1, "A5 counterexample suite", criterion1, 5000},
      {2, "A5 projector suite", criterion2, 10000},
      {3, "theorem 1/2 corpus, soluble groups of order <= 120", criterion3, 600000},
      {4, "Dnormality equivalence oracle, order <= 60", criterion4, 0},
      {5, "Hall-system counting formula", criterion5, 0},
      {6, "basis/system/Sylow-basis bijections", criterion6, 0},
      {7, "Carter specialization", criterion7, 0},
      {8, "Du equivalence, order <= 120", criterion8, 0},
      {9, "Hall-system heredity", criterion9, 0},
      {10, "corpus verify determinism", criterion10, 0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(corpus, detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.budget_ms > 0 && ms >= c.budget_ms) {
      ok = false;
      detail += " [exceeded " + std::to_string(c.budget_ms) + " ms budget]";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << ms << " ms)"
              << (detail.empty() ? "" : " - " + detail) << "\n";
    if (!ok) ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 10 acceptance criteria passed\n";
  return 0;
}
