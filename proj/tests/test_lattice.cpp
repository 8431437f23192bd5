#include <catch2/catch_amalgamated.hpp>

#include "hallstone/catalog.hpp"
#include "hallstone/lattice.hpp"
#include "oracles.hpp"

using namespace hallstone;

namespace {

Group named(const std::string& name) { return realize(catalog_lookup(name)); }

}  // namespace

TEST_CASE("subgroup counts") {
  SubgroupLattice s4 = all_subgroups(named("S4"));
  CHECK(s4.size() == 30);
  CHECK(s4.conjugacy_classes().size() == 11);

  CHECK(all_subgroups(named("C6")).size() == 4);
  CHECK(all_subgroups(named("A5")).size() == 59);
  CHECK(all_subgroups(named("S5")).size() == 156);

  SubgroupLattice a6 = all_subgroups(named("A6"));
  CHECK(a6.size() == 501);
  CHECK(a6.conjugacy_classes().size() == 22);
}

TEST_CASE("lattice agrees with the brute-force oracle") {
  for (const char* name : {"C6", "C12", "D12", "A4", "S4", "SL(2,3)", "D24", "A5"}) {
    Group g = named(name);
    CHECK(all_subgroups(g).subgroup_sets() == oracles::brute_force_subgroup_sets(g));
  }
}

TEST_CASE("insoluble subgroups that no prime-order elements generate") {
  // A5 x C4 is not generated by its elements of prime order (they only
  // reach A5 x C2), so the saturation step must join with prime-power
  // cyclic subgroups to find it
  Group g = named("A5xC4");
  SubgroupLattice lat = all_subgroups(g);
  CHECK(lat.position_of(g.full_subgroup()).has_value());
  CHECK(lat.subgroup_sets() == oracles::brute_force_subgroup_sets(g));
}

TEST_CASE("lattice output is deterministic") {
  Group g1 = named("S4");
  Group g2 = named("S4");  // independent instance, fresh caches
  REQUIRE_FALSE(g1.same_rep(g2));
  auto sets1 = all_subgroups(g1).subgroup_sets();
  auto sets2 = all_subgroups(g2).subgroup_sets();
  CHECK(sets1 == sets2);
  CHECK(all_subgroups(g1).conjugacy_classes() == all_subgroups(g2).conjugacy_classes());
}

TEST_CASE("lattice cap") {
  Limits lim;
  lim.max_lattice = 20;
  Group c30 = Group::generate(30, catalog_lookup("C30").generators, lim);
  CHECK_THROWS_WITH(all_subgroups(c30), "lattice too large");
}

TEST_CASE("normal and minimal normal subgroups") {
  Group s4 = named("S4");
  std::vector<Subgroup> normals = normal_subgroups(s4);
  REQUIRE(normals.size() == 4);
  CHECK(normals[0].order() == 1);
  CHECK(normals[1].order() == 4);
  CHECK(normals[2].order() == 12);
  CHECK(normals[3].order() == 24);
  std::vector<Subgroup> minimal = minimal_normal_subgroups(s4);
  REQUIRE(minimal.size() == 1);
  CHECK(minimal[0].order() == 4);

  Group a5 = named("A5");
  CHECK(normal_subgroups(a5).size() == 2);  // simple
  REQUIRE(minimal_normal_subgroups(a5).size() == 1);
  CHECK(minimal_normal_subgroups(a5)[0].is_full());

  Group c6 = named("C6");
  CHECK(normal_subgroups(c6).size() == 4);
  std::vector<Subgroup> c6_min = minimal_normal_subgroups(c6);
  REQUIRE(c6_min.size() == 2);
  CHECK(c6_min[0].order() == 2);
  CHECK(c6_min[1].order() == 3);

  // normal subgroups = conjugation-invariant members of the lattice
  for (const char* name : {"S4", "SL(2,3)", "D12", "A5"}) {
    Group g = named(name);
    std::vector<IndexVec> invariant;
    for (const Subgroup& h : all_subgroups(g).subgroups())
      if (is_normal(g, h)) invariant.push_back(h.elem_indices());
    std::vector<IndexVec> listed;
    for (const Subgroup& n : normal_subgroups(g)) listed.push_back(n.elem_indices());
    CHECK(listed == invariant);
  }
}

TEST_CASE("conjugacy of subgroups") {
  Group s4 = named("S4");
  Subgroup a = subgroup_from(s4, {Perm::from_cycles(4, {{1, 2}})});
  Subgroup b = subgroup_from(s4, {Perm::from_cycles(4, {{3, 4}})});
  auto witness = are_conjugate(s4, a, b);
  REQUIRE(witness.has_value());
  // conjugating a by the witness gives b
  std::uint32_t w = s4.index_of(*witness);
  CHECK(detail::conj_subgroup(*s4.rep(), a.elem_indices(), w) == b.elem_indices());

  CHECK(are_conjugate(s4, a, a).value().is_identity());

  Subgroup c = subgroup_from(s4, {Perm::from_cycles(4, {{1, 2}, {3, 4}})});
  CHECK_FALSE(are_conjugate(s4, a, c).has_value());
}

TEST_CASE("class structure invariants") {
  for (const char* name : {"S4", "SL(2,3)", "A5", "D24"}) {
    Group g = named(name);
    SubgroupLattice lat = all_subgroups(g);
    std::size_t covered = 0;
    for (const auto& cls : lat.conjugacy_classes()) {
      covered += cls.size();
      Subgroup rep_sub = lat.at(cls.front());
      CHECK(cls.size() == g.order() / normalizer(g, rep_sub).order());
    }
    CHECK(covered == lat.size());
  }
  // pairwise are_conjugate agrees with class membership
  for (const char* name : {"S4", "A5"}) {
    Group g = named(name);
    SubgroupLattice lat = all_subgroups(g);
    for (std::uint32_t i = 0; i < lat.size(); ++i)
      for (std::uint32_t j = i; j < lat.size(); ++j)
        CHECK(are_conjugate(g, lat.at(i), lat.at(j)).has_value() == (lat.class_of(i) == lat.class_of(j)));
  }
}

TEST_CASE("intermediate subgroups") {
  Group s4 = named("S4");
  Subgroup d8 = subgroup_from(s4, {Perm::from_cycles(4, {{1, 2, 3, 4}}), Perm::from_cycles(4, {{1, 3}})});
  std::vector<Subgroup> above_d8 = intermediate_subgroups(s4, d8);
  REQUIRE(above_d8.size() == 2);
  CHECK(above_d8[0] == d8);
  CHECK(above_d8[1].is_full());

  CHECK(intermediate_subgroups(s4, s4.full_subgroup()).size() == 1);

  Subgroup c3 = subgroup_from(s4, {Perm::from_cycles(4, {{1, 2, 3}})});
  std::vector<Subgroup> above_c3 = intermediate_subgroups(s4, c3);
  REQUIRE(above_c3.size() == 4);
  CHECK(above_c3[0].order() == 3);
  CHECK(above_c3[1].order() == 6);
  CHECK(above_c3[2].order() == 12);
  CHECK(above_c3[3].order() == 24);
}
