#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hallstone/perm.hpp"

using namespace hallstone;

namespace {

Perm random_perm(std::mt19937& rng, std::uint32_t degree) {
  std::vector<std::uint32_t> img(degree);
  for (std::uint32_t i = 0; i < degree; ++i) img[i] = i;
  std::shuffle(img.begin(), img.end(), rng);
  return Perm::from_images(std::move(img));
}

}  // namespace

TEST_CASE("cycle construction and printing") {
  Perm p = Perm::from_cycles(5, {{1, 2, 3}});
  CHECK(p(0) == 1);
  CHECK(p(1) == 2);
  CHECK(p(2) == 0);
  CHECK(p(3) == 3);
  CHECK(p.cycle_string() == "(1 2 3)");
  CHECK(Perm(4).cycle_string() == "()");
  CHECK(Perm::from_cycles(4, {{1, 2}, {3, 4}}).cycle_string() == "(1 2)(3 4)");
}

TEST_CASE("composition applies left factor first") {
  Perm a = Perm::from_cycles(3, {{1, 2}});
  Perm b = Perm::from_cycles(3, {{1, 3}});
  CHECK((a * b).cycle_string() == "(1 2 3)");
  CHECK((b * a).cycle_string() == "(1 3 2)");
}

TEST_CASE("bijection validation") {
  CHECK_THROWS_AS(Perm::from_images({0, 0, 1}), Error);
  CHECK_THROWS_AS(Perm::from_cycles(3, {{1, 4}}), Error);
  CHECK_THROWS_AS(Perm::from_cycles(3, {{1, 2, 1}}), Error);
}

TEST_CASE("element order is the lcm of cycle lengths") {
  CHECK(Perm::from_cycles(5, {{1, 2}, {3, 4, 5}}).order() == 6);
  CHECK(Perm::from_cycles(5, {{1, 2, 3, 4, 5}}).order() == 5);
  CHECK(Perm(7).order() == 1);
}

TEST_CASE("group axioms on random permutations") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    Perm a = random_perm(rng, 8);
    Perm b = random_perm(rng, 8);
    Perm c = random_perm(rng, 8);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * a.inverse() == Perm(8));
    CHECK(a.inverse() * a == Perm(8));
    // round trip through cycle form
    CHECK(Perm::from_cycles(8, a.cycles()) == a);
  }
}
