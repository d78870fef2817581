#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "brnr/errors.hpp"
#include "brnr/group.hpp"

using namespace brnr;

namespace {

// Backend laws: identity/inverse on every element, associativity on all
// triples for tiny groups and on a seeded sample otherwise.
void check_group_laws(const Group& g) {
  for (ElementId a = 0; a < g.order(); ++a) {
    CHECK(g.mult(0, a) == a);
    CHECK(g.mult(a, 0) == a);
    CHECK(g.mult(a, g.inv(a)) == 0);
    CHECK(g.mult(g.inv(a), a) == 0);
  }
  if (g.order() <= 200) {
    for (ElementId a = 0; a < g.order(); ++a)
      for (ElementId b = 0; b < g.order(); ++b)
        for (ElementId c = 0; c < g.order(); ++c)
          REQUIRE(g.mult(g.mult(a, b), c) == g.mult(a, g.mult(b, c)));
  } else {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::int64_t> pick(0, g.order() - 1);
    for (int i = 0; i < 10000; ++i) {
      ElementId a = static_cast<ElementId>(pick(rng));
      ElementId b = static_cast<ElementId>(pick(rng));
      ElementId c = static_cast<ElementId>(pick(rng));
      REQUIRE(g.mult(g.mult(a, b), c) == g.mult(a, g.mult(b, c)));
    }
  }
}

GroupPtr s3() { return permutation_group(3, {{1, 0, 2}, {1, 2, 0}}); }

}  // namespace

TEST_CASE("permutation closure: S3") {
  auto g = s3();
  CHECK(g->order() == 6);
  check_group_laws(*g);
}

TEST_CASE("permutation closure: Klein group") {
  auto g = permutation_group(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  CHECK(g->order() == 4);
  for (ElementId a = 0; a < g->order(); ++a) CHECK(g->inv(a) == a);
}

TEST_CASE("permutation closure: order-21 Frobenius group") {
  // 7-cycle and x -> 2x mod 7; oracle: independent closure over raw images
  std::vector<std::vector<int>> gens = {{1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5}};
  auto g = permutation_group(7, gens);

  std::set<std::vector<int>> closure;
  std::vector<int> id(7);
  std::iota(id.begin(), id.end(), 0);
  closure.insert(id);
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<std::vector<int>> next = closure;
    for (const auto& p : closure)
      for (const auto& q : gens) {
        std::vector<int> r(7);
        for (int i = 0; i < 7; ++i) r[i] = q[p[i]];
        if (next.insert(r).second) grew = true;
      }
    closure.swap(next);
  }
  CHECK(closure.size() == 21);
  CHECK(g->order() == 21);
  check_group_laws(*g);
}

TEST_CASE("permutation closure respects the element cap") {
  CHECK_THROWS_AS(permutation_group(8, {{1, 2, 3, 4, 5, 6, 7, 0}, {1, 0, 2, 3, 4, 5, 6, 7}}, 100),
                  ResourceError);
}

TEST_CASE("demarche family: order and identities") {
  auto g = demarche_group(3, 1);
  CHECK(g->order() == 729);
  check_group_laws(*g);

  ElementId x = g->generators()[0], y = g->generators()[1], z = g->generators()[2];
  // [x,y] = z^-3, x and y commute with z
  CHECK(commutator(*g, x, y) == pow(*g, z, -3));
  CHECK(commutator(*g, x, z) == 0);
  CHECK(commutator(*g, y, z) == 0);

  // center = <x^3, y^3, z>, order 81
  std::int64_t central = 0;
  for (ElementId a = 0; a < g->order(); ++a) {
    bool c = true;
    for (ElementId gen : g->generators())
      if (g->mult(a, gen) != g->mult(gen, a)) c = false;
    central += c;
  }
  CHECK(central == 81);
  auto zc = subgroup_closure(*g, {pow(*g, x, 3), pow(*g, y, 3), z});
  CHECK(static_cast<std::int64_t>(zc.members.size()) == 81);

  CHECK(demarche_group(5, 1)->order() == 15625);
  CHECK_THROWS_AS(demarche_group(4, 1), ArgumentError);
  CHECK_THROWS_AS(demarche_group(2, 1), ArgumentError);
}

TEST_CASE("conjugacy classes: S3 and class-function property") {
  auto g = s3();
  auto cc = conjugacy_classes(*g);
  REQUIRE(cc.count() == 3);
  std::vector<std::size_t> sizes;
  for (const auto& m : cc.members) sizes.push_back(m.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});

  for (ElementId a = 0; a < g->order(); ++a)
    for (ElementId gen : g->generators())
      CHECK(cc.class_of[conj(*g, gen, a)] == cc.class_of[a]);
}

TEST_CASE("conjugacy classes: demarche(3,1) against all-conjugator oracle") {
  auto g = demarche_group(3, 1);
  auto cc = conjugacy_classes(*g);
  for (const auto& m : cc.members) CHECK(9 % m.size() == 0);
  // brute-force the class of each representative over every conjugator
  for (std::size_t cls = 0; cls < cc.count(); ++cls) {
    std::set<ElementId> brute;
    for (ElementId c = 0; c < g->order(); ++c) brute.insert(conj(*g, c, cc.reps[cls]));
    std::vector<ElementId> brute_sorted(brute.begin(), brute.end());
    CHECK(brute_sorted == cc.members[cls]);
  }
}

TEST_CASE("conjugacy classes: abelian groups split completely") {
  auto g = abelian_group_backend({2, 4});
  auto cc = conjugacy_classes(*g);
  CHECK(cc.count() == 8);
}

TEST_CASE("derived subgroup") {
  auto g3 = s3();
  auto d = derived_subgroup(*g3);
  CHECK(d.members.size() == 3);  // A3

  auto ab = abelian_group_backend({2, 4});
  CHECK(derived_subgroup(*ab).members.size() == 1);

  auto dem = demarche_group(3, 1);
  auto dd = derived_subgroup(*dem);
  ElementId z = dem->generators()[2];
  auto expect = subgroup_closure(*dem, {pow(*dem, z, 3)});
  CHECK(dd.members == expect.members);  // <z^3> = C_3

  // normality: conjugation by class representatives stays inside
  auto cc = conjugacy_classes(*g3);
  for (ElementId r : cc.reps)
    for (ElementId m : d.members) CHECK(d.contains(conj(*g3, r, m)));
}

TEST_CASE("products") {
  auto g = direct_product(s3(), abelian_group_backend({2}));
  CHECK(g->order() == 12);
  check_group_laws(*g);

  CHECK(abelian_group_backend({2, 4})->order() == 8);

  // Z/7 x| Z/3 with the acting generator doubling
  auto n = abelian_group_backend({7});
  auto h = abelian_group_backend({3});
  std::vector<ElementId> act(7);
  for (int i = 0; i < 7; ++i) act[i] = static_cast<ElementId>(2 * i % 7);
  auto sd = semidirect_product(n, h, {act});
  CHECK(sd->order() == 21);
  bool abelian = true;
  for (ElementId a = 0; a < sd->order() && abelian; ++a)
    for (ElementId b = 0; b < sd->order(); ++b)
      if (sd->mult(a, b) != sd->mult(b, a)) {
        abelian = false;
        break;
      }
  CHECK_FALSE(abelian);
  check_group_laws(*sd);

  // non-homomorphic action must be rejected: x -> x+1 does not fix 0
  std::vector<ElementId> bad(7);
  for (int i = 0; i < 7; ++i) bad[i] = static_cast<ElementId>((i + 1) % 7);
  CHECK_THROWS_AS(semidirect_product(n, h, {bad}), ArgumentError);
  // bijective, fixes identity, but not an automorphism of Z/7
  std::vector<ElementId> notauto = {0, 2, 1, 3, 4, 5, 6};
  CHECK_THROWS_AS(semidirect_product(n, h, {notauto}), ArgumentError);
}

TEST_CASE("heisenberg groups") {
  auto g = heisenberg_group(3);
  CHECK(g->order() == 27);
  check_group_laws(*g);
  CHECK(exponent(*g) == 3);
  CHECK(derived_subgroup(*g).members.size() == 3);
  CHECK(heisenberg_group(5)->order() == 125);
}

TEST_CASE("element order and exponent") {
  auto g = s3();
  CHECK(exponent(*g) == 6);
  CHECK(element_order(*g, 0) == 1);
  auto dem = demarche_group(3, 1);
  CHECK(exponent(*dem) == 9);
}
