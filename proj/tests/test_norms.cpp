#include "doctest.h"

#include <algorithm>
#include <set>

#include "brnr/norms.hpp"

using namespace brnr;

namespace {

GroupPtr s3() { return permutation_group(3, {{1, 0, 2}, {1, 2, 0}}); }

ElementId word(const Group& g, std::initializer_list<std::pair<int, std::int64_t>> ps) {
  ElementId e = 0;
  for (auto [gen, exp] : ps) e = g.mult(e, pow(g, g.generators()[gen], exp));
  return e;
}

struct FqContext {
  GroupPtr g;
  Abelianization ab;
  ConjugacyClasses cc;
  NormData nd;
};

FqContext fq_context(GroupPtr g, std::int64_t q, std::vector<ElementId> s = {}) {
  FqContext c{g, abelianize(g), conjugacy_classes(*g), {}};
  c.nd = norm_data(c.ab, c.cc, twist(validate_frobenius(g, q, std::move(s)), c.ab));
  return c;
}

}  // namespace

TEST_CASE("abelianize: pinned quotients") {
  CHECK(abelianize(demarche_group(3, 1)).quotient.invariants() ==
        std::vector<std::int64_t>{3, 9, 9});
  CHECK(abelianize(demarche_group(5, 1)).quotient.invariants() ==
        std::vector<std::int64_t>{5, 25, 25});
  CHECK(abelianize(s3()).quotient.invariants() == std::vector<std::int64_t>{2});

  // abelian G: bar is an isomorphism
  auto a = abelian_group_backend({2, 4});
  auto ab = abelianize(a);
  CHECK(ab.quotient.order() == 8);
  std::set<AbelianElement> images;
  for (ElementId e = 0; e < a->order(); ++e) images.insert(ab.bar(e));
  CHECK(images.size() == 8);
}

TEST_CASE("abelianize: bar is a homomorphism with kernel G^der") {
  for (GroupPtr g : {s3(), demarche_group(3, 1), heisenberg_group(3),
                     permutation_group(4, {{1, 0, 3, 2}, {2, 3, 0, 1}, {1, 2, 0, 3}})}) {
    auto ab = abelianize(g);
    CHECK(ab.quotient.order() * static_cast<std::int64_t>(ab.derived.members.size()) ==
          g->order());
    for (ElementId x = 0; x < std::min<std::int64_t>(g->order(), 200); ++x)
      for (ElementId y = 0; y < std::min<std::int64_t>(g->order(), 200); ++y)
        CHECK(ab.bar(g->mult(x, y)) == ab.quotient.add(ab.bar(x), ab.bar(y)));
    for (ElementId x = 0; x < g->order(); ++x)
      CHECK(ab.quotient.is_zero(ab.bar(x)) == ab.derived.contains(x));
  }
}

TEST_CASE("norm lengths on demarche(3,1), q=4") {
  auto c = fq_context(demarche_group(3, 1), 4);
  const Group& g = *c.g;

  CHECK(norm_length(c.nd, c.cc, 0) == 1);

  ElementId x = g.generators()[0];
  CHECK(norm_length(c.nd, c.cc, x) == 3);  // n_x = l^m
  NormRecord nx = norm(c.nd, c.cc, x);
  CHECK(nx.value == c.ab.quotient.mul(3, c.ab.bar(x)));  // N(x) = xbar^3

  // b3 = x^{l^floor(m/2)} y^{l^floor(m/2)} z = x y z for m = 1
  ElementId b3 = word(g, {{0, 1}, {1, 1}, {2, 1}});
  CHECK(norm_length(c.nd, c.cc, b3) == 3);  // l^ceil(m/2)
  NormRecord n3 = norm(c.nd, c.cc, b3);
  AbelianElement expect = c.ab.quotient.add(
      c.ab.quotient.add(c.ab.quotient.mul(3, c.ab.bar(g.generators()[0])),
                        c.ab.quotient.mul(3, c.ab.bar(g.generators()[1]))),
      c.ab.quotient.mul(3, c.ab.bar(g.generators()[2])));
  CHECK(n3.value == expect);  // xbar^3 ybar^3 zbar^3 (zbar^3 = 0)
}

TEST_CASE("norm lengths on demarche(3,2), q=19") {
  auto c = fq_context(demarche_group(3, 2), 19);
  const Group& g = *c.g;
  ElementId x = g.generators()[0];
  CHECK(norm_length(c.nd, c.cc, x) == 9);  // l^m
  CHECK(norm(c.nd, c.cc, x).value == c.ab.quotient.mul(9, c.ab.bar(x)));
  // b3 = x^3 y^3 z has n = l^ceil(m/2) = 9... for m=2: ceil(2/2)=1 -> 3
  ElementId b3 = word(g, {{0, 3}, {1, 3}, {2, 1}});
  CHECK(norm_length(c.nd, c.cc, b3) == 3);
}

TEST_CASE("norms are class functions landing in the fixed subgroup") {
  for (auto [gp, q] : std::vector<std::pair<GroupPtr, std::int64_t>>{
           {s3(), 5},
           {heisenberg_group(3), 4},
           {demarche_group(3, 1), 4},
           {permutation_group(4, {{1, 2, 3, 0}, {1, 0, 3, 2}}, 100), 3}}) {
    auto c = fq_context(gp, q);
    const Group& g = *gp;
    if (g.order() <= 1000) {
      for (ElementId b = 0; b < g.order(); ++b)
        for (ElementId conj_by = 0; conj_by < g.order(); ++conj_by)
          CHECK(norm(c.nd, c.cc, conj(g, conj_by, b)).value == norm(c.nd, c.cc, b).value);
    }
    auto fixed = fixed_subgroup(c.ab.quotient, c.nd.phi.induced);
    for (std::size_t cls = 0; cls < c.cc.count(); ++cls)
      CHECK(fixed.contains(c.nd.norm_value[cls]));
  }
}

TEST_CASE("norm subgroup: S3 constant q=5 equals the fixed subgroup") {
  auto c = fq_context(s3(), 5);
  // brute force over all six elements: phi(b) = b^5, n_b = 1, N(b) = bar(b)
  const Group& g = *c.g;
  std::set<AbelianElement> norms;
  for (ElementId b = 0; b < g.order(); ++b) {
    CHECK(norm_length(c.nd, c.cc, b) == 1);
    norms.insert(norm(c.nd, c.cc, b).value);
  }
  AbelianSubgroup nq = norm_subgroup(c.ab, c.nd);
  CHECK(nq.order() == 2);
  auto fixed = fixed_subgroup(c.ab.quotient, c.nd.phi.induced);
  CHECK(fixed.order() == 2);
  CHECK(nq.same_subgroup_as(fixed));
}

TEST_CASE("norm subgroup: demarche(3,1) q=4 is (Z/3)^2") {
  auto c = fq_context(demarche_group(3, 1), 4);
  AbelianSubgroup nq = norm_subgroup(c.ab, c.nd);
  CHECK(nq.order() == 9);
  CHECK(nq.decompose().group.invariants() == std::vector<std::int64_t>{3, 3});
  const Group& g = *c.g;
  CHECK(nq.contains(c.ab.quotient.mul(3, c.ab.bar(g.generators()[0]))));
  CHECK(nq.contains(c.ab.quotient.mul(3, c.ab.bar(g.generators()[1]))));
  CHECK_FALSE(nq.contains(c.ab.bar(g.generators()[2])));
}

TEST_CASE("abelian G: norm subgroup equals fixed subgroup and N(b) = bar b") {
  for (auto inv : std::vector<std::vector<std::int64_t>>{{5}, {2, 4}, {3, 9}}) {
    auto g = abelian_group_backend(inv);
    for (std::int64_t q : {2, 3, 7}) {
      if (g->order() % q == 0) continue;
      auto c = fq_context(g, q);
      auto fixed = fixed_subgroup(c.ab.quotient, c.nd.phi.induced);
      CHECK(norm_subgroup(c.ab, c.nd).same_subgroup_as(fixed));
    }
  }
}

TEST_CASE("relevable sets") {
  auto c = fq_context(demarche_group(3, 1), 4);
  const Group& g = *c.g;

  // n = 1: exactly the bars of elements with n_b = 1; these are the b with
  // x- and y-exponents divisible by 3, so the x-part of bar is 3-divisible
  auto r1 = relevable_set(c.ab, c.cc, c.nd, 1);
  std::set<AbelianElement> expect;
  for (ElementId b = 0; b < g.order(); ++b)
    if (norm_length(c.nd, c.cc, b) == 1) expect.insert(c.ab.bar(b));
  CHECK(std::set<AbelianElement>(r1.begin(), r1.end()) == expect);
  CHECK(r1.size() < static_cast<std::size_t>(c.ab.quotient.order()));

  // subset of the phi^n-fixed part, and monotone under divisibility
  std::int64_t l = norm_length_lcm(c.nd);
  CHECK(l == 3);
  auto rl = relevable_set(c.ab, c.cc, c.nd, l);
  std::set<AbelianElement> all_bars;
  for (ElementId b = 0; b < g.order(); ++b) all_bars.insert(c.ab.bar(b));
  CHECK(std::set<AbelianElement>(rl.begin(), rl.end()) == all_bars);
  for (const auto& v : r1) CHECK(std::binary_search(rl.begin(), rl.end(), v));
}
