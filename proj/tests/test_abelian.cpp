#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "brnr/abelian.hpp"
#include "brnr/errors.hpp"

using namespace brnr;

namespace {

IntMatrix make(int r, int c, std::vector<std::int64_t> v) {
  IntMatrix m(r, c);
  m.a = std::move(v);
  return m;
}

void check_snf(const IntMatrix& m) {
  SmithResult s = smith_normal_form(m);
  CHECK(matmul(matmul(s.u, m), s.v) == s.d);
  CHECK(std::abs(det(s.u)) == 1);
  CHECK(std::abs(det(s.v)) == 1);
  for (int i = 0; i < std::min(s.d.rows, s.d.cols); ++i)
    for (int j = 0; j < std::min(s.d.rows, s.d.cols); ++j)
      if (i != j) CHECK(s.d.at(i, j) == 0);
  for (int i = 0; i + 1 < std::min(s.d.rows, s.d.cols); ++i)
    if (s.d.at(i + 1, i + 1) != 0)
      CHECK((s.d.at(i, i) == 0 ? true : s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0));
}

}  // namespace

TEST_CASE("smith normal form on pinned examples") {
  {
    IntMatrix m = IntMatrix::identity(2);
    SmithResult s = smith_normal_form(m);
    CHECK(s.d == IntMatrix::identity(2));
  }
  {
    // [[2,4],[6,8]]: det -8, entry gcd 2, so D = diag(2, 4)
    IntMatrix m = make(2, 2, {2, 4, 6, 8});
    SmithResult s = smith_normal_form(m);
    CHECK(s.d.at(0, 0) == 2);
    CHECK(s.d.at(1, 1) == 4);
    check_snf(m);
  }
  {
    IntMatrix m(2, 2);
    SmithResult s = smith_normal_form(m);
    CHECK(s.d == IntMatrix(2, 2));
  }
}

TEST_CASE("smith normal form randomized audit") {
  std::mt19937_64 rng(987);
  std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m(dim(rng), dim(rng));
    for (auto& v : m.a) v = entry(rng);
    check_snf(m);
  }
}

TEST_CASE("abelian group basics") {
  AbelianGroup a({2, 4});
  CHECK(a.order() == 8);
  CHECK(a.exponent() == 4);
  CHECK(a.rank() == 2);
  CHECK(AbelianGroup{}.order() == 1);
  CHECK_THROWS_AS(AbelianGroup({4, 2}), ArgumentError);
  CHECK_THROWS_AS(AbelianGroup({1, 2}), ArgumentError);

  AbelianElement x = a.reduce({1, 3});
  CHECK(a.add(x, x) == a.reduce({0, 6}));
  CHECK(a.element_order(x) == 4);
  CHECK(a.index_of(a.element_at(5)) == 5);
}

TEST_CASE("pairing") {
  AbelianGroup z3({3});
  CHECK(pairing(z3, z3.reduce({1}), z3.reduce({1})) == QmodZ::make(1, 3));
  CHECK(pairing(z3, z3.reduce({2}), z3.reduce({0})).zero());

  AbelianGroup a({2, 4});
  // 1/2 + 2/4 = 0 mod 1
  CHECK(pairing(a, a.reduce({1, 1}), a.reduce({1, 2})).zero());
  CHECK(dual_group(a) == a);

  // non-degeneracy with dual basis vectors, exhaustively for small groups
  for (std::int64_t i = 1; i < a.order(); ++i) {
    AbelianElement v = a.element_at(i);
    bool hit = false;
    for (int j = 0; j < a.rank(); ++j)
      if (!pairing(a, a.basis_element(j), v).zero()) hit = true;
    CHECK(hit);
  }
}

TEST_CASE("homomorphisms") {
  AbelianGroup a({2, 4}), b({4});
  // e1 -> 2, e2 -> 1 is a hom Z/2 x Z/4 -> Z/4
  AbelianHom f = AbelianHom::from_images(a, b, {b.reduce({2}), b.reduce({1})});
  CHECK(f.apply(a.reduce({1, 1})) == b.reduce({3}));
  // e1 -> 1 is not (order 2 generator cannot hit an order-4 element)
  CHECK_THROWS_AS(AbelianHom::from_images(a, b, {b.reduce({1}), b.reduce({0})}),
                  ArgumentError);

  AbelianHom id = AbelianHom::identity(a);
  CHECK(id.compose_after(id).matrix() == id.matrix());
}

TEST_CASE("kernel and solve agree with brute force") {
  std::mt19937_64 rng(424242);
  std::vector<std::vector<std::int64_t>> shapes = {{2, 4}, {3, 9}, {2, 2, 4}, {5}, {8}};
  for (const auto& dom_inv : shapes)
    for (const auto& cod_inv : shapes) {
      AbelianGroup dom(dom_inv), cod(cod_inv);
      for (int trial = 0; trial < 6; ++trial) {
        IntMatrix m(cod.rank(), dom.rank());
        for (int i = 0; i < m.rows; ++i)
          for (int j = 0; j < m.cols; ++j) {
            // random multiple of d_i / gcd(d_i, a_j) is always well-defined
            std::int64_t step = cod.invariants()[i] / std::gcd(cod.invariants()[i], dom.invariants()[j]);
            m.at(i, j) = step * static_cast<std::int64_t>(rng() % 7);
          }
        AbelianHom f(dom, cod, m);
        HomSolver solver(f);
        AbelianSubgroup ker(dom, solver.kernel_generators());

        std::set<std::vector<std::int64_t>> brute_kernel, brute_image;
        for (std::int64_t i = 0; i < dom.order(); ++i) {
          AbelianElement x = dom.element_at(i);
          AbelianElement y = f.apply(x);
          if (cod.is_zero(y)) brute_kernel.insert(x.coords);
          brute_image.insert(y.coords);
        }
        CHECK(ker.order() == static_cast<std::int64_t>(brute_kernel.size()));
        for (const auto& v : brute_kernel) CHECK(ker.contains({v}));

        for (std::int64_t i = 0; i < cod.order(); ++i) {
          AbelianElement t = cod.element_at(i);
          auto x = solver.solve(t);
          CHECK(x.has_value() == brute_image.count(t.coords));
          if (x) CHECK(f.apply(*x) == t);
        }
      }
    }
}

TEST_CASE("subgroup membership, order, decomposition") {
  AbelianGroup a({3, 9, 9});
  AbelianSubgroup h(a, {a.reduce({0, 3, 0}), a.reduce({0, 0, 3})});
  CHECK(h.order() == 9);
  CHECK(h.contains(a.reduce({0, 6, 3})));
  CHECK_FALSE(h.contains(a.reduce({1, 0, 0})));
  CHECK_FALSE(h.contains(a.reduce({0, 1, 0})));

  auto dec = h.decompose();
  CHECK(dec.group.invariants() == std::vector<std::int64_t>{3, 3});
  // express/embed round-trip on the whole subgroup
  for (std::int64_t i = 0; i < dec.group.order(); ++i) {
    AbelianElement c = dec.group.element_at(i);
    AbelianElement x = dec.embed.apply(c);
    CHECK(h.contains(x));
    auto back = dec.express(x);
    REQUIRE(back.has_value());
    CHECK(*back == c);
  }
  CHECK_FALSE(dec.express(a.reduce({1, 0, 0})).has_value());
}

TEST_CASE("quotient on pinned examples") {
  {
    AbelianGroup a({3, 3});
    auto q = quotient(a, subgroup_generated(a, {a.reduce({1, 0})}));
    CHECK(q.group.invariants() == std::vector<std::int64_t>{3});
  }
  {
    AbelianGroup a({3, 3, 3});
    auto q = quotient(a, subgroup_generated(a, {a.basis_element(0), a.basis_element(1)}));
    CHECK(q.group.invariants() == std::vector<std::int64_t>{3});
  }
  {
    AbelianGroup a({2, 4});
    auto q = quotient(a, subgroup_generated(a, {a.basis_element(0), a.basis_element(1)}));
    CHECK(q.group.trivial());
  }
}

TEST_CASE("quotient properties: order, kernel, lift section") {
  std::mt19937_64 rng(777);
  std::vector<std::vector<std::int64_t>> shapes = {{2, 4}, {3, 9, 9}, {2, 2, 2}, {12}, {2, 6}};
  for (const auto& inv : shapes) {
    AbelianGroup a(inv);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<AbelianElement> gens;
      int k = static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i) a.element_at(static_cast<std::int64_t>(rng() % a.order()));
      for (int i = 0; i < k; ++i)
        gens.push_back(a.element_at(static_cast<std::int64_t>(rng() % a.order())));
      AbelianSubgroup h(a, gens);
      auto q = quotient(a, h);
      CHECK(a.order() == h.order() * q.group.order());
      for (const auto& g : gens) CHECK(q.group.is_zero(q.proj.apply(g)));
      // kernel of proj is exactly h
      std::int64_t ker_count = 0;
      for (std::int64_t i = 0; i < a.order(); ++i) {
        AbelianElement x = a.element_at(i);
        bool in_ker = q.group.is_zero(q.proj.apply(x));
        if (in_ker) ++ker_count;
        CHECK(in_ker == h.contains(x));
      }
      CHECK(ker_count == h.order());
      for (std::int64_t i = 0; i < q.group.order(); ++i) {
        AbelianElement y = q.group.element_at(i);
        CHECK(q.proj.apply(q.lift(y)) == y);
      }
    }
  }
}

TEST_CASE("fixed subgroup") {
  AbelianGroup a({5});
  AbelianHom dbl(a, a, make(1, 1, {2}));
  CHECK(fixed_subgroup(a, dbl).order() == 1);
  CHECK(fixed_subgroup(a, AbelianHom::identity(a)).order() == 5);

  AbelianGroup b({3, 9, 9});
  // multiplication by 4 fixes exactly the 3-torsion of Z/9 parts and all of Z/3
  AbelianHom f(b, b, make(3, 3, {4, 0, 0, 0, 4, 0, 0, 0, 4}));
  auto fix = fixed_subgroup(b, f);
  CHECK(fix.order() == 27);
  CHECK(fix.decompose().group.invariants() == std::vector<std::int64_t>{3, 3, 3});
}

TEST_CASE("orthogonal complement") {
  AbelianGroup a({2, 4});
  // orthogonal of {(0,2)}: <c,(0,2)> = 2 c2 / 4 = c2/2 -> need c2 even
  auto k = orthogonal_complement(a, {a.reduce({0, 2})});
  CHECK(k.order() == 4);
  for (std::int64_t i = 0; i < a.order(); ++i) {
    AbelianElement c = a.element_at(i);
    CHECK(k.contains(c) == pairing(a, c, a.reduce({0, 2})).zero());
  }
}

TEST_CASE("QmodZ strings and reduction") {
  CHECK(QmodZ::make(2, 4) == QmodZ::make(1, 2));
  CHECK(QmodZ::make(4, 4).zero());
  CHECK(QmodZ::make(-1, 3) == QmodZ::make(2, 3));
  CHECK(QmodZ::make(5, 6).str() == "5/6");
  CHECK((QmodZ::make(1, 2) + QmodZ::make(1, 2)).zero());
}
