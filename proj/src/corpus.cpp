#include "brnr/corpus.hpp"

#include <numeric>

#include "brnr/errors.hpp"

namespace brnr {

namespace {

GroupPtr make_s3() { return permutation_group(3, {{1, 0, 2}, {1, 2, 0}}); }

GroupPtr make_d4() { return permutation_group(4, {{1, 2, 3, 0}, {1, 0, 3, 2}}); }

GroupPtr make_q8() {
  // regular representation on {1, i, -1, -i, j, k, -j, -k}
  return permutation_group(8, {{1, 2, 3, 0, 5, 6, 7, 4}, {4, 7, 6, 5, 2, 1, 0, 3}});
}

GroupPtr make_a4() { return permutation_group(4, {{1, 2, 0, 3}, {0, 2, 3, 1}}); }

GroupPtr make_frob21() {
  return permutation_group(7, {{1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5}});
}

bool is_prime_power(std::int64_t q) {
  if (q < 2) return false;
  std::int64_t p = q;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

GroupPtr corpus_group(const std::string& name) {
  if (name == "s3") return make_s3();
  if (name == "d4") return make_d4();
  if (name == "q8") return make_q8();
  if (name == "a4") return make_a4();
  if (name == "frob21") return make_frob21();
  if (name == "heisenberg") return heisenberg_group(3);
  if (name == "heisenberg5") return heisenberg_group(5);
  if (name == "demarche") return demarche_group(3, 1);
  if (name == "klein") return permutation_group(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  throw ArgumentError("unknown corpus group: " + name);
}

std::vector<std::string> corpus_group_names() {
  return {"s3", "d4", "q8", "a4", "frob21", "heisenberg", "heisenberg5", "demarche", "klein"};
}

std::vector<std::int64_t> coprime_prime_powers(std::int64_t n, int count) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; static_cast<int>(out.size()) < count; ++q)
    if (is_prime_power(q) && std::gcd(q, n) == 1) out.push_back(q);
  return out;
}

std::vector<FqCase> default_fq_corpus() {
  std::vector<FqCase> cases;
  auto add_constant = [&](const std::string& name, GroupPtr g, int nq) {
    for (std::int64_t q : coprime_prime_powers(g->order(), nq))
      cases.push_back({name + "/q" + std::to_string(q), g, q, {}});
  };
  add_constant("s3", make_s3(), 3);
  add_constant("d4", make_d4(), 3);
  add_constant("q8", make_q8(), 3);
  add_constant("a4", make_a4(), 3);
  add_constant("frob21", make_frob21(), 3);
  add_constant("heisenberg3", heisenberg_group(3), 3);
  add_constant("heisenberg5", heisenberg_group(5), 3);
  add_constant("demarche31", demarche_group(3, 1), 2);  // q = 2 and the key q = 4
  // one more case with nontrivial Brauer group: 13 = 4*3 + 1
  cases.push_back({"demarche31/q13", demarche_group(3, 1), 13, {}});
  add_constant("klein", corpus_group("klein"), 3);
  add_constant("z5", abelian_group_backend({5}), 3);
  add_constant("z8", abelian_group_backend({8}), 3);
  add_constant("z2z4", abelian_group_backend({2, 4}), 3);
  add_constant("z3z9", abelian_group_backend({3, 9}), 3);

  // twisted actions: S3 conjugated by a transposition, Z/5 by inversion,
  // Z/3 x Z/9 by negation
  {
    GroupPtr g = make_s3();
    std::vector<ElementId> t(g->order());
    for (ElementId a = 0; a < g->order(); ++a) t[a] = conj(*g, 1, a);
    cases.push_back({"s3/q5-inner", g, 5, t});
  }
  {
    GroupPtr g = abelian_group_backend({5});
    std::vector<ElementId> t(g->order());
    for (ElementId a = 0; a < g->order(); ++a) t[a] = g->inv(a);
    cases.push_back({"z5/q2-negate", g, 2, t});
  }
  {
    GroupPtr g = abelian_group_backend({3, 9});
    std::vector<ElementId> t(g->order());
    for (ElementId a = 0; a < g->order(); ++a) t[a] = g->inv(a);
    cases.push_back({"z3z9/q2-negate", g, 2, t});
  }
  return cases;
}

FiniteGaloisData expand_cyclic_case(const CyclicChar0Case& c) {
  GroupPtr gamma = abelian_group_backend({c.gamma_order});
  std::int64_t n = exponent(*c.group);
  std::vector<ElementId> sigma =
      c.sigma_action.empty() ? identity_table(*c.group) : c.sigma_action;
  std::vector<std::vector<ElementId>> action;
  std::vector<std::int64_t> cyclo;
  std::vector<ElementId> cur = identity_table(*c.group);
  std::int64_t q = 1;
  for (std::int64_t k = 0; k < c.gamma_order; ++k) {
    action.push_back(cur);
    cyclo.push_back(q % n);
    std::vector<ElementId> nxt(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) nxt[i] = sigma[cur[i]];
    cur = std::move(nxt);
    q = q * (c.cyclo_sigma % n) % n;
  }
  return validate_finite_galois(c.group, gamma, std::move(action), std::move(cyclo));
}

std::vector<CyclicChar0Case> default_char0_corpus() {
  std::vector<CyclicChar0Case> cases;
  // demarche characteristic-0 data: Gamma' = Z/3, cyclo sigma -> 4 mod 9
  cases.push_back({"demarche31/g3c4", demarche_group(3, 1), 3, {}, 4});
  cases.push_back({"s3/g2c5", make_s3(), 2, {}, 5});
  cases.push_back({"q8/g2c3", make_q8(), 2, {}, 3});
  cases.push_back({"a4/g2c5", make_a4(), 2, {}, 5});
  cases.push_back({"heisenberg3/g2c2", heisenberg_group(3), 2, {}, 2});
  cases.push_back({"klein/g2c1", corpus_group("klein"), 2, {}, 1});
  cases.push_back({"z8/g2c3", abelian_group_backend({8}), 2, {}, 3});
  cases.push_back({"z8/g2c7", abelian_group_backend({8}), 2, {}, 7});
  cases.push_back({"z3z9/g3c4", abelian_group_backend({3, 9}), 3, {}, 4});
  cases.push_back({"frob21/g6c5", make_frob21(), 6, {}, 5});
  {
    // real-type: Z/4 constant with cyclo -1
    cases.push_back({"z4/real", abelian_group_backend({4}), 2, {}, 3});
  }
  {
    // S3 with the involution acting by conjugation
    GroupPtr g = make_s3();
    std::vector<ElementId> t(g->order());
    for (ElementId a = 0; a < g->order(); ++a) t[a] = conj(*g, 1, a);
    cases.push_back({"s3/g2c5-inner", g, 2, t, 5});
  }
  return cases;
}

}  // namespace brnr
