#include "brnr/galois.hpp"

#include <numeric>
#include <random>

#include "brnr/errors.hpp"
#include "brnr/parallel.hpp"

namespace brnr {

namespace {

std::int64_t prime_of_prime_power(std::int64_t q) {
  require_arg(q >= 2, "q must be >= 2");
  std::int64_t p = q;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  std::int64_t r = q;
  while (r % p == 0) r /= p;
  require_arg(r == 1, "q must be a prime power");
  return p;
}

void check_permutation(const Group& g, const std::vector<ElementId>& t,
                       const char* what) {
  require_arg(static_cast<std::int64_t>(t.size()) == g.order(),
              std::string(what) + ": image array length must equal the group order");
  std::vector<bool> seen(g.order(), false);
  for (ElementId v : t) {
    require_arg(v >= 0 && v < g.order() && !seen[v],
                std::string(what) + ": not a bijection of the element set");
    seen[v] = true;
  }
}

// s(ab) = s(a)s(b); exhaustive below 1e4 elements, generator-complete plus a
// deterministic random sample above.
void check_automorphism(const Group& g, const std::vector<ElementId>& s, const char* what) {
  check_permutation(g, s, what);
  require_arg(s[0] == 0, std::string(what) + ": must fix the identity");
  auto check_pair = [&](ElementId a, ElementId b) {
    require_arg(s[g.mult(a, b)] == g.mult(s[a], s[b]),
                std::string(what) + ": not a group automorphism");
  };
  if (g.order() <= 10'000) {
    for (ElementId a = 0; a < g.order(); ++a)
      for (ElementId b = 0; b < g.order(); ++b) check_pair(a, b);
  } else {
    for (ElementId a = 0; a < g.order(); ++a)
      for (ElementId gen : g.generators()) check_pair(a, gen);
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::int64_t> pick(0, g.order() - 1);
    for (int i = 0; i < 10'000; ++i)
      check_pair(static_cast<ElementId>(pick(rng)), static_cast<ElementId>(pick(rng)));
  }
}

std::vector<ElementId> invert_table(const std::vector<ElementId>& t) {
  std::vector<ElementId> inv(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) inv[t[i]] = static_cast<ElementId>(i);
  return inv;
}

std::int64_t permutation_order(const std::vector<ElementId>& t) {
  std::vector<bool> seen(t.size(), false);
  std::int64_t o = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (seen[i]) continue;
    std::int64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = t[j]) {
      seen[j] = true;
      ++len;
    }
    o = std::lcm(o, len);
  }
  return o;
}

// bar(phi(preimage of each basis vector)) gives the induced matrix; audited
// on every class representative by callers that have conjugacy data.
AbelianHom induced_on_ab(const Group& g, const std::vector<ElementId>& element_map,
                         const Abelianization& ab) {
  std::vector<AbelianElement> images;
  images.reserve(ab.gen_preimages.size());
  for (ElementId pre : ab.gen_preimages) images.push_back(ab.bar(element_map[pre]));
  AbelianHom h = AbelianHom::from_images(ab.quotient, ab.quotient, images);
  (void)g;
  return h;
}

std::vector<ElementId> twist_table(const Group& g, const std::vector<ElementId>& act_inv,
                                   std::int64_t qs) {
  std::vector<ElementId> t(g.order());
  parallel::parallel_for(g.order(), [&](std::int64_t b) {
    t[b] = act_inv[pow(g, static_cast<ElementId>(b), qs)];
  });
  return t;
}

}  // namespace

std::vector<ElementId> identity_table(const Group& g) {
  std::vector<ElementId> t(g.order());
  for (std::int64_t i = 0; i < g.order(); ++i) t[i] = static_cast<ElementId>(i);
  return t;
}

FrobeniusData validate_frobenius(GroupPtr g, std::int64_t q, std::vector<ElementId> s) {
  FrobeniusData d;
  d.group = g;
  d.q = q;
  d.p = prime_of_prime_power(q);
  if (g->order() % d.p == 0) throw DomainError("characteristic divides group order");
  if (s.empty()) s = identity_table(*g);
  check_automorphism(*g, s, "frobenius action");
  d.s = std::move(s);
  d.s_inv = invert_table(d.s);
  d.s_order = permutation_order(d.s);
  return d;
}

FiniteGaloisData validate_finite_galois(GroupPtr g, GroupPtr gamma,
                                        std::vector<std::vector<ElementId>> action,
                                        std::vector<std::int64_t> cyclo) {
  FiniteGaloisData d;
  d.group = g;
  d.gamma = gamma;
  d.n = exponent(*g);
  require_arg(static_cast<std::int64_t>(action.size()) == gamma->order(),
              "one action permutation required per Galois element");
  require_arg(static_cast<std::int64_t>(cyclo.size()) == gamma->order(),
              "one cyclotomic value required per Galois element");
  for (std::int64_t i = 0; i < gamma->order(); ++i)
    check_automorphism(*g, action[i], "galois action");
  require_arg(action[0] == identity_table(*g), "identity must act trivially");

  // action is a homomorphism: compare tables on all pairs (cheap lookups)
  for (ElementId a = 0; a < gamma->order(); ++a)
    for (ElementId b = 0; b < gamma->order(); ++b) {
      const auto& ab_tab = action[gamma->mult(a, b)];
      const auto& ta = action[a];
      const auto& tb = action[b];
      if (g->order() <= 10'000) {
        for (ElementId x = 0; x < g->order(); ++x)
          require_arg(ab_tab[x] == ta[tb[x]], "action is not a homomorphism");
      } else {
        for (ElementId x : g->generators())
          require_arg(ab_tab[x] == ta[tb[x]], "action is not a homomorphism");
      }
    }

  for (auto& c : cyclo) {
    c = ((c % d.n) + d.n) % d.n;
    require_arg(std::gcd(c, d.n) == 1, "cyclotomic values must be units mod exp(G)");
  }
  require_arg(cyclo[0] % d.n == 1 % d.n, "cyclotomic character must send identity to 1");
  for (ElementId a = 0; a < gamma->order(); ++a)
    for (ElementId b = 0; b < gamma->order(); ++b)
      require_arg(cyclo[gamma->mult(a, b)] == cyclo[a] * cyclo[b] % d.n,
                  "cyclotomic character is not a homomorphism");

  d.cyclo = std::move(cyclo);
  for (auto& t : action) d.action_inv.push_back(invert_table(t));
  d.action = std::move(action);
  return d;
}

FiniteGaloisData real_data(GroupPtr g, std::vector<ElementId> action) {
  if (action.empty()) action = identity_table(*g);
  check_automorphism(*g, action, "real action");
  std::vector<ElementId> square(g->order());
  for (std::int64_t i = 0; i < g->order(); ++i) square[i] = action[action[i]];
  require_arg(square == identity_table(*g), "real-place action must be an involution");
  GroupPtr gamma = abelian_group_backend({2});
  std::int64_t n = exponent(*g);
  return validate_finite_galois(g, gamma, {identity_table(*g), action}, {1, n - 1});
}

TwistMap twist(const FrobeniusData& data, const Abelianization& ab) {
  const Group& g = *data.group;
  TwistMap t;
  t.element_map = twist_table(g, data.s_inv, data.q);
  t.induced = induced_on_ab(g, t.element_map, ab);
  return t;
}

TwistMap twist(const FiniteGaloisData& data, ElementId sigma, const Abelianization& ab) {
  const Group& g = *data.group;
  TwistMap t;
  t.element_map = twist_table(g, data.action_inv[sigma], data.cyclo[sigma]);
  t.induced = induced_on_ab(g, t.element_map, ab);
  return t;
}

}  // namespace brnr
