#include "brnr/brauer.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "brnr/errors.hpp"

namespace brnr {

namespace {

// integer-scaled pairing value in Z/e: sum c_i v_i (e/d_i) mod e
std::int64_t pairing_num(const AbelianGroup& a, const AbelianElement& c,
                         const AbelianElement& v, std::int64_t e) {
  __int128 acc = 0;
  for (int i = 0; i < a.rank(); ++i)
    acc += static_cast<__int128>(c.coords[i]) * v.coords[i] % e * (e / a.invariants()[i]);
  std::int64_t r = static_cast<std::int64_t>(acc % e);
  return r < 0 ? r + e : r;
}

AbelianGroup subgroup_invariants(const AbelianSubgroup& s) {
  return s.decompose().group;
}

// quotient fixed/norms through the decomposition of the fixed subgroup
AbelianGroup fixed_mod_norms(const AbelianSubgroup& fixed, const AbelianSubgroup& norms) {
  auto fdec = fixed.decompose();
  std::vector<AbelianElement> n_in_f;
  for (const auto& g : norms.basis()) {
    auto c = fdec.express(g);
    require_internal(c.has_value(), "norm subgroup escaped the fixed subgroup");
    n_in_f.push_back(*c);
  }
  return quotient(fdec.group, subgroup_generated(fdec.group, n_in_f)).group;
}

std::vector<std::int64_t> divisors_of(std::int64_t n) {
  std::vector<std::int64_t> d;
  for (std::int64_t i = 1; i * i <= n; ++i)
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

FqComputation brnral_fq_full(GroupPtr g, FrobeniusData data) {
  FqComputation c;
  c.group = g;
  c.data = std::move(data);
  c.ab = abelianize(g);
  c.classes = conjugacy_classes(*g);
  c.nd = norm_data(c.ab, c.classes, twist(c.data, c.ab));
  c.fixed = fixed_subgroup(c.ab.quotient, c.nd.phi.induced);
  c.norms = norm_subgroup(c.ab, c.nd);

  BrauerResult& r = c.result;
  r.mode = "fq";
  r.gab = c.ab.quotient;
  r.gder_order = static_cast<std::int64_t>(c.ab.derived.members.size());
  r.fixed_invariants = subgroup_invariants(c.fixed);
  r.fixed_subgroup_gens = c.fixed.decompose().cyclic_generators;
  r.norm_subgroup_gens = c.norms.basis();
  r.invariants = fixed_mod_norms(c.fixed, c.norms);

  // character side: M0 = M/(s-1)M paired perfectly with the fixed subgroup;
  // Br is the orthogonal complement of the norms. Isomorphism-type equality
  // with the quotient formula is the duality audit.
  c.m = character_module(c.ab, {c.nd.phi});
  c.h1 = h1_frobenius(c.m);
  r.h1_invariants = c.h1.group;
  require_internal(c.h1.group.order() == c.fixed.order(),
                   "duality audit failed: |M0| != |fixed subgroup|");
  c.char_side = orthogonal_complement(c.ab.quotient, c.norms.basis());
  {
    AbelianSubgroup n0(c.m.group, c.h1.n0_gens);
    require_internal(c.char_side.contains_subgroup(n0),
                     "duality audit failed: N0 not orthogonal to the norms");
    auto kdec = c.char_side.decompose();
    std::vector<AbelianElement> n0_in_k;
    for (const auto& gen : n0.basis()) n0_in_k.push_back(*kdec.express(gen));
    AbelianGroup char_invariants =
        quotient(kdec.group, subgroup_generated(kdec.group, n0_in_k)).group;
    require_internal(char_invariants == r.invariants,
                     "duality audit failed: character side disagrees with quotient");
  }

  for (std::size_t i = 0; i < g->generators().size(); ++i) {
    ElementId gen = g->generators()[i];
    NormRecord nr = norm(c.nd, c.classes, gen);
    r.norm_witnesses.push_back({g->label(gen), nr.length, nr.value});
  }
  return c;
}

BrauerResult brnral_fq(GroupPtr g, FrobeniusData data) {
  return brnral_fq_full(std::move(g), std::move(data)).result;
}

Char0Computation brnral_char0_full(GroupPtr g, FiniteGaloisData data, Char0Options opts) {
  Char0Computation c;
  c.group = g;
  c.data = std::move(data);
  c.ab = abelianize(g);
  c.classes = conjugacy_classes(*g);
  std::int64_t ngamma = c.data.gamma->order();
  for (ElementId s = 0; s < ngamma; ++s) c.twists.push_back(twist(c.data, s, c.ab));
  for (ElementId s = 0; s < ngamma; ++s)
    c.nds.push_back(norm_data(c.ab, c.classes, c.twists[s]));
  c.m = character_module(c.ab, c.twists);
  c.h1 = h1_finite(c.data.gamma, c.m);

  // which sigma to check: every element unless the audited abelian fast
  // path is requested
  std::vector<ElementId> sigmas;
  bool gamma_abelian = true;
  for (ElementId a = 0; a < ngamma && gamma_abelian; ++a)
    for (ElementId b = a + 1; b < ngamma; ++b)
      if (c.data.gamma->mult(a, b) != c.data.gamma->mult(b, a)) {
        gamma_abelian = false;
        break;
      }
  if (opts.abelian_generator_fast_path && gamma_abelian)
    sigmas = c.data.gamma->generators();
  else
    for (ElementId s = 0; s < ngamma; ++s) sigmas.push_back(s);

  // linear acceptance condition: for every sigma and class representative b,
  // <a_sigma, N_sigma(b)> = 0; rows deduped, kernel over the H1 coordinates
  int hr = c.h1.group.rank();
  std::int64_t e = c.ab.quotient.trivial() ? 1 : c.ab.quotient.exponent();
  std::vector<Cocycle> basis_reps;
  for (int j = 0; j < hr; ++j) basis_reps.push_back(c.h1.lift(c.h1.group.basis_element(j)));
  std::set<std::vector<std::int64_t>> row_set;
  for (ElementId s : sigmas) {
    std::set<AbelianElement> distinct_norms(c.nds[s].norm_value.begin(),
                                            c.nds[s].norm_value.end());
    for (const auto& nv : distinct_norms) {
      std::vector<std::int64_t> row(hr, 0);
      bool nonzero = false;
      for (int j = 0; j < hr; ++j) {
        row[j] = e < 2 ? 0 : pairing_num(c.ab.quotient, basis_reps[j].values[s], nv, e);
        nonzero |= row[j] != 0;
      }
      if (nonzero) row_set.insert(std::move(row));
    }
  }
  if (row_set.empty() || hr == 0) {
    std::vector<AbelianElement> all;
    for (int j = 0; j < hr; ++j) all.push_back(c.h1.group.basis_element(j));
    c.surviving = AbelianSubgroup(c.h1.group, all);
  } else {
    IntMatrix cm(static_cast<int>(row_set.size()), hr);
    int i = 0;
    for (const auto& row : row_set) {
      for (int j = 0; j < hr; ++j) cm.at(i, j) = row[j];
      ++i;
    }
    AbelianGroup cod = AbelianGroup::module_shape(
        std::vector<std::int64_t>(row_set.size(), e < 2 ? 2 : e));
    c.surviving = kernel_subgroup(AbelianHom(c.h1.group, cod, std::move(cm)));
  }

  c.sha = sha1_cyc(*c.data.gamma, c.m, c.h1);
  require_internal(c.surviving.contains_subgroup(c.sha),
                   "Sha^1_cyc escaped the surviving classes");

  BrauerResult& r = c.result;
  r.mode = "char0";
  r.gab = c.ab.quotient;
  r.gder_order = static_cast<std::int64_t>(c.ab.derived.members.size());
  r.h1_invariants = c.h1.group;
  auto sdec = c.surviving.decompose();
  r.invariants = sdec.group;
  r.sha = subgroup_invariants(c.sha);
  for (const auto& cls : sdec.cyclic_generators)
    r.surviving_reps.push_back(c.h1.lift_canonical(cls));
  for (std::size_t i = 0; i < g->generators().size(); ++i) {
    ElementId gen = g->generators()[i];
    // witness norms for the distinguished sigma = first generator of gamma
    ElementId s = c.data.gamma->order() > 1 ? c.data.gamma->generators()[0] : 0;
    NormRecord nr = norm(c.nds[s], c.classes, gen);
    r.norm_witnesses.push_back({g->label(gen), nr.length, nr.value});
  }
  return c;
}

BrauerResult brnral_char0(GroupPtr g, FiniteGaloisData data) {
  return brnral_char0_full(std::move(g), std::move(data)).result;
}

bool char0_class_accepted(const Char0Computation& c, const Cocycle& a) {
  for (ElementId s = 0; s < c.data.gamma->order(); ++s)
    for (std::size_t cls = 0; cls < c.classes.count(); ++cls)
      if (!pairing(c.ab.quotient, a.values[s], c.nds[s].norm_value[cls]).zero())
        return false;
  return true;
}

BrauerResult brnral_real(GroupPtr g, FiniteGaloisData data) {
  require_arg(data.gamma->order() == 2, "real mode needs Gamma' = Z/2");
  require_arg(data.cyclo[1] == ((data.n - 1) % data.n + data.n) % data.n,
              "real mode needs cyclotomic character -1");
  Char0Computation c = brnral_char0_full(g, std::move(data));
  BrauerResult r = c.result;
  r.mode = "real";

  // every surviving class is orthogonal to the image of G^{phi_sigma}
  // (Z^1(k,G) = G^{phi_sigma}); a violation contradicts the theorem
  std::set<AbelianElement> bars;
  const TwistMap& phi = c.twists[1];
  for (ElementId b = 0; b < g->order(); ++b)
    if (phi.element_map[b] == b) bars.insert(c.ab.bar(b));
  auto sdec = c.surviving.decompose();
  for (std::int64_t i = 0; i < sdec.group.order(); ++i) {
    Cocycle a = c.h1.lift(sdec.embed.apply(sdec.group.element_at(i)));
    for (const auto& beta : bars)
      require_internal(pairing(c.ab.quotient, a.values[1], beta).zero(),
                       "real-place orthogonality certificate failed");
  }
  r.real_certificate = true;
  return r;
}

BrauerResult brnral_local_unramified(GroupPtr g, FrobeniusData data) {
  FqComputation c = brnral_fq_full(g, std::move(data));
  BrauerResult r = c.result;
  r.mode = "local_unramified";

  // surviving character classes: generators of the orthogonal complement of
  // the norms in M (their classes mod N0 span the Brauer group)
  std::vector<AbelianElement> char_gens = c.char_side.decompose().cyclic_generators;
  std::int64_t big_l = norm_length_lcm(c.nd);
  for (std::int64_t n : divisors_of(big_l)) {
    auto set = relevable_set(c.ab, c.classes, c.nd, n);
    RelevableCertificate cert{n, static_cast<std::int64_t>(set.size()), true};
    for (const auto& beta : set) {
      // a_{sigma^n}(beta) = <c, sum_{i<n} phi^i(beta)>
      AbelianElement acc = c.ab.quotient.zero();
      AbelianElement cur = beta;
      for (std::int64_t i = 0; i < n; ++i) {
        acc = c.ab.quotient.add(acc, cur);
        cur = c.nd.phi.induced.apply(cur);
      }
      for (const auto& cg : char_gens)
        require_internal(pairing(c.ab.quotient, cg, acc).zero(),
                         "local relevable certificate failed");
    }
    r.local_certificates.push_back(cert);
  }
  return r;
}

AbelianGroup sigma_quotient_invariants(GroupPtr g, const FiniteGaloisData& data,
                                       ElementId sigma) {
  Abelianization ab = abelianize(g);
  ConjugacyClasses cc = conjugacy_classes(*g);
  NormData nd = norm_data(ab, cc, twist(data, sigma, ab));
  AbelianSubgroup fixed = fixed_subgroup(ab.quotient, nd.phi.induced);
  AbelianSubgroup norms = norm_subgroup(ab, nd);
  return fixed_mod_norms(fixed, norms);
}

FrobeniusData ext_twist_frobenius(GroupPtr g, ElementId conjugator, std::int64_t q) {
  std::vector<ElementId> s(g->order());
  for (ElementId a = 0; a < g->order(); ++a) s[a] = conj(*g, conjugator, a);
  return validate_frobenius(g, q, std::move(s));
}

FiniteGaloisData ext_twist_finite(GroupPtr g, GroupPtr gamma,
                                  const std::vector<ElementId>& inner_images,
                                  std::vector<std::int64_t> cyclo) {
  require_arg(static_cast<std::int64_t>(inner_images.size()) == gamma->order(),
              "one inner conjugator required per Galois element");
  for (ElementId a = 0; a < gamma->order(); ++a)
    for (ElementId b = 0; b < gamma->order(); ++b)
      require_arg(inner_images[gamma->mult(a, b)] ==
                      g->mult(inner_images[a], inner_images[b]),
                  "inner images do not form a homomorphism");
  std::vector<std::vector<ElementId>> action;
  for (ElementId s = 0; s < gamma->order(); ++s) {
    std::vector<ElementId> t(g->order());
    for (ElementId a = 0; a < g->order(); ++a) t[a] = conj(*g, inner_images[s], a);
    action.push_back(std::move(t));
  }
  return validate_finite_galois(g, gamma, std::move(action), std::move(cyclo));
}

}  // namespace brnr
