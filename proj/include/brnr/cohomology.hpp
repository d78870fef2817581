#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "brnr/abelian.hpp"
#include "brnr/abelianize.hpp"
#include "brnr/galois.hpp"
#include "brnr/group.hpp"
#include "brnr/norms.hpp"

namespace brnr {

// M = Hom(G^ab, mu), same invariants as G^ab, carrying the twisted dual
// action <sigma.c, v> = q(sigma) <c, sigma^-1 v> = <c, phi_sigma(v)>:
// each sigma acts by the pairing-adjoint of the twist it induces on G^ab.
struct CharacterModule {
  AbelianGroup group;                  // M
  std::vector<AbelianHom> action;      // per Galois element (fq mode: one, for s)
};

// D f^T D^-1, the adjoint of an endomorphism for the evident pairing.
AbelianHom adjoint_hom(const AbelianHom& f);

CharacterModule character_module(const Abelianization& ab,
                                 const std::vector<TwistMap>& twists);

// Map gamma -> M with a_e = 0 and a_{gh} = a_g + g.a_h.
struct Cocycle {
  std::vector<AbelianElement> values;
  bool operator==(const Cocycle&) const = default;
  bool operator<(const Cocycle& o) const { return values < o.values; }
};

inline const AbelianElement& cocycle_value(const Cocycle& a, ElementId g) {
  return a.values[g];
}

bool is_cocycle(const Group& gamma, const CharacterModule& m, const Cocycle& a);
Cocycle coboundary(const Group& gamma, const CharacterModule& m, const AbelianElement& c);
Cocycle add_cocycles(const AbelianGroup& m, const Cocycle& a, const Cocycle& b);

// sum_{i<k} g^i . c  (the value a_{g^k} of the cyclic cocycle with a_g = c)
AbelianElement cyclic_value(const AbelianGroup& m, const AbelianHom& g_action,
                            const AbelianElement& c, std::int64_t k);

// H^1 over a finite field: M0 = M/(s-1)M with a_s-lifting. The pairing of
// M0 with the phi-fixed subgroup of G^ab is perfect.
struct H1Frobenius {
  AbelianGroup group;                   // M0
  AbelianGroup m;                       // M
  QuotientResult quot;                  // M -> M0
  std::vector<AbelianElement> n0_gens;  // generators of N0 = (s-1)M

  AbelianElement class_of(const AbelianElement& c) const { return quot.proj.apply(c); }
  // representative with lexicographically minimal coordinates when N0 is
  // enumerable under the cap; the algebraic section otherwise
  AbelianElement lift(const AbelianElement& cls, std::int64_t cap = 10'000) const;
};

H1Frobenius h1_frobenius(const CharacterModule& m);

// H^1(gamma, M) by cocycle linear algebra: unknowns for every gamma element,
// cocycle equations for (generator, element) pairs (these generate the full
// pair set), all through the audited kernel/quotient machinery.
class H1Finite {
public:
  AbelianGroup group;        // H^1 invariants
  GroupPtr gamma;
  AbelianGroup m;            // M
  AbelianGroup big;          // M^gamma coordinate module
  AbelianSubgroup::Decomposition z1;   // Z^1 inside big
  QuotientResult quot;       // Z1 -> H1
  std::vector<AbelianElement> b1_in_z1;  // coboundary generators, Z1 coords

  Cocycle lift(const AbelianElement& cls) const;            // algebraic section
  Cocycle lift_canonical(const AbelianElement& cls, std::int64_t cap = 10'000) const;
  std::optional<AbelianElement> class_of(const Cocycle& a) const;
  std::vector<Cocycle> class_reps(std::int64_t cap = 4096) const;

  Cocycle from_big(const AbelianElement& v) const;
  AbelianElement to_big(const Cocycle& a) const;
};

inline constexpr std::int64_t kGammaCap = 256;

H1Finite h1_finite(GroupPtr gamma, const CharacterModule& m,
                   std::int64_t gamma_cap = kGammaCap);

struct CyclicRestriction {
  std::int64_t order = 1;       // of <g>
  AbelianGroup h1;              // H^1(<g>, M)
  AbelianElement coords;        // class of the restriction
  bool vanishes = true;
};

// Class of a|<g> in H^1(<g>, M) = ker(Norm)/(g-1)M, determined by a_g.
CyclicRestriction restrict_cyclic(const Group& gamma, const CharacterModule& m,
                                  const Cocycle& a, ElementId g);

// Classes whose restriction to every cyclic subgroup vanishes, as a subgroup
// of H^1(gamma, M).
AbelianSubgroup sha1_cyc(const Group& gamma, const CharacterModule& m,
                         const H1Finite& h1);

}  // namespace brnr
