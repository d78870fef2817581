#pragma once

#include <cstdint>
#include <vector>

#include "brnr/abelianize.hpp"
#include "brnr/group.hpp"

namespace brnr {

// Frobenius mode: the residue/finite field F_q acting through a single
// automorphism s of G, with gcd(|G|, char) = 1.
struct FrobeniusData {
  GroupPtr group;
  std::int64_t q = 0;
  std::int64_t p = 0;  // q = p^r
  std::vector<ElementId> s, s_inv;
  std::int64_t s_order = 1;
};

// Finite-Galois mode: Gamma' = Gal(L(zeta_n)/k) acting on G, together with
// the cyclotomic character into (Z/nZ)^*, n = exp(G).
struct FiniteGaloisData {
  GroupPtr group;
  GroupPtr gamma;
  std::vector<std::vector<ElementId>> action;      // per gamma element
  std::vector<std::vector<ElementId>> action_inv;  // inverse permutations
  std::vector<std::int64_t> cyclo;                 // q(sigma) mod n
  std::int64_t n = 1;                              // exp(G)
};

// The twist b -> sigma^-1(b^q(sigma)), tabulated on G, with the automorphism
// it induces on G^ab.
struct TwistMap {
  std::vector<ElementId> element_map;
  AbelianHom induced;
  ElementId apply(ElementId b) const { return element_map[b]; }
};

// Checks q is a prime power coprime to |G| and s is an automorphism
// (exhaustively for |G| <= 1e4, generator pairs plus a seeded sample above).
FrobeniusData validate_frobenius(GroupPtr g, std::int64_t q, std::vector<ElementId> s = {});

FiniteGaloisData validate_finite_galois(GroupPtr g, GroupPtr gamma,
                                        std::vector<std::vector<ElementId>> action,
                                        std::vector<std::int64_t> cyclo);

// k = R: Gamma' = Z/2 with cyclotomic character -1 and an involutive action.
FiniteGaloisData real_data(GroupPtr g, std::vector<ElementId> action = {});

TwistMap twist(const FrobeniusData& data, const Abelianization& ab);
TwistMap twist(const FiniteGaloisData& data, ElementId sigma, const Abelianization& ab);

std::vector<ElementId> identity_table(const Group& g);

}  // namespace brnr
