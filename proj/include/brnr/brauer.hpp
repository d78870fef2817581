#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brnr/cohomology.hpp"
#include "brnr/galois.hpp"
#include "brnr/norms.hpp"

namespace brnr {

struct NormWitness {
  std::string element;        // label in G
  std::int64_t length = 1;    // n_b
  AbelianElement value;       // N(b) in G^ab coordinates
};

struct RelevableCertificate {
  std::int64_t n = 1;
  std::int64_t set_size = 0;
  bool orthogonal = false;
};

struct BrauerResult {
  std::string mode;                        // fq | char0 | real | local_unramified
  AbelianGroup invariants;                 // Br_nr,al
  AbelianGroup h1_invariants;              // M0, or H1(Gamma', M)
  AbelianGroup gab;                        // G^ab
  std::int64_t gder_order = 1;
  AbelianGroup fixed_invariants;           // (G^ab)^phi (fq/local modes)
  std::vector<AbelianElement> fixed_subgroup_gens;   // G^ab coordinates
  std::vector<AbelianElement> norm_subgroup_gens;    // G^ab coordinates
  std::vector<NormWitness> norm_witnesses;           // per generator of G

  std::optional<AbelianGroup> sha;         // Sha^1_cyc (char0/real)
  std::vector<Cocycle> surviving_reps;     // generators of the surviving subgroup

  std::vector<RelevableCertificate> local_certificates;  // local mode
  std::optional<bool> real_certificate;                  // real mode
};

// Full finite-field computation with all intermediates exposed: quotient
// side (fixed/norms) and character side (orthogonal complement in M0),
// compared at runtime as a duality audit.
struct FqComputation {
  GroupPtr group;
  FrobeniusData data;
  Abelianization ab;
  ConjugacyClasses classes;
  NormData nd;
  AbelianSubgroup fixed;       // of G^ab
  AbelianSubgroup norms;       // of G^ab, inside fixed
  CharacterModule m;
  H1Frobenius h1;
  AbelianSubgroup char_side;   // of M: orthogonal complement of the norms
  BrauerResult result;
};

FqComputation brnral_fq_full(GroupPtr g, FrobeniusData data);
BrauerResult brnral_fq(GroupPtr g, FrobeniusData data);

// Characteristic-0 computation over the supplied Gamma' = Gal(L(zeta_n)/k).
// The acceptance condition is checked for every element of Gamma', not just
// generators; the abelian-Gamma' generator fast path is opt-in and audited
// against the full check in the test suite.
struct Char0Options {
  bool abelian_generator_fast_path = false;
};

struct Char0Computation {
  GroupPtr group;
  FiniteGaloisData data;
  Abelianization ab;
  ConjugacyClasses classes;
  std::vector<TwistMap> twists;      // per Gamma' element
  std::vector<NormData> nds;         // per Gamma' element
  CharacterModule m;
  H1Finite h1;
  AbelianSubgroup surviving;         // of h1.group
  AbelianSubgroup sha;               // of h1.group
  BrauerResult result;
};

Char0Computation brnral_char0_full(GroupPtr g, FiniteGaloisData data,
                                   Char0Options opts = {});
BrauerResult brnral_char0(GroupPtr g, FiniteGaloisData data);

// k = R: char0 over Z/2 plus the orthogonality certificate against the
// image of G^{phi_sigma}; a violation is an internal error.
BrauerResult brnral_real(GroupPtr g, FiniteGaloisData data);

// Same group as brnral_fq; additionally certifies, for each n dividing
// lcm(n_b), that the surviving character classes are orthogonal to the
// (q,n)-relevable set under the a_{sigma^n} evaluation formula.
BrauerResult brnral_local_unramified(GroupPtr g, FrobeniusData data);

// Inner twists: the Galois action is conjugation by the image of a
// homomorphism into G.
FrobeniusData ext_twist_frobenius(GroupPtr g, ElementId conjugator, std::int64_t q);
FiniteGaloisData ext_twist_finite(GroupPtr g, GroupPtr gamma,
                                  const std::vector<ElementId>& inner_images,
                                  std::vector<std::int64_t> cyclo);

// Direct evaluator of the acceptance condition for one explicit cocycle;
// independent of the linear-kernel route (used for representative-
// independence audits).
bool char0_class_accepted(const Char0Computation& c, const Cocycle& a);

// Quotient-formula route for one sigma: (G^ab)^{phi_sigma} / N_sigma(G).
// For cyclic Gamma' and sigma a generator this is Br_nr,al.
AbelianGroup sigma_quotient_invariants(GroupPtr g, const FiniteGaloisData& data,
                                       ElementId sigma);

}  // namespace brnr
