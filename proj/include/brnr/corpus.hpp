#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brnr/galois.hpp"
#include "brnr/group.hpp"

namespace brnr {

// Named groups usable from the CLI and the default verification corpus.
// Names: s3, d4, q8, a4, frob21, heisenberg (= 3^3), heisenberg5,
// demarche (= demarche(3,1)), klein.
GroupPtr corpus_group(const std::string& name);
std::vector<std::string> corpus_group_names();

struct FqCase {
  std::string id;
  GroupPtr group;
  std::int64_t q;
  std::vector<ElementId> action;  // empty = constant
};

struct CyclicChar0Case {
  std::string id;
  GroupPtr group;
  std::int64_t gamma_order;
  std::vector<ElementId> sigma_action;  // automorphism of the generator, empty = trivial
  std::int64_t cyclo_sigma;             // q(sigma) mod exp(G)
};

// Default differential corpus: >= 12 groups x >= 3 valid Frobenius choices,
// plus cyclic characteristic-0 cases for the H1 and quotient cross-checks.
std::vector<FqCase> default_fq_corpus();
std::vector<CyclicChar0Case> default_char0_corpus();

// Gamma' = Z/gamma_order with action(sigma^k) = sigma_action^k and
// cyclo(sigma^k) = cyclo_sigma^k, validated.
FiniteGaloisData expand_cyclic_case(const CyclicChar0Case& c);

// smallest prime powers coprime to n (for generated corpora)
std::vector<std::int64_t> coprime_prime_powers(std::int64_t n, int count);

}  // namespace brnr
