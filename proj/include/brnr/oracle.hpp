#pragma once

#include <string>
#include <vector>

#include "brnr/brauer.hpp"
#include "brnr/corpus.hpp"

namespace brnr {

// Independent verification path for the finite-field formula. M0 classes are
// enumerated by brute-force coset sweep (no Smith forms, no quotient calls),
// and a class passes iff it pairs to zero with every (q,n)-relevable element
// under the a_{sigma^n} evaluation, for every n up to lcm(n_b).
struct FqOracle {
  GroupPtr group;
  FrobeniusData data;
  Abelianization ab;
  ConjugacyClasses classes;
  NormData nd;
  std::vector<AbelianElement> m0_reps;       // lexicographically minimal coset reps
  std::vector<AbelianElement> pair_targets;  // deduped sums over phi-orbits
};

FqOracle make_fq_oracle(GroupPtr g, FrobeniusData data, std::int64_t m_cap = 10'000,
                        std::int64_t range_cap = 10'000);

bool relevable_oracle(const FqOracle& o, const AbelianElement& m0_class_rep);

// verdict per rep against a generator list, by raw pairings
std::vector<char> orthogonality_verdicts(const AbelianGroup& gab,
                                         const std::vector<AbelianElement>& reps,
                                         const std::vector<AbelianElement>& gens);

// Brute-force H^1 for cyclic Galois groups: enumerate the norm-condition
// kernel, sweep coboundary cosets, recover the invariant factors from
// element-order statistics. Independent of the Smith-form path.
struct BruteH1 {
  AbelianGroup group;
  std::vector<AbelianElement> reps;  // canonical a_sigma per class
};

BruteH1 h1_bruteforce(std::int64_t r, const AbelianGroup& m, const AbelianHom& sigma_action,
                      std::int64_t m_cap = 10'000);

struct OracleReport {
  std::string case_id;
  std::string check;  // fq_oracle | h1_cyclic | char0_quotient
  bool agreement = false;
  std::string detail;
};

// Runs the default (or supplied) corpus through all three cross-checks;
// reports ordered by case id, computed in parallel.
std::vector<OracleReport> differential_suite(const std::vector<FqCase>& fq_cases,
                                             const std::vector<CyclicChar0Case>& char0_cases);

}  // namespace brnr
