#pragma once

#include <cstdint>
#include <vector>

#include "brnr/abelian.hpp"
#include "brnr/abelianize.hpp"
#include "brnr/galois.hpp"
#include "brnr/group.hpp"

namespace brnr {

struct NormRecord {
  ElementId element = 0;
  std::int64_t length = 1;    // n_b: minimal n > 0 with phi^n(b) conjugate to b
  AbelianElement value;       // N(b) = sum of phi^i(bar b), i < n_b
};

// Everything the norm formulas need for one twist: the permutation the twist
// induces on conjugacy classes, per-class norm lengths (cycle lengths of that
// permutation) and per-class norms. The twist is audited to permute classes.
struct NormData {
  TwistMap phi;
  std::vector<std::int32_t> class_perm;
  std::vector<std::int64_t> length;        // per class
  std::vector<AbelianElement> norm_value;  // per class, lies in the fixed subgroup
};

NormData norm_data(const Abelianization& ab, const ConjugacyClasses& classes,
                   TwistMap phi);

std::int64_t norm_length(const NormData& nd, const ConjugacyClasses& classes, ElementId b);
NormRecord norm(const NormData& nd, const ConjugacyClasses& classes, ElementId b);

// Subgroup of (G^ab)^phi generated by the norms; class representatives
// suffice because the norm is a class function.
AbelianSubgroup norm_subgroup(const Abelianization& ab, const NormData& nd);

// G^ab_{q,n}: distinct bar(b) over elements whose class has n_b | n.
// Sorted; a subset of the phi^n-fixed subgroup.
std::vector<AbelianElement> relevable_set(const Abelianization& ab,
                                          const ConjugacyClasses& classes,
                                          const NormData& nd, std::int64_t n);

// lcm of n_b over class representatives; the oracle's exhaustive range.
std::int64_t norm_length_lcm(const NormData& nd);

}  // namespace brnr
