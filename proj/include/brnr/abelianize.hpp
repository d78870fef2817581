#pragma once

#include <memory>
#include <vector>

#include "brnr/abelian.hpp"
#include "brnr/group.hpp"

namespace brnr {

// G^ab in invariant-factor form together with the projection bar: G -> G^ab,
// tabulated per coset of the derived subgroup. Deterministic given the
// group's canonical element order.
struct Abelianization {
  GroupPtr group;
  Subgroup derived;
  AbelianGroup quotient;                      // G^ab
  std::vector<std::int32_t> coset_of;         // per element of G
  std::vector<AbelianElement> coset_coords;   // per coset
  std::vector<ElementId> gen_preimages;       // element mapping onto each basis vector

  const AbelianElement& bar(ElementId g) const { return coset_coords[coset_of[g]]; }
};

Abelianization abelianize(GroupPtr g);

}  // namespace brnr
