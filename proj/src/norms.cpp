#include "brnr/norms.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "brnr/errors.hpp"
#include "brnr/parallel.hpp"

namespace brnr {

NormData norm_data(const Abelianization& ab, const ConjugacyClasses& classes,
                   TwistMap phi) {
  const Group& g = *ab.group;
  NormData nd;
  std::size_t nc = classes.count();

  // the twist permutes conjugacy classes; tabulate and audit on every element
  nd.class_perm.resize(nc);
  for (std::size_t c = 0; c < nc; ++c)
    nd.class_perm[c] = classes.class_of[phi.element_map[classes.reps[c]]];
  {
    std::vector<std::int8_t> bad(g.order(), 0);
    parallel::parallel_for(g.order(), [&](std::int64_t b) {
      if (nd.class_perm[classes.class_of[b]] != classes.class_of[phi.element_map[b]])
        bad[b] = 1;
    });
    for (std::int64_t b = 0; b < g.order(); ++b)
      require_internal(!bad[b], "twist does not permute conjugacy classes");
  }

  // n_b = cycle length of b's class under the induced permutation
  nd.length.assign(nc, 0);
  for (std::size_t c = 0; c < nc; ++c) {
    if (nd.length[c]) continue;
    std::vector<std::int32_t> cycle{static_cast<std::int32_t>(c)};
    for (std::int32_t j = nd.class_perm[c]; j != static_cast<std::int32_t>(c);
         j = nd.class_perm[j])
      cycle.push_back(j);
    for (std::int32_t j : cycle) nd.length[j] = static_cast<std::int64_t>(cycle.size());
  }

  // N(rep) = sum of bar(phi^i(rep)), i < n_b
  nd.norm_value.resize(nc);
  const AbelianGroup& q = ab.quotient;
  parallel::parallel_for(static_cast<std::int64_t>(nc), [&](std::int64_t c) {
    ElementId cur = classes.reps[c];
    AbelianElement acc = q.zero();
    for (std::int64_t i = 0; i < nd.length[c]; ++i) {
      acc = q.add(acc, ab.bar(cur));
      cur = phi.element_map[cur];
    }
    nd.norm_value[c] = std::move(acc);
  });

  // the norm lands in the phi-fixed subgroup of G^ab
  for (std::size_t c = 0; c < nc; ++c)
    require_internal(phi.induced.apply(nd.norm_value[c]) == nd.norm_value[c],
                     "norm escaped the fixed subgroup");
  nd.phi = std::move(phi);
  return nd;
}

std::int64_t norm_length(const NormData& nd, const ConjugacyClasses& classes, ElementId b) {
  return nd.length[classes.class_of[b]];
}

NormRecord norm(const NormData& nd, const ConjugacyClasses& classes, ElementId b) {
  NormRecord r;
  r.element = b;
  r.length = nd.length[classes.class_of[b]];
  r.value = nd.norm_value[classes.class_of[b]];
  return r;
}

AbelianSubgroup norm_subgroup(const Abelianization& ab, const NormData& nd) {
  std::set<AbelianElement> gens(nd.norm_value.begin(), nd.norm_value.end());
  return AbelianSubgroup(ab.quotient,
                         std::vector<AbelianElement>(gens.begin(), gens.end()));
}

std::vector<AbelianElement> relevable_set(const Abelianization& ab,
                                          const ConjugacyClasses& classes,
                                          const NormData& nd, std::int64_t n) {
  require_arg(n >= 1, "relevable index must be positive");
  std::set<AbelianElement> out;
  for (std::size_t c = 0; c < classes.count(); ++c)
    if (n % nd.length[c] == 0) out.insert(ab.bar(classes.reps[c]));
  return {out.begin(), out.end()};
}

std::int64_t norm_length_lcm(const NormData& nd) {
  std::int64_t l = 1;
  for (std::int64_t x : nd.length) l = std::lcm(l, x);
  return l;
}

}  // namespace brnr
