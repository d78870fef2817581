#include "brnr/abelianize.hpp"

#include <algorithm>

#include "brnr/errors.hpp"

namespace brnr {

// Coset decomposition over G^der, then cyclic decomposition of the coset
// group: relations of the coset Cayley graph (one per non-tree edge) generate
// the full relation lattice of the generator images, and its Smith form
// yields the invariant factors and the bar map.
Abelianization abelianize(GroupPtr gp) {
  const Group& g = *gp;
  Abelianization ab;
  ab.group = gp;
  ab.derived = derived_subgroup(g);

  std::int64_t n = g.order();
  ab.coset_of.assign(n, -1);
  std::vector<ElementId> reps;
  for (ElementId e = 0; e < n; ++e) {
    if (ab.coset_of[e] != -1) continue;
    std::int32_t c = static_cast<std::int32_t>(reps.size());
    reps.push_back(e);
    for (ElementId d : ab.derived.members) ab.coset_of[g.mult(e, d)] = c;
  }
  std::int64_t ncosets = static_cast<std::int64_t>(reps.size());
  require_internal(ncosets * static_cast<std::int64_t>(ab.derived.members.size()) == n,
                   "cosets do not partition the group");

  // BFS the coset graph along generator edges, collecting cycle relations.
  int k = static_cast<int>(g.generators().size());
  std::vector<std::vector<std::int64_t>> path(ncosets);
  std::vector<std::vector<std::int64_t>> relations;
  path[ab.coset_of[0]] = std::vector<std::int64_t>(k, 0);
  std::vector<std::int32_t> queue{ab.coset_of[0]};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::int32_t cur = queue[head];
    ElementId rep = reps[cur];
    for (int i = 0; i < k; ++i) {
      std::int32_t nxt = ab.coset_of[g.mult(rep, g.generators()[i])];
      std::vector<std::int64_t> vec = path[cur];
      vec[i] += 1;
      if (path[nxt].empty() && nxt != ab.coset_of[0]) {
        path[nxt] = std::move(vec);
        queue.push_back(nxt);
      } else {
        for (int j = 0; j < k; ++j) vec[j] -= path[nxt][j];
        if (std::any_of(vec.begin(), vec.end(), [](std::int64_t v) { return v != 0; }))
          relations.push_back(std::move(vec));
      }
    }
  }
  require_internal(static_cast<std::int64_t>(queue.size()) == ncosets,
                   "generators do not generate the coset group");

  IntMatrix rel(k, static_cast<int>(relations.size()));
  for (int j = 0; j < rel.cols; ++j)
    for (int i = 0; i < k; ++i) rel.at(i, j) = relations[j][i];
  SmithResult snf = smith_normal_form(rel);

  std::vector<std::int64_t> invs;
  std::vector<int> kept;
  for (int i = 0; i < k; ++i) {
    std::int64_t d = i < std::min(rel.rows, rel.cols) ? snf.d.at(i, i) : 0;
    require_internal(d != 0, "abelianization relation lattice not full rank");
    if (d > 1) {
      invs.push_back(d);
      kept.push_back(i);
    }
  }
  ab.quotient = AbelianGroup(std::move(invs));

  ab.coset_coords.resize(ncosets);
  for (std::int64_t c = 0; c < ncosets; ++c) {
    const std::vector<std::int64_t>& vec = path[c];
    std::vector<std::int64_t> coords;
    coords.reserve(kept.size());
    for (int idx : kept) {
      __int128 acc = 0;
      for (int j = 0; j < k; ++j) acc += static_cast<__int128>(snf.u.at(idx, j)) * vec[j];
      std::int64_t m = ab.quotient.invariants()[coords.size()];
      coords.push_back(static_cast<std::int64_t>(((acc % m) + m) % m));
    }
    ab.coset_coords[c] = AbelianElement{std::move(coords)};
  }

  require_internal(ab.quotient.order() == ncosets, "abelianization order mismatch");

  // preimage of each basis vector: evaluate the word coming from U^-1
  IntMatrix uinv = inverse_unimodular(snf.u);
  for (std::size_t bi = 0; bi < kept.size(); ++bi) {
    ElementId e = 0;
    for (int j = 0; j < k; ++j) {
      std::int64_t w = uinv.at(j, kept[bi]);
      if (w != 0) e = g.mult(e, pow(g, g.generators()[j], w));
    }
    require_internal(ab.bar(e) == ab.quotient.basis_element(static_cast<int>(bi)),
                     "preimage does not project onto its basis vector");
    ab.gen_preimages.push_back(e);
  }
  return ab;
}

}  // namespace brnr
