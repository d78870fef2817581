#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace brnr {

// Index into a group's canonical element enumeration. The identity is
// always element 0.
using ElementId = std::int32_t;

inline constexpr std::int64_t kDefaultElementCap = 2'000'000;

// Uniform interface for a concrete finite group. Permutation closures
// materialize an element table; structured families (demarche, products,
// abelian) multiply on normal forms so they scale to ~5e5 elements.
// Instances are immutable after construction and safe for concurrent reads.
class Group {
public:
  virtual ~Group() = default;

  std::int64_t order() const { return order_; }
  virtual ElementId mult(ElementId a, ElementId b) const = 0;
  virtual ElementId inv(ElementId a) const = 0;
  const std::vector<ElementId>& generators() const { return generators_; }
  virtual std::string label(ElementId a) const = 0;

  // Exponent of the group when the backend knows it in closed form;
  // otherwise computed from element orders by callers that need it.
  virtual std::optional<std::int64_t> known_exponent() const { return std::nullopt; }

protected:
  std::int64_t order_ = 0;
  std::vector<ElementId> generators_;
};

using GroupPtr = std::shared_ptr<const Group>;

ElementId pow(const Group& g, ElementId a, std::int64_t e);
ElementId conj(const Group& g, ElementId c, ElementId a);  // c a c^-1
ElementId commutator(const Group& g, ElementId a, ElementId b);  // a b a^-1 b^-1
std::int64_t element_order(const Group& g, ElementId a);
std::int64_t exponent(const Group& g);  // lcm of element orders

// Permutation group generated by 0-based image arrays on {0..degree-1}.
// Canonical element order is BFS discovery order from the identity.
GroupPtr permutation_group(int degree, const std::vector<std::vector<int>>& gens,
                           std::int64_t element_cap = kDefaultElementCap);

// The family <x,y,z | x^(l^2m) = y^(l^2m) = z^(l^2m) = 1, [x,y] = z^(-l^m),
// z central>, of order l^(6m), via the normal form x^r y^s z^t.
GroupPtr demarche_group(std::int64_t ell, int m,
                        std::int64_t element_cap = kDefaultElementCap);

// Finite abelian group with the given invariants (each >= 2, ascending
// divisibility not required here; used as-is). Lexicographic element order.
GroupPtr abelian_group_backend(const std::vector<std::int64_t>& invariants,
                               std::int64_t element_cap = kDefaultElementCap);

GroupPtr direct_product(GroupPtr a, GroupPtr b,
                        std::int64_t element_cap = kDefaultElementCap);

// N x| H. gen_actions[i] is the permutation of N's elements implemented by
// the i-th generator of H; the induced map H -> Aut(N) is validated.
GroupPtr semidirect_product(GroupPtr normal, GroupPtr acting,
                            const std::vector<std::vector<ElementId>>& gen_actions,
                            std::int64_t element_cap = kDefaultElementCap);

// Heisenberg group of order p^3 (odd prime p), as (Z/p)^2 x| Z/p.
GroupPtr heisenberg_group(std::int64_t p);

struct ConjugacyClasses {
  std::vector<std::int32_t> class_of;             // per element
  std::vector<ElementId> reps;                    // minimal id per class
  std::vector<std::vector<ElementId>> members;    // sorted ascending
  std::size_t count() const { return reps.size(); }
};

// Classes by orbit of unvisited elements under conjugation by generators;
// cost is sum(|class| * #generators), never |G|^2.
ConjugacyClasses conjugacy_classes(const Group& g);

struct Subgroup {
  std::vector<ElementId> members;      // sorted ascending, contains 0
  std::vector<ElementId> generators;   // the seeds actually used
  bool contains(ElementId a) const;
};

// Closure of `gens` under products (inverses come free in a finite group).
Subgroup subgroup_closure(const Group& g, std::vector<ElementId> gens,
                          std::int64_t cap = kDefaultElementCap);

// Derived subgroup = normal closure of the generator commutators.
Subgroup derived_subgroup(const Group& g);

}  // namespace brnr
