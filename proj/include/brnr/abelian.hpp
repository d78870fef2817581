#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace brnr {

// Dense integer matrix, row major. Small: everything downstream keeps the
// row count at the abelian rank (<= ~10) or reduces generator sets first.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  static IntMatrix identity(int n);
  bool operator==(const IntMatrix&) const = default;
};

IntMatrix matmul(const IntMatrix& x, const IntMatrix& y);
std::int64_t det(IntMatrix m);                  // fraction-free Gaussian
IntMatrix inverse_unimodular(const IntMatrix&);  // |det| = 1 required

// U * M * V = D with D diagonal, d_i | d_{i+1}, U and V unimodular.
struct SmithResult {
  IntMatrix u, d, v;
};
SmithResult smith_normal_form(const IntMatrix& m);

// Element of a finite abelian group in coordinates, always reduced
// componentwise modulo the group's invariants.
struct AbelianElement {
  std::vector<std::int64_t> coords;
  bool operator==(const AbelianElement&) const = default;
  bool operator<(const AbelianElement& o) const { return coords < o.coords; }
};

// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_r with
// every d_i >= 2. The trivial group is the empty sequence.
class AbelianGroup {
public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<std::int64_t> invariants);

  // Coordinate module with arbitrary moduli >= 2 (no divisibility chain).
  // Solver plumbing only; reported isomorphism types always come from SNF
  // and use the canonical chained constructor.
  static AbelianGroup module_shape(std::vector<std::int64_t> moduli);

  const std::vector<std::int64_t>& invariants() const { return inv_; }
  int rank() const { return static_cast<int>(inv_.size()); }
  std::int64_t order() const;
  std::int64_t exponent() const;  // lcm of the moduli
  bool trivial() const { return inv_.empty(); }

  AbelianElement zero() const { return {std::vector<std::int64_t>(inv_.size(), 0)}; }
  AbelianElement reduce(std::vector<std::int64_t> raw) const;
  AbelianElement add(const AbelianElement& a, const AbelianElement& b) const;
  AbelianElement sub(const AbelianElement& a, const AbelianElement& b) const;
  AbelianElement neg(const AbelianElement& a) const;
  AbelianElement mul(std::int64_t k, const AbelianElement& a) const;
  bool is_zero(const AbelianElement& a) const;
  AbelianElement basis_element(int i) const;
  std::int64_t element_order(const AbelianElement& a) const;

  // lexicographic enumeration
  std::int64_t index_of(const AbelianElement& a) const;
  AbelianElement element_at(std::int64_t idx) const;

  bool operator==(const AbelianGroup&) const = default;

private:
  std::vector<std::int64_t> inv_;
};

std::vector<AbelianElement> enumerate_elements(const AbelianGroup& a,
                                               std::int64_t cap = 1'000'000);

// Value in Q/Z as a reduced fraction num/den, 0 <= num < den.
struct QmodZ {
  std::int64_t num = 0;
  std::int64_t den = 1;
  static QmodZ make(std::int64_t num, std::int64_t den);
  bool zero() const { return num == 0; }
  QmodZ operator+(const QmodZ& o) const;
  bool operator==(const QmodZ&) const = default;
  std::string str() const;
};

// <c, a> = sum c_i a_i / d_i mod 1, the evident pairing dual(A) x A -> Q/Z.
// 128-bit intermediates; the denominator always divides exp(A).
QmodZ pairing(const AbelianGroup& a, const AbelianElement& dual_c,
              const AbelianElement& x);
AbelianGroup dual_group(const AbelianGroup& a);

// Homomorphism between finite abelian groups as an integer matrix acting on
// coordinate columns; entries kept reduced modulo the codomain invariants.
class AbelianHom {
public:
  AbelianHom() = default;
  AbelianHom(AbelianGroup domain, AbelianGroup codomain, IntMatrix m);
  static AbelianHom identity(const AbelianGroup& a);
  static AbelianHom from_images(const AbelianGroup& domain, const AbelianGroup& codomain,
                                const std::vector<AbelianElement>& images);

  const AbelianGroup& domain() const { return dom_; }
  const AbelianGroup& codomain() const { return cod_; }
  const IntMatrix& matrix() const { return m_; }
  AbelianElement apply(const AbelianElement& x) const;
  AbelianHom compose_after(const AbelianHom& inner) const;  // this o inner
  bool is_endomorphism() const { return dom_ == cod_; }

private:
  AbelianGroup dom_, cod_;
  IntMatrix m_;
};

// Column-echelon solver for one homomorphism. All entries stay bounded by
// the group invariants (reduction against the moduli columns is a valid
// unimodular column operation), so 64-bit arithmetic never overflows.
class HomSolver {
public:
  explicit HomSolver(const AbelianHom& f);
  // generators of ker(f) as a subgroup of the domain
  const std::vector<AbelianElement>& kernel_generators() const { return kernel_; }
  // some x with f(x) = target, if any
  std::optional<AbelianElement> solve(const AbelianElement& target) const;

private:
  struct Col {
    std::vector<std::int64_t> top, bottom;
  };
  void reduce_col(Col& c, int from_row);
  AbelianGroup dom_, cod_;
  std::vector<Col> cols_;
  std::vector<std::pair<int, int>> pivots_;  // (row, col index), row increasing
  std::vector<AbelianElement> kernel_;
};

class AbelianSubgroup;

struct QuotientResult {
  AbelianGroup group;
  AbelianHom proj;       // parent -> group, kernel exactly the subgroup
  IntMatrix lift_cols;   // parent-coordinate section, one column per invariant
  AbelianElement lift(const AbelianElement& q) const;
  AbelianGroup parent;
};

// Subgroup of a finite abelian group with exact membership, canonical
// lattice basis, and invariant-factor decomposition.
class AbelianSubgroup {
public:
  AbelianSubgroup() : AbelianSubgroup(AbelianGroup{}, {}) {}
  AbelianSubgroup(AbelianGroup parent, std::vector<AbelianElement> generators);

  const AbelianGroup& parent() const { return parent_; }
  const std::vector<AbelianElement>& generators() const { return gens_; }
  // columns of the canonical (lower-triangular Hermite) basis of the
  // preimage lattice, reduced mod the parent invariants and with zero
  // columns dropped
  std::vector<AbelianElement> basis() const;
  const IntMatrix& lattice() const { return lattice_; }
  std::int64_t order() const;
  bool contains(const AbelianElement& x) const;
  bool contains_subgroup(const AbelianSubgroup& other) const;
  bool same_subgroup_as(const AbelianSubgroup& other) const;

  struct Decomposition {
    AbelianGroup group;
    std::vector<AbelianElement> cyclic_generators;  // in parent coordinates
    AbelianHom embed;                               // group -> parent
    // coordinates of a parent element inside the subgroup (nullopt if outside)
    std::optional<AbelianElement> express(const AbelianElement& x) const;

    AbelianGroup parent;
    IntMatrix u;                       // from SNF of W^-1 D
    std::vector<std::int64_t> lambda;  // full diagonal incl. 1s
    std::vector<int> kept;             // indices with lambda > 1
    std::shared_ptr<const HomSolver> lattice_solver;
  };
  Decomposition decompose() const;

private:
  AbelianGroup parent_;
  std::vector<AbelianElement> gens_;
  IntMatrix lattice_;  // r x r Hermite basis of span(gens, diag(d))
  std::shared_ptr<const HomSolver> member_solver_;
};

AbelianSubgroup subgroup_generated(const AbelianGroup& a,
                                   const std::vector<AbelianElement>& elems);
AbelianSubgroup kernel_subgroup(const AbelianHom& f);
// ker(f - id) = {a : f(a) = a}
AbelianSubgroup fixed_subgroup(const AbelianGroup& a, const AbelianHom& f);
// {c in dual(A) : <c, v> = 0 for every v in elems}
AbelianSubgroup orthogonal_complement(const AbelianGroup& a,
                                      const std::vector<AbelianElement>& elems);
QuotientResult quotient(const AbelianGroup& a, const AbelianSubgroup& h);

}  // namespace brnr
