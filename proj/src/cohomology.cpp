#include "brnr/cohomology.hpp"

#include <algorithm>
#include <set>

#include "brnr/errors.hpp"

namespace brnr {

AbelianHom adjoint_hom(const AbelianHom& f) {
  require_arg(f.is_endomorphism(), "adjoint needs an endomorphism");
  const AbelianGroup& a = f.domain();
  int r = a.rank();
  IntMatrix m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      // (D f^T D^-1)_ij = d_i f_ji / d_j; integral because f is a hom
      __int128 v = static_cast<__int128>(a.invariants()[i]) * f.matrix().at(j, i);
      require_internal(v % a.invariants()[j] == 0, "adjoint is not integral");
      m.at(i, j) = static_cast<std::int64_t>(v / a.invariants()[j]);
    }
  return AbelianHom(a, a, std::move(m));
}

CharacterModule character_module(const Abelianization& ab,
                                 const std::vector<TwistMap>& twists) {
  CharacterModule m;
  m.group = dual_group(ab.quotient);
  for (const TwistMap& t : twists) m.action.push_back(adjoint_hom(t.induced));
  return m;
}

bool is_cocycle(const Group& gamma, const CharacterModule& m, const Cocycle& a) {
  if (static_cast<std::int64_t>(a.values.size()) != gamma.order()) return false;
  if (!m.group.is_zero(a.values[0])) return false;
  for (ElementId g = 0; g < gamma.order(); ++g)
    for (ElementId h = 0; h < gamma.order(); ++h) {
      AbelianElement rhs = m.group.add(a.values[g], m.action[g].apply(a.values[h]));
      if (a.values[gamma.mult(g, h)] != rhs) return false;
    }
  return true;
}

Cocycle coboundary(const Group& gamma, const CharacterModule& m, const AbelianElement& c) {
  Cocycle a;
  a.values.reserve(gamma.order());
  for (ElementId g = 0; g < gamma.order(); ++g)
    a.values.push_back(m.group.sub(c, m.action[g].apply(c)));
  return a;
}

Cocycle add_cocycles(const AbelianGroup& m, const Cocycle& a, const Cocycle& b) {
  Cocycle r;
  r.values.reserve(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i)
    r.values.push_back(m.add(a.values[i], b.values[i]));
  return r;
}

AbelianElement cyclic_value(const AbelianGroup& m, const AbelianHom& g_action,
                            const AbelianElement& c, std::int64_t k) {
  AbelianElement acc = m.zero();
  AbelianElement cur = c;
  for (std::int64_t i = 0; i < k; ++i) {
    acc = m.add(acc, cur);
    cur = g_action.apply(cur);
  }
  return acc;
}

H1Frobenius h1_frobenius(const CharacterModule& m) {
  require_arg(m.action.size() == 1, "frobenius mode carries a single action");
  H1Frobenius h;
  h.m = m.group;
  const AbelianHom& s = m.action[0];
  IntMatrix t = s.matrix();
  for (int i = 0; i < t.rows; ++i) t.at(i, i) -= 1;
  AbelianHom s_minus_1(m.group, m.group, std::move(t));
  for (int j = 0; j < m.group.rank(); ++j) {
    AbelianElement img = s_minus_1.apply(m.group.basis_element(j));
    if (!m.group.is_zero(img)) h.n0_gens.push_back(img);
  }
  h.quot = quotient(m.group, subgroup_generated(m.group, h.n0_gens));
  h.group = h.quot.group;
  return h;
}

AbelianElement H1Frobenius::lift(const AbelianElement& cls, std::int64_t cap) const {
  AbelianElement rep = quot.lift(cls);
  std::int64_t n0_order = m.order() / group.order();
  if (n0_order > cap) return rep;
  // lexicographically minimal representative of rep + N0
  std::vector<AbelianElement> n0{m.zero()};
  std::set<AbelianElement> seen{m.zero()};
  for (std::size_t head = 0; head < n0.size(); ++head)
    for (const auto& g : n0_gens) {
      AbelianElement nxt = m.add(n0[head], g);
      if (seen.insert(nxt).second) n0.push_back(nxt);
    }
  require_internal(static_cast<std::int64_t>(n0.size()) == n0_order,
                   "N0 enumeration does not match the quotient order");
  AbelianElement best = rep;
  for (const auto& v : n0) best = std::min(best, m.add(rep, v));
  return best;
}

H1Finite h1_finite(GroupPtr gamma, const CharacterModule& m, std::int64_t gamma_cap) {
  if (gamma->order() > gamma_cap)
    throw ResourceError("Galois group exceeds the cohomology cap");
  require_arg(static_cast<std::int64_t>(m.action.size()) == gamma->order(),
              "one module action required per Galois element");

  H1Finite h;
  h.gamma = gamma;
  h.m = m.group;
  int r = m.group.rank();
  std::int64_t ng = gamma->order();

  std::vector<std::int64_t> big_moduli;
  for (std::int64_t i = 0; i < ng; ++i)
    big_moduli.insert(big_moduli.end(), m.group.invariants().begin(),
                      m.group.invariants().end());
  h.big = AbelianGroup::module_shape(big_moduli);

  // rows: cocycle condition a_{gh} - a_g - g.a_h = 0 for g in gens(gamma)
  // and all h (these pairs generate the full condition set), plus a_e = 0.
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> row_mod;
  auto block = [&](std::vector<std::int64_t>& row, std::int64_t gelem, int coord,
                   std::int64_t val) { row[gelem * r + coord] += val; };
  for (int i = 0; i < r; ++i) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(ng) * r, 0);
    block(row, 0, i, 1);
    rows.push_back(std::move(row));
    row_mod.push_back(m.group.invariants()[i]);
  }
  for (ElementId g : gamma->generators())
    for (ElementId hh = 0; hh < ng; ++hh) {
      ElementId gh = gamma->mult(g, hh);
      for (int i = 0; i < r; ++i) {
        std::vector<std::int64_t> row(static_cast<std::size_t>(ng) * r, 0);
        block(row, gh, i, 1);
        block(row, g, i, -1);
        for (int j = 0; j < r; ++j)
          block(row, hh, j, -m.action[g].matrix().at(i, j));
        rows.push_back(std::move(row));
        row_mod.push_back(m.group.invariants()[i]);
      }
    }
  // dedupe identical equations
  {
    std::set<std::pair<std::vector<std::int64_t>, std::int64_t>> seen;
    std::vector<std::vector<std::int64_t>> r2;
    std::vector<std::int64_t> m2;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto key = std::make_pair(rows[i], row_mod[i]);
      if (seen.insert(key).second) {
        r2.push_back(std::move(rows[i]));
        m2.push_back(row_mod[i]);
      }
    }
    rows = std::move(r2);
    row_mod = std::move(m2);
  }

  AbelianGroup cod = AbelianGroup::module_shape(row_mod);
  IntMatrix cm(static_cast<int>(rows.size()), static_cast<int>(ng * r));
  for (int i = 0; i < cm.rows; ++i)
    for (int j = 0; j < cm.cols; ++j) cm.at(i, j) = rows[i][j];
  AbelianSubgroup z1 = kernel_subgroup(AbelianHom(h.big, cod, std::move(cm)));
  h.z1 = z1.decompose();

  // B^1 = image of c -> (c - g.c)_g, expressed inside Z^1
  std::vector<AbelianElement> b1;
  for (int j = 0; j < r; ++j) {
    AbelianElement c = m.group.basis_element(j);
    std::vector<std::int64_t> v(static_cast<std::size_t>(ng) * r, 0);
    for (std::int64_t g = 0; g < ng; ++g) {
      AbelianElement d = m.group.sub(c, m.action[g].apply(c));
      for (int i = 0; i < r; ++i) v[g * r + i] = d.coords[i];
    }
    auto coords = h.z1.express(h.big.reduce(std::move(v)));
    require_internal(coords.has_value(), "coboundary escaped Z^1");
    if (!h.z1.group.is_zero(*coords)) b1.push_back(*coords);
  }
  h.b1_in_z1 = b1;
  h.quot = quotient(h.z1.group, subgroup_generated(h.z1.group, b1));
  h.group = h.quot.group;
  return h;
}

Cocycle H1Finite::from_big(const AbelianElement& v) const {
  Cocycle a;
  int r = m.rank();
  a.values.reserve(static_cast<std::size_t>(gamma->order()));
  for (std::int64_t g = 0; g < gamma->order(); ++g) {
    std::vector<std::int64_t> c(v.coords.begin() + g * r, v.coords.begin() + (g + 1) * r);
    a.values.push_back(m.reduce(std::move(c)));
  }
  return a;
}

AbelianElement H1Finite::to_big(const Cocycle& a) const {
  std::vector<std::int64_t> v;
  v.reserve(static_cast<std::size_t>(gamma->order()) * m.rank());
  for (const auto& e : a.values) v.insert(v.end(), e.coords.begin(), e.coords.end());
  return big.reduce(std::move(v));
}

Cocycle H1Finite::lift(const AbelianElement& cls) const {
  return from_big(z1.embed.apply(quot.lift(cls)));
}

Cocycle H1Finite::lift_canonical(const AbelianElement& cls, std::int64_t cap) const {
  Cocycle a = lift(cls);
  // enumerate the coboundary subgroup through its Z1 coordinates; bail out
  // to the algebraic section when it is too large (still deterministic)
  std::set<AbelianElement> seen;
  std::vector<AbelianElement> frontier{z1.group.zero()};
  seen.insert(z1.group.zero());
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    if (static_cast<std::int64_t>(frontier.size()) > cap) return a;
    for (const auto& g : b1_in_z1) {
      AbelianElement nxt = z1.group.add(frontier[head], g);
      if (seen.insert(nxt).second) frontier.push_back(nxt);
    }
  }
  AbelianElement a_z1 = *z1.express(to_big(a));
  Cocycle best = a;
  for (const auto& d : frontier) {
    Cocycle cand = from_big(z1.embed.apply(z1.group.add(a_z1, d)));
    best = std::min(best, cand);
  }
  return best;
}

std::optional<AbelianElement> H1Finite::class_of(const Cocycle& a) const {
  auto coords = z1.express(to_big(a));
  if (!coords) return std::nullopt;
  return quot.proj.apply(*coords);
}

std::vector<Cocycle> H1Finite::class_reps(std::int64_t cap) const {
  if (group.order() > cap) throw ResourceError("H1 class enumeration exceeds cap");
  std::vector<Cocycle> reps;
  reps.reserve(group.order());
  for (std::int64_t i = 0; i < group.order(); ++i)
    reps.push_back(lift_canonical(group.element_at(i)));
  return reps;
}

CyclicRestriction restrict_cyclic(const Group& gamma, const CharacterModule& m,
                                  const Cocycle& a, ElementId g) {
  CyclicRestriction r;
  r.order = element_order(gamma, g);
  const AbelianHom& act = m.action[g];
  // ker(Norm)/(g-1)M with the class determined by a_g; Norm = sum act^i
  IntMatrix norm_m = IntMatrix::identity(m.group.rank());
  {
    IntMatrix cur = IntMatrix::identity(m.group.rank());
    for (std::int64_t i = 1; i < r.order; ++i) {
      cur = matmul(act.matrix(), cur);
      for (int x = 0; x < norm_m.rows; ++x)
        for (int y = 0; y < norm_m.cols; ++y) norm_m.at(x, y) += cur.at(x, y);
    }
  }
  AbelianHom norm_hom(m.group, m.group, std::move(norm_m));
  AbelianSubgroup z = kernel_subgroup(norm_hom);
  IntMatrix tm = act.matrix();
  for (int i = 0; i < tm.rows; ++i) tm.at(i, i) -= 1;
  AbelianHom g_minus_1(m.group, m.group, std::move(tm));
  std::vector<AbelianElement> b_gens;
  for (int j = 0; j < m.group.rank(); ++j) {
    AbelianElement img = g_minus_1.apply(m.group.basis_element(j));
    if (!m.group.is_zero(img)) b_gens.push_back(img);
  }
  auto zdec = z.decompose();
  std::vector<AbelianElement> b_in_z;
  for (const auto& b : b_gens) {
    auto c = zdec.express(b);
    require_internal(c.has_value(), "(g-1)M escaped ker(Norm)");
    b_in_z.push_back(*c);
  }
  auto q = quotient(zdec.group, subgroup_generated(zdec.group, b_in_z));
  r.h1 = q.group;
  const AbelianElement& ag = cocycle_value(a, g);
  auto a_in_z = zdec.express(ag);
  require_internal(a_in_z.has_value(), "cocycle value violates the norm condition");
  r.coords = q.proj.apply(*a_in_z);
  r.vanishes = q.group.is_zero(r.coords);
  return r;
}

AbelianSubgroup sha1_cyc(const Group& gamma, const CharacterModule& m,
                         const H1Finite& h1) {
  // kernel of H1 -> sum_g M/(g-1)M, evaluated through the linear lift
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> row_mod;
  int hr = h1.group.rank();
  for (ElementId g = 0; g < gamma.order(); ++g) {
    IntMatrix tm = m.action[g].matrix();
    for (int i = 0; i < tm.rows; ++i) tm.at(i, i) -= 1;
    AbelianHom g_minus_1(m.group, m.group, std::move(tm));
    std::vector<AbelianElement> img;
    for (int j = 0; j < m.group.rank(); ++j) {
      AbelianElement e = g_minus_1.apply(m.group.basis_element(j));
      if (!m.group.is_zero(e)) img.push_back(e);
    }
    auto q = quotient(m.group, subgroup_generated(m.group, img));
    if (q.group.trivial()) continue;
    // row block: class coords -> q.proj(a_g) where a = lift(class)
    std::vector<AbelianElement> basis_vals;
    for (int hj = 0; hj < hr; ++hj)
      basis_vals.push_back(
          q.proj.apply(cocycle_value(h1.lift(h1.group.basis_element(hj)), g)));
    for (int qi = 0; qi < q.group.rank(); ++qi) {
      std::vector<std::int64_t> row(hr, 0);
      for (int hj = 0; hj < hr; ++hj) row[hj] = basis_vals[hj].coords[qi];
      rows.push_back(std::move(row));
      row_mod.push_back(q.group.invariants()[qi]);
    }
  }
  if (rows.empty()) {
    std::vector<AbelianElement> all;
    for (int j = 0; j < hr; ++j) all.push_back(h1.group.basis_element(j));
    return AbelianSubgroup(h1.group, all);
  }
  IntMatrix cm(static_cast<int>(rows.size()), hr);
  for (int i = 0; i < cm.rows; ++i)
    for (int j = 0; j < hr; ++j) cm.at(i, j) = rows[i][j];
  AbelianGroup cod = AbelianGroup::module_shape(row_mod);
  return kernel_subgroup(AbelianHom(h1.group, cod, std::move(cm)));
}

}  // namespace brnr
