#include "brnr/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "brnr/errors.hpp"

namespace brnr {

ElementId pow(const Group& g, ElementId a, std::int64_t e) {
  if (e < 0) return pow(g, g.inv(a), -e);
  ElementId acc = 0;
  ElementId base = a;
  while (e > 0) {
    if (e & 1) acc = g.mult(acc, base);
    e >>= 1;
    if (e) base = g.mult(base, base);
  }
  return acc;
}

ElementId conj(const Group& g, ElementId c, ElementId a) {
  return g.mult(g.mult(c, a), g.inv(c));
}

ElementId commutator(const Group& g, ElementId a, ElementId b) {
  return g.mult(g.mult(a, b), g.mult(g.inv(a), g.inv(b)));
}

std::int64_t element_order(const Group& g, ElementId a) {
  std::int64_t n = 1;
  ElementId x = a;
  while (x != 0) {
    x = g.mult(x, a);
    ++n;
    require_internal(n <= g.order(), "element order exceeds group order");
  }
  return n;
}

std::int64_t exponent(const Group& g) {
  if (auto e = g.known_exponent()) return *e;
  ConjugacyClasses cc = conjugacy_classes(g);
  std::int64_t e = 1;
  for (ElementId r : cc.reps) e = std::lcm(e, element_order(g, r));
  return e;
}

// ---------------------------------------------------------------------------
// Permutation backend

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {  // apply a first, then b
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

class PermutationGroup final : public Group {
public:
  PermutationGroup(int degree, const std::vector<std::vector<int>>& gens,
                   std::int64_t cap)
      : degree_(degree) {
    require_arg(degree >= 1, "permutation degree must be >= 1");
    for (const auto& im : gens) {
      require_arg(static_cast<int>(im.size()) == degree,
                  "generator image array length must equal the degree");
      std::vector<bool> seen(degree, false);
      for (int v : im) {
        require_arg(v >= 0 && v < degree && !seen[v],
                    "generator is not a bijection of {0..degree-1}");
        seen[v] = true;
      }
    }
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0);
    elems_.push_back(id);
    index_[id] = 0;
    // BFS from the identity; discovery order fixes the canonical enumeration.
    for (std::size_t head = 0; head < elems_.size(); ++head) {
      Perm cur = elems_[head];
      for (const auto& gen : gens) {
        Perm nxt = compose(cur, gen);
        if (index_.emplace(nxt, static_cast<ElementId>(elems_.size())).second) {
          elems_.push_back(std::move(nxt));
          if (static_cast<std::int64_t>(elems_.size()) > cap)
            throw ResourceError("permutation closure exceeds element cap");
        }
      }
    }
    order_ = static_cast<std::int64_t>(elems_.size());
    for (const auto& gen : gens) generators_.push_back(index_.at(gen));
    inv_.resize(order_);
    for (ElementId i = 0; i < order_; ++i) {
      Perm inv(degree_);
      for (int p = 0; p < degree_; ++p) inv[elems_[i][p]] = p;
      inv_[i] = index_.at(inv);
    }
  }

  ElementId mult(ElementId a, ElementId b) const override {
    return index_.at(compose(elems_[a], elems_[b]));
  }

  ElementId inv(ElementId a) const override { return inv_[a]; }

  std::string label(ElementId a) const override {
    // cycle notation
    const Perm& p = elems_[a];
    std::ostringstream os;
    std::vector<bool> done(degree_, false);
    bool any = false;
    for (int i = 0; i < degree_; ++i) {
      if (done[i] || p[i] == i) continue;
      os << '(' << i;
      done[i] = true;
      for (int j = p[i]; j != i; j = p[j]) {
        os << ' ' << j;
        done[j] = true;
      }
      os << ')';
      any = true;
    }
    if (!any) return "e";
    return os.str();
  }

private:
  struct PermHash {
    std::size_t operator()(const Perm& p) const {
      std::size_t h = 1469598103934665603ull;
      for (int v : p) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  int degree_;
  std::vector<Perm> elems_;
  std::unordered_map<Perm, ElementId, PermHash> index_;
  std::vector<ElementId> inv_;
};

}  // namespace

GroupPtr permutation_group(int degree, const std::vector<std::vector<int>>& gens,
                           std::int64_t element_cap) {
  require_arg(!gens.empty(), "at least one generator required");
  return std::make_shared<PermutationGroup>(degree, gens, element_cap);
}

// ---------------------------------------------------------------------------
// Demarche family

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class DemarcheGroup final : public Group {
public:
  DemarcheGroup(std::int64_t ell, int m, std::int64_t cap) : ell_(ell), m_(m) {
    require_arg(ell % 2 == 1 && is_prime(ell), "l must be an odd prime");
    require_arg(m >= 1, "m must be >= 1");
    lm_ = 1;
    for (int i = 0; i < m; ++i) lm_ *= ell;
    L_ = lm_ * lm_;  // l^(2m)
    double size = static_cast<double>(L_) * L_ * L_;
    if (size > static_cast<double>(cap))
      throw ResourceError("demarche group exceeds element cap");
    order_ = L_ * L_ * L_;
    generators_ = {encode(1, 0, 0), encode(0, 1, 0), encode(0, 0, 1)};
  }

  // x^r y^s z^t . x^r' y^s' z^t' = x^(r+r') y^(s+s') z^(t+t'+ s r' l^m)
  ElementId mult(ElementId a, ElementId b) const override {
    auto [r, s, t] = decode(a);
    auto [r2, s2, t2] = decode(b);
    std::int64_t tz = (t + t2 + s * r2 % L_ * lm_) % L_;
    return encode((r + r2) % L_, (s + s2) % L_, tz);
  }

  ElementId inv(ElementId a) const override {
    auto [r, s, t] = decode(a);
    // (x^r y^s z^t)^-1 = x^-r y^-s z^(-t + s r l^m)
    std::int64_t tz = ((-t + s * r % L_ * lm_) % L_ + L_) % L_;
    return encode((L_ - r) % L_, (L_ - s) % L_, tz);
  }

  std::string label(ElementId a) const override {
    auto [r, s, t] = decode(a);
    std::ostringstream os;
    bool any = false;
    auto part = [&](const char* sym, std::int64_t e) {
      if (e == 0) return;
      if (any) os << '*';
      os << sym;
      if (e != 1) os << '^' << e;
      any = true;
    };
    part("x", r);
    part("y", s);
    part("z", t);
    return any ? os.str() : "e";
  }

  std::optional<std::int64_t> known_exponent() const override { return L_; }

  ElementId encode(std::int64_t r, std::int64_t s, std::int64_t t) const {
    return static_cast<ElementId>((r * L_ + s) * L_ + t);
  }

private:
  std::tuple<std::int64_t, std::int64_t, std::int64_t> decode(ElementId a) const {
    std::int64_t t = a % L_;
    std::int64_t s = (a / L_) % L_;
    std::int64_t r = a / (L_ * L_);
    return {r, s, t};
  }

  std::int64_t ell_, lm_, L_;
  int m_;
};

}  // namespace

GroupPtr demarche_group(std::int64_t ell, int m, std::int64_t element_cap) {
  return std::make_shared<DemarcheGroup>(ell, m, element_cap);
}

// ---------------------------------------------------------------------------
// Abelian backend

namespace {

class AbelianBackend final : public Group {
public:
  AbelianBackend(std::vector<std::int64_t> ds, std::int64_t cap) : ds_(std::move(ds)) {
    std::int64_t n = 1;
    for (std::int64_t d : ds_) {
      require_arg(d >= 2, "abelian invariants must be >= 2");
      n *= d;
      if (n > cap) throw ResourceError("abelian group exceeds element cap");
    }
    order_ = n;
    // one generator per cyclic factor
    strides_.assign(ds_.size(), 1);
    for (int i = static_cast<int>(ds_.size()) - 2; i >= 0; --i)
      strides_[i] = strides_[i + 1] * ds_[i + 1];
    for (std::size_t i = 0; i < ds_.size(); ++i)
      generators_.push_back(static_cast<ElementId>(strides_[i]));
    if (ds_.empty()) order_ = 1;
    if (generators_.empty()) generators_.push_back(0);
  }

  ElementId mult(ElementId a, ElementId b) const override {
    std::int64_t r = 0;
    for (std::size_t i = 0; i < ds_.size(); ++i) {
      std::int64_t ai = (a / strides_[i]) % ds_[i];
      std::int64_t bi = (b / strides_[i]) % ds_[i];
      r += ((ai + bi) % ds_[i]) * strides_[i];
    }
    return static_cast<ElementId>(r);
  }

  ElementId inv(ElementId a) const override {
    std::int64_t r = 0;
    for (std::size_t i = 0; i < ds_.size(); ++i) {
      std::int64_t ai = (a / strides_[i]) % ds_[i];
      r += ((ds_[i] - ai) % ds_[i]) * strides_[i];
    }
    return static_cast<ElementId>(r);
  }

  std::string label(ElementId a) const override {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < ds_.size(); ++i) {
      if (i) os << ',';
      os << (a / strides_[i]) % ds_[i];
    }
    os << ']';
    return os.str();
  }

  std::optional<std::int64_t> known_exponent() const override {
    std::int64_t e = 1;
    for (std::int64_t d : ds_) e = std::lcm(e, d);
    return e;
  }

private:
  std::vector<std::int64_t> ds_;
  std::vector<std::int64_t> strides_;
};

}  // namespace

GroupPtr abelian_group_backend(const std::vector<std::int64_t>& invariants,
                               std::int64_t element_cap) {
  return std::make_shared<AbelianBackend>(invariants, element_cap);
}

// ---------------------------------------------------------------------------
// Products

namespace {

class DirectProduct final : public Group {
public:
  DirectProduct(GroupPtr a, GroupPtr b, std::int64_t cap)
      : a_(std::move(a)), b_(std::move(b)) {
    require_arg(a_ && b_, "null factor");
    if (a_->order() > cap / b_->order())
      throw ResourceError("direct product exceeds element cap");
    order_ = a_->order() * b_->order();
    for (ElementId g : a_->generators())
      generators_.push_back(static_cast<ElementId>(g * b_->order()));
    for (ElementId g : b_->generators()) generators_.push_back(g);
  }

  ElementId mult(ElementId x, ElementId y) const override {
    std::int64_t nb = b_->order();
    return static_cast<ElementId>(a_->mult(x / nb, y / nb) * nb + b_->mult(x % nb, y % nb));
  }

  ElementId inv(ElementId x) const override {
    std::int64_t nb = b_->order();
    return static_cast<ElementId>(a_->inv(x / nb) * nb + b_->inv(x % nb));
  }

  std::string label(ElementId x) const override {
    std::int64_t nb = b_->order();
    return "(" + a_->label(static_cast<ElementId>(x / nb)) + ", " +
           b_->label(static_cast<ElementId>(x % nb)) + ")";
  }

  std::optional<std::int64_t> known_exponent() const override {
    auto ea = a_->known_exponent();
    auto eb = b_->known_exponent();
    if (ea && eb) return std::lcm(*ea, *eb);
    return std::nullopt;
  }

private:
  GroupPtr a_, b_;
};

class SemidirectProduct final : public Group {
public:
  SemidirectProduct(GroupPtr n, GroupPtr h,
                    const std::vector<std::vector<ElementId>>& gen_actions,
                    std::int64_t cap)
      : n_(std::move(n)), h_(std::move(h)) {
    require_arg(n_ && h_, "null factor");
    require_arg(gen_actions.size() == h_->generators().size(),
                "one action permutation required per acting generator");
    if (n_->order() > cap / h_->order())
      throw ResourceError("semidirect product exceeds element cap");
    order_ = n_->order() * h_->order();
    std::int64_t nn = n_->order();
    for (const auto& act : gen_actions) {
      require_arg(static_cast<std::int64_t>(act.size()) == nn,
                  "action permutation has wrong size");
      verify_automorphism(act);
    }
    // propagate generator actions to the whole acting group by BFS
    action_.assign(h_->order(), {});
    std::vector<ElementId> id(nn);
    std::iota(id.begin(), id.end(), 0);
    action_[0] = id;
    std::vector<ElementId> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      ElementId hcur = queue[head];
      for (std::size_t gi = 0; gi < gen_actions.size(); ++gi) {
        ElementId hn = h_->mult(hcur, h_->generators()[gi]);
        if (!action_[hn].empty()) continue;
        // Phi(hcur * g) = Phi(hcur) o Phi(g)
        std::vector<ElementId> comp(nn);
        for (std::int64_t x = 0; x < nn; ++x)
          comp[x] = action_[hcur][gen_actions[gi][x]];
        action_[hn] = std::move(comp);
        queue.push_back(hn);
      }
    }
    for (std::int64_t hh = 0; hh < h_->order(); ++hh)
      require_arg(!action_[hh].empty(), "acting-group generators do not generate");
    verify_homomorphism();
    for (ElementId g : n_->generators())
      generators_.push_back(static_cast<ElementId>(g * h_->order()));
    for (ElementId g : h_->generators()) generators_.push_back(g);
  }

  // (n1, h1)(n2, h2) = (n1 * h1.n2, h1 h2)
  ElementId mult(ElementId x, ElementId y) const override {
    std::int64_t nh = h_->order();
    ElementId n1 = static_cast<ElementId>(x / nh), h1 = static_cast<ElementId>(x % nh);
    ElementId n2 = static_cast<ElementId>(y / nh), h2 = static_cast<ElementId>(y % nh);
    return static_cast<ElementId>(n_->mult(n1, action_[h1][n2]) * nh + h_->mult(h1, h2));
  }

  ElementId inv(ElementId x) const override {
    std::int64_t nh = h_->order();
    ElementId n1 = static_cast<ElementId>(x / nh), h1 = static_cast<ElementId>(x % nh);
    ElementId hi = h_->inv(h1);
    return static_cast<ElementId>(n_->inv(action_[hi][n1]) * nh + hi);
  }

  std::string label(ElementId x) const override {
    std::int64_t nh = h_->order();
    return "(" + n_->label(static_cast<ElementId>(x / nh)) + " : " +
           h_->label(static_cast<ElementId>(x % nh)) + ")";
  }

private:
  void verify_automorphism(const std::vector<ElementId>& act) const {
    std::int64_t nn = n_->order();
    std::vector<bool> seen(nn, false);
    for (ElementId v : act) {
      require_arg(v >= 0 && v < nn && !seen[v], "action is not a bijection");
      seen[v] = true;
    }
    require_arg(act[0] == 0, "action must fix the identity");
    // multiplication-preserving: exhaustive for small N, generator pairs else
    if (nn <= 512) {
      for (ElementId a = 0; a < nn; ++a)
        for (ElementId b = 0; b < nn; ++b)
          require_arg(act[n_->mult(a, b)] == n_->mult(act[a], act[b]),
                      "action is not an automorphism of the normal factor");
    } else {
      for (ElementId a = 0; a < nn; ++a)
        for (ElementId g : n_->generators())
          require_arg(act[n_->mult(a, g)] == n_->mult(act[a], act[g]),
                      "action is not an automorphism of the normal factor");
    }
  }

  void verify_homomorphism() const {
    std::int64_t nh = h_->order();
    for (ElementId a = 0; a < nh; ++a)
      for (ElementId b = 0; b < nh; ++b) {
        const auto& ab = action_[h_->mult(a, b)];
        for (ElementId x : n_->generators())
          require_arg(ab[x] == action_[a][action_[b][x]],
                      "action is not a homomorphism into Aut(N)");
      }
  }

  GroupPtr n_, h_;
  std::vector<std::vector<ElementId>> action_;  // per acting element
};

}  // namespace

GroupPtr direct_product(GroupPtr a, GroupPtr b, std::int64_t element_cap) {
  return std::make_shared<DirectProduct>(std::move(a), std::move(b), element_cap);
}

GroupPtr semidirect_product(GroupPtr normal, GroupPtr acting,
                            const std::vector<std::vector<ElementId>>& gen_actions,
                            std::int64_t element_cap) {
  return std::make_shared<SemidirectProduct>(std::move(normal), std::move(acting),
                                             gen_actions, element_cap);
}

GroupPtr heisenberg_group(std::int64_t p) {
  require_arg(p % 2 == 1 && is_prime(p), "p must be an odd prime");
  GroupPtr n = abelian_group_backend({p, p});  // <y, z>
  GroupPtr h = abelian_group_backend({p});     // <x>
  // x: y -> y z, z -> z
  std::vector<ElementId> act(static_cast<std::size_t>(p * p));
  for (std::int64_t yi = 0; yi < p; ++yi)
    for (std::int64_t zi = 0; zi < p; ++zi)
      act[yi * p + zi] = static_cast<ElementId>(yi * p + (zi + yi) % p);
  return semidirect_product(n, h, {act});
}

// ---------------------------------------------------------------------------
// Conjugacy and subgroups

ConjugacyClasses conjugacy_classes(const Group& g) {
  std::int64_t n = g.order();
  ConjugacyClasses cc;
  cc.class_of.assign(n, -1);
  std::vector<ElementId> gen_inv;
  for (ElementId gen : g.generators()) gen_inv.push_back(g.inv(gen));
  std::vector<ElementId> stack;
  for (ElementId start = 0; start < n; ++start) {
    if (cc.class_of[start] != -1) continue;
    std::int32_t cls = static_cast<std::int32_t>(cc.reps.size());
    cc.reps.push_back(start);
    cc.members.push_back({start});
    cc.class_of[start] = cls;
    stack.assign(1, start);
    while (!stack.empty()) {
      ElementId cur = stack.back();
      stack.pop_back();
      for (std::size_t i = 0; i < g.generators().size(); ++i) {
        ElementId c = g.mult(g.mult(g.generators()[i], cur), gen_inv[i]);
        if (cc.class_of[c] == -1) {
          cc.class_of[c] = cls;
          cc.members[cls].push_back(c);
          stack.push_back(c);
        }
      }
    }
    std::sort(cc.members[cls].begin(), cc.members[cls].end());
  }
  return cc;
}

bool Subgroup::contains(ElementId a) const {
  return std::binary_search(members.begin(), members.end(), a);
}

Subgroup subgroup_closure(const Group& g, std::vector<ElementId> gens,
                          std::int64_t cap) {
  std::vector<ElementId> sorted_gens = gens;
  std::sort(sorted_gens.begin(), sorted_gens.end());
  sorted_gens.erase(std::unique(sorted_gens.begin(), sorted_gens.end()),
                    sorted_gens.end());
  std::vector<bool> in(g.order(), false);
  std::vector<ElementId> members{0};
  in[0] = true;
  std::vector<ElementId> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (ElementId s : sorted_gens) {
      ElementId nxt = g.mult(queue[head], s);
      if (!in[nxt]) {
        in[nxt] = true;
        members.push_back(nxt);
        queue.push_back(nxt);
        if (static_cast<std::int64_t>(members.size()) > cap)
          throw ResourceError("subgroup closure exceeds element cap");
      }
    }
  }
  std::sort(members.begin(), members.end());
  Subgroup s;
  s.members = std::move(members);
  s.generators = std::move(sorted_gens);
  return s;
}

Subgroup derived_subgroup(const Group& g) {
  std::vector<ElementId> seeds;
  for (ElementId a : g.generators())
    for (ElementId b : g.generators()) {
      ElementId c = commutator(g, a, b);
      if (c != 0) seeds.push_back(c);
    }
  // normal closure: conjugate seeds and members by generators until stable
  Subgroup sub = subgroup_closure(g, seeds);
  for (;;) {
    bool grew = false;
    for (ElementId m : sub.members) {
      for (ElementId gen : g.generators()) {
        ElementId c = conj(g, gen, m);
        if (!sub.contains(c)) {
          seeds.push_back(c);
          grew = true;
        }
      }
      if (grew) break;
    }
    if (!grew) break;
    sub = subgroup_closure(g, seeds);
  }
  return sub;
}

}  // namespace brnr
