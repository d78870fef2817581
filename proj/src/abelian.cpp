#include "brnr/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "brnr/errors.hpp"

namespace brnr {

namespace {
constexpr std::int64_t kGuard = std::int64_t(1) << 61;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  __int128 p = static_cast<__int128>(a) * b;
  require_internal(p < kGuard && p > -kGuard, "integer overflow in matrix arithmetic");
  return static_cast<std::int64_t>(p);
}

std::int64_t pos_mod(std::int64_t v, std::int64_t m) {
  v %= m;
  return v < 0 ? v + m : v;
}
}  // namespace

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& x, const IntMatrix& y) {
  require_internal(x.cols == y.rows, "matmul shape mismatch");
  IntMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      std::int64_t v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        if (y.at(k, j) != 0) r.at(i, j) += checked_mul(v, y.at(k, j));
    }
  return r;
}

std::int64_t det(IntMatrix m) {
  require_internal(m.rows == m.cols, "det of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  std::int64_t prev = 1;
  std::int64_t sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(m.at(i, j)) * m.at(k, k) -
                     static_cast<__int128>(m.at(i, k)) * m.at(k, j);
        v /= prev;
        require_internal(v < kGuard && v > -kGuard, "overflow in determinant");
        m.at(i, j) = static_cast<std::int64_t>(v);
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  require_internal(m.rows == m.cols, "inverse of non-square matrix");
  int n = m.rows;
  std::int64_t d = det(m);
  require_internal(d == 1 || d == -1, "matrix is not unimodular");
  if (n == 0) return m;
  // Gauss-Jordan over the integers is safe here because every pivot step of
  // a unimodular matrix can be completed by row gcd operations.
  IntMatrix a = m;
  IntMatrix inv = IntMatrix::identity(n);
  auto row_op = [&](IntMatrix& x, int dst, int src, std::int64_t f) {
    for (int j = 0; j < n; ++j) x.at(dst, j) -= checked_mul(f, x.at(src, j));
  };
  for (int c = 0; c < n; ++c) {
    // gcd-reduce column c below/at row c to a single +-1 pivot
    for (;;) {
      int best = -1;
      for (int i = c; i < n; ++i)
        if (a.at(i, c) != 0 && (best < 0 || std::llabs(a.at(i, c)) < std::llabs(a.at(best, c))))
          best = i;
      require_internal(best >= 0, "singular matrix in inverse");
      if (best != c) {
        for (int j = 0; j < n; ++j) {
          std::swap(a.at(c, j), a.at(best, j));
          std::swap(inv.at(c, j), inv.at(best, j));
        }
      }
      bool done = true;
      for (int i = c + 1; i < n; ++i) {
        if (a.at(i, c) != 0) {
          std::int64_t f = a.at(i, c) / a.at(c, c);
          row_op(a, i, c, f);
          row_op(inv, i, c, f);
          if (a.at(i, c) != 0) done = false;
        }
      }
      if (done) break;
    }
    require_internal(std::llabs(a.at(c, c)) >= 1, "bad pivot");
  }
  // back substitution; diagonal entries multiply to +-1 so each is +-1
  for (int c = n - 1; c >= 0; --c) {
    if (a.at(c, c) < 0) {
      for (int j = 0; j < n; ++j) {
        a.at(c, j) = -a.at(c, j);
        inv.at(c, j) = -inv.at(c, j);
      }
    }
    require_internal(a.at(c, c) == 1, "matrix is not unimodular");
    for (int i = 0; i < c; ++i) {
      std::int64_t f = a.at(i, c);
      if (f != 0) {
        row_op(a, i, c, f);
        row_op(inv, i, c, f);
      }
    }
  }
  return inv;
}

SmithResult smith_normal_form(const IntMatrix& m) {
  SmithResult r{IntMatrix::identity(m.rows), m, IntMatrix::identity(m.cols)};
  IntMatrix& d = r.d;
  IntMatrix& u = r.u;
  IntMatrix& v = r.v;

  auto row_op = [&](int dst, int src, std::int64_t f) {  // row dst -= f*src
    for (int j = 0; j < d.cols; ++j) d.at(dst, j) -= checked_mul(f, d.at(src, j));
    for (int j = 0; j < u.cols; ++j) u.at(dst, j) -= checked_mul(f, u.at(src, j));
  };
  auto col_op = [&](int dst, int src, std::int64_t f) {  // col dst -= f*src
    for (int i = 0; i < d.rows; ++i) d.at(i, dst) -= checked_mul(f, d.at(i, src));
    for (int i = 0; i < v.rows; ++i) v.at(i, dst) -= checked_mul(f, v.at(i, src));
  };
  auto swap_rows = [&](int x, int y) {
    if (x == y) return;
    for (int j = 0; j < d.cols; ++j) std::swap(d.at(x, j), d.at(y, j));
    for (int j = 0; j < u.cols; ++j) std::swap(u.at(x, j), u.at(y, j));
  };
  auto swap_cols = [&](int x, int y) {
    if (x == y) return;
    for (int i = 0; i < d.rows; ++i) std::swap(d.at(i, x), d.at(i, y));
    for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, x), v.at(i, y));
  };

  int n = std::min(d.rows, d.cols);
  for (int k = 0; k < n; ++k) {
    for (;;) {
      // locate the minimal nonzero entry of the trailing block
      int pi = -1, pj = -1;
      for (int i = k; i < d.rows; ++i)
        for (int j = k; j < d.cols; ++j)
          if (d.at(i, j) != 0 &&
              (pi < 0 || std::llabs(d.at(i, j)) < std::llabs(d.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) break;  // trailing block zero
      swap_rows(k, pi);
      swap_cols(k, pj);
      bool clean = true;
      for (int i = k + 1; i < d.rows; ++i)
        if (d.at(i, k) != 0) {
          row_op(i, k, d.at(i, k) / d.at(k, k));
          if (d.at(i, k) != 0) clean = false;
        }
      for (int j = k + 1; j < d.cols; ++j)
        if (d.at(k, j) != 0) {
          col_op(j, k, d.at(k, j) / d.at(k, k));
          if (d.at(k, j) != 0) clean = false;
        }
      if (!clean) continue;
      // divisibility: d_kk must divide the trailing block
      int bi = -1;
      for (int i = k + 1; i < d.rows && bi < 0; ++i)
        for (int j = k + 1; j < d.cols; ++j)
          if (d.at(i, j) % d.at(k, k) != 0) {
            bi = i;
            break;
          }
      if (bi < 0) break;
      // fold the offending row into row k and retry
      row_op(k, bi, -1);
    }
    if (d.at(k, k) < 0) {
      for (int j = 0; j < d.cols; ++j) d.at(k, j) = -d.at(k, j);
      for (int j = 0; j < u.cols; ++j) u.at(k, j) = -u.at(k, j);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

AbelianGroup::AbelianGroup(std::vector<std::int64_t> invariants) : inv_(std::move(invariants)) {
  for (std::size_t i = 0; i < inv_.size(); ++i) {
    require_arg(inv_[i] >= 2, "abelian invariants must be >= 2");
    if (i) require_arg(inv_[i] % inv_[i - 1] == 0, "invariants must form a divisibility chain");
  }
}

AbelianGroup AbelianGroup::module_shape(std::vector<std::int64_t> moduli) {
  AbelianGroup a;
  for (std::int64_t m : moduli) require_arg(m >= 2, "module moduli must be >= 2");
  a.inv_ = std::move(moduli);
  return a;
}

std::int64_t AbelianGroup::order() const {
  std::int64_t n = 1;
  for (std::int64_t d : inv_) n = checked_mul(n, d);
  return n;
}

std::int64_t AbelianGroup::exponent() const {
  std::int64_t e = 1;
  for (std::int64_t d : inv_) e = std::lcm(e, d);
  return e;
}

AbelianElement AbelianGroup::reduce(std::vector<std::int64_t> raw) const {
  require_arg(raw.size() == inv_.size(), "coordinate rank mismatch");
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = pos_mod(raw[i], inv_[i]);
  return {std::move(raw)};
}

AbelianElement AbelianGroup::add(const AbelianElement& a, const AbelianElement& b) const {
  AbelianElement r = a;
  for (std::size_t i = 0; i < inv_.size(); ++i)
    r.coords[i] = pos_mod(r.coords[i] + b.coords[i], inv_[i]);
  return r;
}

AbelianElement AbelianGroup::sub(const AbelianElement& a, const AbelianElement& b) const {
  AbelianElement r = a;
  for (std::size_t i = 0; i < inv_.size(); ++i)
    r.coords[i] = pos_mod(r.coords[i] - b.coords[i], inv_[i]);
  return r;
}

AbelianElement AbelianGroup::neg(const AbelianElement& a) const {
  AbelianElement r = a;
  for (std::size_t i = 0; i < inv_.size(); ++i) r.coords[i] = pos_mod(-r.coords[i], inv_[i]);
  return r;
}

AbelianElement AbelianGroup::mul(std::int64_t k, const AbelianElement& a) const {
  AbelianElement r = a;
  for (std::size_t i = 0; i < inv_.size(); ++i)
    r.coords[i] = pos_mod(static_cast<std::int64_t>(
                              (static_cast<__int128>(k) * a.coords[i]) % inv_[i]),
                          inv_[i]);
  return r;
}

bool AbelianGroup::is_zero(const AbelianElement& a) const {
  for (std::int64_t c : a.coords)
    if (c != 0) return false;
  return true;
}

AbelianElement AbelianGroup::basis_element(int i) const {
  AbelianElement r = zero();
  r.coords[i] = 1;
  return r;
}

std::int64_t AbelianGroup::element_order(const AbelianElement& a) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < inv_.size(); ++i)
    o = std::lcm(o, inv_[i] / std::gcd(inv_[i], a.coords[i]));
  return o;
}

std::int64_t AbelianGroup::index_of(const AbelianElement& a) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < inv_.size(); ++i) idx = idx * inv_[i] + a.coords[i];
  return idx;
}

AbelianElement AbelianGroup::element_at(std::int64_t idx) const {
  AbelianElement r = zero();
  for (int i = rank() - 1; i >= 0; --i) {
    r.coords[i] = idx % inv_[i];
    idx /= inv_[i];
  }
  return r;
}

std::vector<AbelianElement> enumerate_elements(const AbelianGroup& a, std::int64_t cap) {
  if (a.order() > cap) throw ResourceError("abelian enumeration exceeds cap");
  std::vector<AbelianElement> out;
  out.reserve(a.order());
  for (std::int64_t i = 0; i < a.order(); ++i) out.push_back(a.element_at(i));
  return out;
}

QmodZ QmodZ::make(std::int64_t num, std::int64_t den) {
  require_internal(den > 0, "QmodZ denominator must be positive");
  num = pos_mod(num, den);
  std::int64_t g = std::gcd(num, den);
  if (num == 0) return {0, 1};
  return {num / g, den / g};
}

QmodZ QmodZ::operator+(const QmodZ& o) const {
  std::int64_t l = std::lcm(den, o.den);
  return make(num * (l / den) + o.num * (l / o.den), l);
}

std::string QmodZ::str() const {
  std::ostringstream os;
  os << num << '/' << den;
  return os.str();
}

QmodZ pairing(const AbelianGroup& a, const AbelianElement& c, const AbelianElement& x) {
  require_arg(c.coords.size() == a.invariants().size() &&
                  x.coords.size() == a.invariants().size(),
              "pairing rank mismatch");
  std::int64_t e = a.exponent();
  __int128 acc = 0;
  for (int i = 0; i < a.rank(); ++i) {
    std::int64_t scale = e / a.invariants()[i];
    acc += static_cast<__int128>(c.coords[i]) * x.coords[i] % e * scale;
  }
  return QmodZ::make(static_cast<std::int64_t>(acc % e), e);
}

AbelianGroup dual_group(const AbelianGroup& a) { return a; }

// ---------------------------------------------------------------------------

AbelianHom::AbelianHom(AbelianGroup domain, AbelianGroup codomain, IntMatrix m)
    : dom_(std::move(domain)), cod_(std::move(codomain)), m_(std::move(m)) {
  require_arg(m_.rows == cod_.rank() && m_.cols == dom_.rank(), "hom matrix shape mismatch");
  for (int i = 0; i < m_.rows; ++i)
    for (int j = 0; j < m_.cols; ++j) m_.at(i, j) = pos_mod(m_.at(i, j), cod_.invariants()[i]);
  // well-defined: the image of each domain generator dies under its order
  for (int j = 0; j < m_.cols; ++j)
    for (int i = 0; i < m_.rows; ++i) {
      __int128 v = static_cast<__int128>(m_.at(i, j)) * dom_.invariants()[j];
      require_arg(v % cod_.invariants()[i] == 0,
                  "matrix does not define a homomorphism");
    }
}

AbelianHom AbelianHom::identity(const AbelianGroup& a) {
  return AbelianHom(a, a, IntMatrix::identity(a.rank()));
}

AbelianHom AbelianHom::from_images(const AbelianGroup& domain, const AbelianGroup& codomain,
                                   const std::vector<AbelianElement>& images) {
  require_arg(static_cast<int>(images.size()) == domain.rank(),
              "one image per domain generator required");
  IntMatrix m(codomain.rank(), domain.rank());
  for (int j = 0; j < domain.rank(); ++j)
    for (int i = 0; i < codomain.rank(); ++i) m.at(i, j) = images[j].coords[i];
  return AbelianHom(domain, codomain, std::move(m));
}

AbelianElement AbelianHom::apply(const AbelianElement& x) const {
  require_arg(static_cast<int>(x.coords.size()) == dom_.rank(), "element rank mismatch");
  std::vector<std::int64_t> out(cod_.rank(), 0);
  for (int i = 0; i < cod_.rank(); ++i) {
    __int128 acc = 0;
    for (int j = 0; j < dom_.rank(); ++j)
      acc += static_cast<__int128>(m_.at(i, j)) * x.coords[j];
    out[i] = pos_mod(static_cast<std::int64_t>(acc % cod_.invariants()[i]),
                     cod_.invariants()[i]);
  }
  return {std::move(out)};
}

AbelianHom AbelianHom::compose_after(const AbelianHom& inner) const {
  require_arg(inner.cod_ == dom_, "hom composition mismatch");
  return AbelianHom(inner.dom_, cod_, matmul(m_, inner.m_));
}

// ---------------------------------------------------------------------------
// HomSolver

void HomSolver::reduce_col(Col& c, int from_row) {
  const auto& b = cod_.invariants();
  const auto& a = dom_.invariants();
  for (int i = from_row; i < cod_.rank(); ++i) c.top[i] = pos_mod(c.top[i], b[i]);
  for (int j = 0; j < dom_.rank(); ++j) c.bottom[j] = pos_mod(c.bottom[j], a[j]);
}

HomSolver::HomSolver(const AbelianHom& f) : dom_(f.domain()), cod_(f.codomain()) {
  int m = cod_.rank(), n = dom_.rank();
  const auto& b = cod_.invariants();
  const auto& a = dom_.invariants();
  // columns: images of domain generators, codomain moduli, domain orders
  for (int j = 0; j < n; ++j) {
    Col c{std::vector<std::int64_t>(m, 0), std::vector<std::int64_t>(n, 0)};
    for (int i = 0; i < m; ++i) c.top[i] = f.matrix().at(i, j);
    c.bottom[j] = 1;
    cols_.push_back(std::move(c));
  }
  for (int i = 0; i < m; ++i) {
    Col c{std::vector<std::int64_t>(m, 0), std::vector<std::int64_t>(n, 0)};
    c.top[i] = b[i];
    cols_.push_back(std::move(c));
  }
  for (int j = 0; j < n; ++j) {
    // a_j e_j is killed by any homomorphism, so (0, a_j e_j) lies in the
    // graph lattice and licenses mod-a_j reduction of bottoms
    Col c{std::vector<std::int64_t>(m, 0), std::vector<std::int64_t>(n, 0)};
    c.bottom[j] = a[j];
    cols_.push_back(std::move(c));
  }

  std::vector<bool> pivoted(cols_.size(), false);
  for (int row = 0; row < m; ++row) {
    for (;;) {
      int best = -1;
      for (std::size_t j = 0; j < cols_.size(); ++j)
        if (!pivoted[j] && cols_[j].top[row] != 0 &&
            (best < 0 ||
             std::llabs(cols_[j].top[row]) < std::llabs(cols_[best].top[row])))
          best = static_cast<int>(j);
      if (best < 0) break;  // no pivot in this row
      bool lone = true;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (pivoted[j] || static_cast<int>(j) == best || cols_[j].top[row] == 0) continue;
        std::int64_t q = cols_[j].top[row] / cols_[best].top[row];
        for (int i = row; i < m; ++i)
          cols_[j].top[i] -= checked_mul(q, cols_[best].top[i]);
        for (int i = 0; i < n; ++i)
          cols_[j].bottom[i] -= checked_mul(q, cols_[best].bottom[i]);
        reduce_col(cols_[j], row + 1);  // keep row's residue for the gcd loop
        if (cols_[j].top[row] != 0) lone = false;
      }
      if (lone) {
        if (cols_[best].top[row] < 0) {
          for (auto& v : cols_[best].top) v = -v;
          for (auto& v : cols_[best].bottom) v = -v;
        }
        pivots_.emplace_back(row, best);
        pivoted[best] = true;
        reduce_col(cols_[best], row + 1);
        break;
      }
    }
  }
  // kernel generators: bottoms of all non-pivot columns
  std::set<std::vector<std::int64_t>> seen;
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (pivoted[j]) continue;
    for (int i = 0; i < m; ++i)
      require_internal(cols_[j].top[i] == 0, "non-pivot column with nonzero top");
    AbelianElement g = dom_.reduce(cols_[j].bottom);
    if (!dom_.is_zero(g) && seen.insert(g.coords).second) kernel_.push_back(g);
  }
  std::sort(kernel_.begin(), kernel_.end());
}

std::optional<AbelianElement> HomSolver::solve(const AbelianElement& target) const {
  int m = cod_.rank(), n = dom_.rank();
  const auto& b = cod_.invariants();
  const auto& a = dom_.invariants();
  std::vector<std::int64_t> v(m);
  for (int i = 0; i < m; ++i) v[i] = pos_mod(target.coords[i], b[i]);
  std::vector<std::int64_t> x(n, 0);
  std::size_t next_pivot = 0;
  for (int row = 0; row < m; ++row) {
    if (next_pivot < pivots_.size() && pivots_[next_pivot].first == row) {
      const Col& c = cols_[pivots_[next_pivot].second];
      ++next_pivot;
      std::int64_t p = c.top[row];
      if (v[row] % p != 0) return std::nullopt;
      std::int64_t q = v[row] / p;
      if (q != 0) {
        for (int i = row; i < m; ++i) {
          v[i] -= checked_mul(q, c.top[i]);
          v[i] = pos_mod(v[i], b[i]);  // moduli columns contribute nothing to x
        }
        for (int j = 0; j < n; ++j) x[j] = pos_mod(x[j] + checked_mul(q, c.bottom[j]), a[j]);
      }
    } else if (v[row] % b[row] != 0) {
      return std::nullopt;
    }
  }
  return dom_.reduce(x);
}

// ---------------------------------------------------------------------------
// Subgroups

namespace {

// Hermite column basis of span(columns of gens, diag(d)); lower triangular,
// positive diagonal, entries below the diagonal reduced mod the pivot.
// Entry growth is controlled by reducing row i mod d_i against the diagonal
// columns, which stay intact until their own row is processed.
IntMatrix lattice_basis(const AbelianGroup& a, const std::vector<AbelianElement>& gens) {
  int r = a.rank();
  const auto& d = a.invariants();
  std::vector<std::vector<std::int64_t>> cols;
  for (const auto& g : gens) {
    require_arg(static_cast<int>(g.coords.size()) == r, "generator rank mismatch");
    std::vector<std::int64_t> c(g.coords);
    for (int i = 0; i < r; ++i) c[i] = pos_mod(c[i], d[i]);
    cols.push_back(std::move(c));
  }
  for (int i = 0; i < r; ++i) {
    std::vector<std::int64_t> c(r, 0);
    c[i] = d[i];
    cols.push_back(std::move(c));
  }
  std::vector<int> pivot_col(r, -1);
  std::vector<bool> pivoted(cols.size(), false);
  for (int row = 0; row < r; ++row) {
    for (;;) {
      int best = -1;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (!pivoted[j] && cols[j][row] != 0 &&
            (best < 0 || std::llabs(cols[j][row]) < std::llabs(cols[best][row])))
          best = static_cast<int>(j);
      require_internal(best >= 0, "lattice lost full rank");
      bool lone = true;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (pivoted[j] || static_cast<int>(j) == best || cols[j][row] == 0) continue;
        std::int64_t q = cols[j][row] / cols[best][row];
        for (int i = row; i < r; ++i) {
          cols[j][i] -= checked_mul(q, cols[best][i]);
          if (i > row) cols[j][i] = pos_mod(cols[j][i], d[i]);
        }
        if (cols[j][row] != 0) lone = false;
      }
      if (lone) {
        if (cols[best][row] < 0)
          for (auto& v : cols[best]) v = -v;
        for (int i = row + 1; i < r; ++i) cols[best][i] = pos_mod(cols[best][i], d[i]);
        pivot_col[row] = best;
        pivoted[best] = true;
        break;
      }
    }
  }
  IntMatrix w(r, r);
  for (int i = 0; i < r; ++i)
    for (int row = 0; row < r; ++row) w.at(row, i) = cols[pivot_col[i]][row];
  // canonicalize: reduce below-diagonal entries mod the diagonal of their row
  // (increasing i, so later reductions never disturb finished rows)
  for (int j = 0; j < r; ++j)
    for (int i = j + 1; i < r; ++i) {
      std::int64_t q = w.at(i, j) / w.at(i, i);
      if (w.at(i, j) - q * w.at(i, i) < 0) q -= 1;
      if (q != 0)
        for (int row = i; row < r; ++row)
          w.at(row, j) -= checked_mul(q, w.at(row, i));
    }
  return w;
}

}  // namespace

AbelianSubgroup::AbelianSubgroup(AbelianGroup parent, std::vector<AbelianElement> generators)
    : parent_(std::move(parent)), gens_(std::move(generators)) {
  for (auto& g : gens_) g = parent_.reduce(g.coords);
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
  std::erase_if(gens_, [&](const AbelianElement& g) { return parent_.is_zero(g); });
  lattice_ = lattice_basis(parent_, gens_);
  // membership through the audited solver: exp(parent) kills every column
  AbelianGroup free_dom(std::vector<std::int64_t>(
      static_cast<std::size_t>(parent_.rank()),
      parent_.trivial() ? 2 : parent_.exponent()));
  if (parent_.rank() == 0) free_dom = AbelianGroup();
  IntMatrix m = lattice_;
  member_solver_ = std::make_shared<HomSolver>(AbelianHom(free_dom, parent_, std::move(m)));
}

std::vector<AbelianElement> AbelianSubgroup::basis() const {
  std::vector<AbelianElement> out;
  for (int j = 0; j < lattice_.cols; ++j) {
    std::vector<std::int64_t> c(parent_.rank());
    for (int i = 0; i < parent_.rank(); ++i) c[i] = lattice_.at(i, j);
    AbelianElement e = parent_.reduce(std::move(c));
    if (!parent_.is_zero(e)) out.push_back(e);
  }
  return out;
}

std::int64_t AbelianSubgroup::order() const {
  std::int64_t quotient_order = 1;
  for (int i = 0; i < parent_.rank(); ++i) quotient_order *= lattice_.at(i, i);
  return parent_.order() / quotient_order;
}

bool AbelianSubgroup::contains(const AbelianElement& x) const {
  return member_solver_->solve(parent_.reduce(x.coords)).has_value();
}

bool AbelianSubgroup::contains_subgroup(const AbelianSubgroup& other) const {
  for (const auto& g : other.basis())
    if (!contains(g)) return false;
  return true;
}

bool AbelianSubgroup::same_subgroup_as(const AbelianSubgroup& other) const {
  return order() == other.order() && contains_subgroup(other);
}

AbelianSubgroup::Decomposition AbelianSubgroup::decompose() const {
  int r = parent_.rank();
  const auto& d = parent_.invariants();
  // X = W^-1 * diag(d): integral because diag(d) Z^r is inside the lattice
  IntMatrix x(r, r);
  for (int col = 0; col < r; ++col) {
    std::vector<std::int64_t> rhs(r, 0);
    rhs[col] = d[col];
    for (int i = 0; i < r; ++i) {
      std::int64_t acc = rhs[i];
      for (int j = 0; j < i; ++j) acc -= checked_mul(lattice_.at(i, j), x.at(j, col));
      require_internal(acc % lattice_.at(i, i) == 0, "lattice division not exact");
      x.at(i, col) = acc / lattice_.at(i, i);
    }
  }
  SmithResult snf = smith_normal_form(x);
  Decomposition dec;
  dec.parent = parent_;
  dec.u = snf.u;
  dec.lambda.resize(r);
  std::vector<std::int64_t> invs;
  for (int i = 0; i < r; ++i) {
    dec.lambda[i] = snf.d.at(i, i);
    require_internal(dec.lambda[i] > 0, "subgroup decomposition not finite");
    if (dec.lambda[i] > 1) {
      dec.kept.push_back(i);
      invs.push_back(dec.lambda[i]);
    }
  }
  dec.group = AbelianGroup(std::move(invs));
  IntMatrix uinv = inverse_unimodular(snf.u);
  std::vector<AbelianElement> cyc;
  for (int idx : dec.kept) {
    std::vector<std::int64_t> col(r, 0);
    for (int i = 0; i < r; ++i) {
      __int128 acc = 0;
      for (int j = 0; j < r; ++j)
        acc += static_cast<__int128>(lattice_.at(i, j)) * uinv.at(j, idx);
      col[i] = static_cast<std::int64_t>(acc % d[i]);
    }
    cyc.push_back(parent_.reduce(std::move(col)));
  }
  dec.cyclic_generators = cyc;
  dec.embed = AbelianHom::from_images(dec.group, parent_, cyc);
  dec.lattice_solver = member_solver_;
  return dec;
}

std::optional<AbelianElement> AbelianSubgroup::Decomposition::express(
    const AbelianElement& x) const {
  auto pre = lattice_solver->solve(parent.reduce(x.coords));
  if (!pre) return std::nullopt;
  std::vector<std::int64_t> out;
  out.reserve(kept.size());
  for (int idx : kept) {
    __int128 acc = 0;
    for (int j = 0; j < u.cols; ++j)
      acc += static_cast<__int128>(u.at(idx, j)) * pre->coords[j];
    std::int64_t l = lambda[idx];
    out.push_back(((static_cast<std::int64_t>(acc % l)) % l + l) % l);
  }
  return AbelianElement{std::move(out)};
}

AbelianSubgroup subgroup_generated(const AbelianGroup& a,
                                   const std::vector<AbelianElement>& elems) {
  return AbelianSubgroup(a, elems);
}

AbelianSubgroup kernel_subgroup(const AbelianHom& f) {
  HomSolver solver(f);
  return AbelianSubgroup(f.domain(), solver.kernel_generators());
}

AbelianSubgroup fixed_subgroup(const AbelianGroup& a, const AbelianHom& f) {
  require_arg(f.is_endomorphism() && f.domain() == a, "fixed_subgroup needs an endomorphism");
  IntMatrix m = f.matrix();
  for (int i = 0; i < m.rows; ++i) m.at(i, i) -= 1;
  return kernel_subgroup(AbelianHom(a, a, std::move(m)));
}

AbelianSubgroup orthogonal_complement(const AbelianGroup& a,
                                      const std::vector<AbelianElement>& elems) {
  // <c, v> = 0 in Q/Z  <=>  sum_i c_i v_i (e/d_i) = 0 mod e
  std::int64_t e = a.exponent();
  int k = static_cast<int>(elems.size());
  IntMatrix m(k, a.rank());
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < a.rank(); ++i)
      m.at(j, i) = elems[j].coords[i] % e * (e / a.invariants()[i]) % e;
  AbelianGroup cod(std::vector<std::int64_t>(static_cast<std::size_t>(k), e < 2 ? 2 : e));
  if (k == 0) cod = AbelianGroup();
  return kernel_subgroup(AbelianHom(dual_group(a), cod, std::move(m)));
}

QuotientResult quotient(const AbelianGroup& a, const AbelianSubgroup& h) {
  require_arg(h.parent() == a, "subgroup does not live in the quotient base");
  int r = a.rank();
  SmithResult snf = smith_normal_form(h.lattice());
  std::vector<int> kept;
  std::vector<std::int64_t> invs;
  for (int i = 0; i < r; ++i) {
    std::int64_t l = snf.d.at(i, i);
    require_internal(l > 0, "quotient not finite");
    if (l > 1) {
      kept.push_back(i);
      invs.push_back(l);
    }
  }
  QuotientResult q;
  q.parent = a;
  q.group = AbelianGroup(std::move(invs));
  IntMatrix proj(q.group.rank(), r);
  for (int oi = 0; oi < q.group.rank(); ++oi)
    for (int j = 0; j < r; ++j) proj.at(oi, j) = snf.u.at(kept[oi], j);
  q.proj = AbelianHom(a, q.group, std::move(proj));
  IntMatrix uinv = inverse_unimodular(snf.u);
  q.lift_cols = IntMatrix(r, q.group.rank());
  for (int oi = 0; oi < q.group.rank(); ++oi)
    for (int i = 0; i < r; ++i)
      q.lift_cols.at(i, oi) = pos_mod(uinv.at(i, kept[oi]), a.invariants()[i]);
  return q;
}

AbelianElement QuotientResult::lift(const AbelianElement& x) const {
  require_arg(static_cast<int>(x.coords.size()) == group.rank(), "lift rank mismatch");
  std::vector<std::int64_t> out(parent.rank(), 0);
  for (int i = 0; i < parent.rank(); ++i) {
    __int128 acc = 0;
    for (int j = 0; j < group.rank(); ++j)
      acc += static_cast<__int128>(lift_cols.at(i, j)) * x.coords[j];
    out[i] = static_cast<std::int64_t>(acc % parent.invariants()[i]);
  }
  return parent.reduce(std::move(out));
}

}  // namespace brnr
