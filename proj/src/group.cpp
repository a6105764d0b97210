#include "tymod/group.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace tymod {

namespace {

Int checked_mul(Int a, Int b) {
  Int r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw internal_error("integer overflow in group arithmetic");
  return r;
}

Int checked_add(Int a, Int b) {
  Int r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw internal_error("integer overflow in group arithmetic");
  return r;
}

}  // namespace

IntMat identity_mat(Int n) {
  IntMat m(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n), 0));
  for (Int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  const size_t rows = a.size();
  const size_t inner = b.size();
  const size_t cols = inner ? b[0].size() : 0;
  IntMat r(rows, std::vector<Int>(cols, 0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < cols; ++j)
        r[i][j] = checked_add(r[i][j], checked_mul(a[i][k], b[k][j]));
    }
  return r;
}

Group::Group(std::vector<Int> orders) {
  Int total = 1;
  for (Int m : orders) {
    if (m < 1) throw validation_error("cyclic factor order must be >= 1");
    if (m > 1) orders_.push_back(m);
    if (__builtin_mul_overflow(total, m, &total))
      throw validation_error("group order exceeds the representable range");
  }
}

Int Group::order() const {
  Int n = 1;
  for (Int m : orders_) n = checked_mul(n, m);
  return n;
}

Int Group::exponent() const {
  Int e = 1;
  for (Int m : orders_) e = std::lcm(e, m);
  return e;
}

Elem Group::reduce(Elem e) const {
  for (size_t i = 0; i < orders_.size(); ++i) {
    e[i] %= orders_[i];
    if (e[i] < 0) e[i] += orders_[i];
  }
  return e;
}

Elem Group::add(const Elem& a, const Elem& b) const {
  Elem r(orders_.size());
  for (size_t i = 0; i < orders_.size(); ++i) r[i] = a[i] + b[i];
  return reduce(std::move(r));
}

Elem Group::neg(const Elem& a) const {
  Elem r(orders_.size());
  for (size_t i = 0; i < orders_.size(); ++i) r[i] = -a[i];
  return reduce(std::move(r));
}

Elem Group::sub(const Elem& a, const Elem& b) const {
  Elem r(orders_.size());
  for (size_t i = 0; i < orders_.size(); ++i) r[i] = a[i] - b[i];
  return reduce(std::move(r));
}

Elem Group::scale(Int n, const Elem& a) const {
  Elem r(orders_.size());
  for (size_t i = 0; i < orders_.size(); ++i) {
    const Int nn = ((n % orders_[i]) + orders_[i]) % orders_[i];
    r[i] = checked_mul(nn, a[i]);
  }
  return reduce(std::move(r));
}

Elem Group::generator(Int i) const {
  Elem e = zero();
  e[static_cast<size_t>(i)] = 1;
  return e;
}

Int Group::element_order(const Elem& a) const {
  Int n = 1;
  for (size_t i = 0; i < orders_.size(); ++i) {
    const Int m = orders_[i];
    n = std::lcm(n, m / std::gcd(m, a[i]));
  }
  return n;
}

Int Group::index_of(const Elem& e) const {
  Int idx = 0;
  for (size_t i = 0; i < orders_.size(); ++i) idx = idx * orders_[i] + e[i];
  return idx;
}

Elem Group::element_at(Int idx) const {
  Elem e(orders_.size(), 0);
  for (size_t i = orders_.size(); i-- > 0;) {
    e[i] = idx % orders_[i];
    idx /= orders_[i];
  }
  return e;
}

std::vector<Elem> Group::elements() const {
  const Int n = order();
  std::vector<Elem> out;
  out.reserve(static_cast<size_t>(n));
  for (Int i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

std::string Group::str() const {
  if (orders_.empty()) return "Z1";
  std::string s;
  for (size_t i = 0; i < orders_.size(); ++i) {
    if (i) s += "x";
    s += "Z" + std::to_string(orders_[i]);
  }
  return s;
}

Elem Hom::apply(const Elem& x) const {
  Elem y(static_cast<size_t>(target.rank()), 0);
  for (Int i = 0; i < target.rank(); ++i)
    for (Int j = 0; j < source.rank(); ++j)
      y[i] = checked_add(y[i], checked_mul(matrix[i][j], x[j]));
  return target.reduce(std::move(y));
}

bool Hom::well_defined() const {
  for (Int j = 0; j < source.rank(); ++j) {
    const Elem img = apply(source.generator(j));
    if (target.scale(source.order_of_factor(j), img) != target.zero()) return false;
  }
  return true;
}

bool Hom::is_identity() const {
  if (source != target) return false;
  for (Int j = 0; j < source.rank(); ++j)
    if (apply(source.generator(j)) != source.generator(j)) return false;
  return true;
}

Hom Hom::compose(const Hom& inner) const {
  if (inner.target != source) throw internal_error("hom composition mismatch");
  Hom h{inner.source, target, mat_mul(matrix, inner.matrix)};
  return h;
}

Hom Hom::identity(const Group& g) { return Hom{g, g, identity_mat(g.rank())}; }

Hom Hom::zero_map(const Group& s, const Group& t) {
  return Hom{s, t, IntMat(static_cast<size_t>(t.rank()), std::vector<Int>(static_cast<size_t>(s.rank()), 0))};
}

Group dual_group(const Group& g) { return g; }

Phase char_eval(const Group& g, const Elem& lambda, const Elem& a) {
  Phase p;
  for (Int i = 0; i < g.rank(); ++i)
    p += Phase(checked_mul(lambda[i], a[i]), g.order_of_factor(i));
  return p;
}

Hom dual_hom(const Hom& f) {
  const Group& s = f.source;
  const Group& t = f.target;
  Hom d{dual_group(t), dual_group(s),
        IntMat(static_cast<size_t>(s.rank()), std::vector<Int>(static_cast<size_t>(t.rank()), 0))};
  for (Int j = 0; j < s.rank(); ++j)
    for (Int i = 0; i < t.rank(); ++i) {
      const Int c = checked_mul(s.order_of_factor(j), f.matrix[i][j]);
      if (c % t.order_of_factor(i) != 0)
        throw internal_error("dual_hom: source hom is not well defined");
      const Int m = s.order_of_factor(j);
      d.matrix[j][i] = ((c / t.order_of_factor(i)) % m + m) % m;
    }
  return d;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

using Wide = __int128;
using WideMat = std::vector<std::vector<Wide>>;

WideMat wide_identity(Int n) {
  WideMat m(static_cast<size_t>(n), std::vector<Wide>(static_cast<size_t>(n), 0));
  for (Int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

struct SnfWork {
  Int rows, cols;
  WideMat d, u, ui, v, vi;

  void row_swap(Int a, Int b) {
    std::swap(d[a], d[b]);
    std::swap(u[a], u[b]);
    for (Int k = 0; k < rows; ++k) std::swap(ui[k][a], ui[k][b]);
  }
  void col_swap(Int a, Int b) {
    for (Int k = 0; k < rows; ++k) std::swap(d[k][a], d[k][b]);
    for (Int k = 0; k < cols; ++k) std::swap(v[k][a], v[k][b]);
    std::swap(vi[a], vi[b]);
  }
  // row a += c * row b
  void row_add(Int a, Int b, Wide c) {
    for (Int k = 0; k < cols; ++k) d[a][k] += c * d[b][k];
    for (Int k = 0; k < rows; ++k) u[a][k] += c * u[b][k];
    for (Int k = 0; k < rows; ++k) ui[k][b] -= c * ui[k][a];
  }
  // col a += c * col b
  void col_add(Int a, Int b, Wide c) {
    for (Int k = 0; k < rows; ++k) d[k][a] += c * d[k][b];
    for (Int k = 0; k < cols; ++k) v[k][a] += c * v[k][b];
    for (Int k = 0; k < cols; ++k) vi[b][k] -= c * vi[a][k];
  }
  void row_negate(Int a) {
    for (Int k = 0; k < cols; ++k) d[a][k] = -d[a][k];
    for (Int k = 0; k < rows; ++k) u[a][k] = -u[a][k];
    for (Int k = 0; k < rows; ++k) ui[k][a] = -ui[k][a];
  }

  // Clears row t and column t beyond the pivot at (t,t).
  void reduce_pivot(Int t) {
    while (true) {
      bool clean = true;
      for (Int i = t + 1; i < rows; ++i) {
        while (d[i][t] != 0) {
          const Wide q = d[i][t] / d[t][t];
          if (q != 0) row_add(i, t, -q);
          if (d[i][t] != 0) {
            row_swap(i, t);
            clean = false;
          }
        }
      }
      for (Int j = t + 1; j < cols; ++j) {
        while (d[t][j] != 0) {
          const Wide q = d[t][j] / d[t][t];
          if (q != 0) col_add(j, t, -q);
          if (d[t][j] != 0) {
            col_swap(j, t);
            clean = false;
          }
        }
      }
      // a column swap can only dirty row t, a row swap only column t;
      // loop until both are clear
      bool col_clear = true;
      for (Int i = t + 1; i < rows; ++i) col_clear &= d[i][t] == 0;
      bool row_clear = true;
      for (Int j = t + 1; j < cols; ++j) row_clear &= d[t][j] == 0;
      if (clean && col_clear && row_clear) break;
    }
    if (d[t][t] < 0) row_negate(t);
  }
};

}  // namespace

namespace {

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

IntMat narrow(const WideMat& m) {
  constexpr Wide lo = std::numeric_limits<Int>::min();
  constexpr Wide hi = std::numeric_limits<Int>::max();
  IntMat out(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    out[i].resize(m[i].size());
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (m[i][j] < lo || m[i][j] > hi)
        throw internal_error("snf: transform entry exceeds 64 bits");
      out[i][j] = static_cast<Int>(m[i][j]);
    }
  }
  return out;
}

}  // namespace

SnfResult snf(const IntMat& m, Int rows, Int cols) {
  SnfWork w;
  w.rows = rows;
  w.cols = cols;
  w.d.assign(static_cast<size_t>(rows), std::vector<Wide>(static_cast<size_t>(cols), 0));
  for (Int i = 0; i < rows; ++i)
    for (Int j = 0; j < cols; ++j) w.d[i][j] = m[i][j];
  w.u = wide_identity(rows);
  w.ui = wide_identity(rows);
  w.v = wide_identity(cols);
  w.vi = wide_identity(cols);

  const Int n = std::min(rows, cols);
  Int rank = 0;
  for (Int t = 0; t < n; ++t) {
    // pick the nonzero entry of least magnitude as pivot
    Int bi = -1, bj = -1;
    for (Int i = t; i < rows; ++i)
      for (Int j = t; j < cols; ++j)
        if (w.d[i][j] != 0 &&
            (bi < 0 || wide_abs(w.d[i][j]) < wide_abs(w.d[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    if (bi != t) w.row_swap(bi, t);
    if (bj != t) w.col_swap(bj, t);
    w.reduce_pivot(t);
    rank = t + 1;
  }

  // enforce d_i | d_{i+1}
  bool changed = true;
  while (changed) {
    changed = false;
    for (Int i = 0; i + 1 < rank; ++i)
      for (Int j = i + 1; j < rank; ++j)
        if (w.d[j][j] % w.d[i][i] != 0) {
          w.col_add(i, j, 1);
          w.reduce_pivot(i);
          w.reduce_pivot(j);
          changed = true;
        }
  }

  return SnfResult{narrow(w.u), narrow(w.ui), narrow(w.d), narrow(w.v), narrow(w.vi)};
}

SnfResult snf(const IntMat& m) {
  const Int rows = static_cast<Int>(m.size());
  const Int cols = rows ? static_cast<Int>(m[0].size()) : 0;
  return snf(m, rows, cols);
}

// ---------------------------------------------------------------------------
// Subgroups

std::vector<Elem> generated_elements(const Group& g, const std::vector<Elem>& gens) {
  std::set<Elem> seen;
  std::vector<Elem> work;
  seen.insert(g.zero());
  work.push_back(g.zero());
  while (!work.empty()) {
    Elem x = std::move(work.back());
    work.pop_back();
    for (const Elem& gen : gens) {
      Elem y = g.add(x, gen);
      if (seen.insert(y).second) work.push_back(std::move(y));
    }
  }
  return std::vector<Elem>(seen.begin(), seen.end());
}

bool Subgroup::contains(const Elem& e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

Elem Subgroup::to_abstract(const Elem& ambient_elem) const {
  auto it = abstract_of.find(ambient_elem);
  if (it == abstract_of.end()) throw internal_error("element is not in the subgroup");
  return it->second;
}

bool same_subgroup(const Subgroup& a, const Subgroup& b) {
  return a.ambient == b.ambient && a.elements == b.elements;
}

Subgroup subgroup_from_elements(const Group& ambient, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());

  // canonical minimal generating sequence, greedy over the sorted list
  std::vector<Elem> gens;
  std::vector<Elem> closed = {ambient.zero()};
  for (const Elem& e : elems) {
    if (std::binary_search(closed.begin(), closed.end(), e)) continue;
    gens.push_back(e);
    closed = generated_elements(ambient, gens);
    if (closed.size() == elems.size()) break;
  }
  if (closed != elems)
    throw validation_error("element set is not closed under addition");

  Subgroup s;
  s.ambient = ambient;
  s.elements = std::move(elems);

  const Int k = static_cast<Int>(gens.size());
  const Int r = ambient.rank();
  if (k == 0) {
    s.group = Group{};
    s.embed = Hom{s.group, ambient, IntMat(static_cast<size_t>(r), std::vector<Int>{})};
    s.abstract_of[ambient.zero()] = Elem{};
    return s;
  }

  // relation lattice of the generator map Z^k -> ambient: x-parts of
  // ker [G | diag(orders)]
  IntMat b(static_cast<size_t>(r), std::vector<Int>(static_cast<size_t>(k + r), 0));
  for (Int i = 0; i < r; ++i) {
    for (Int j = 0; j < k; ++j) b[i][j] = gens[j][i];
    b[i][k + i] = ambient.order_of_factor(i);
  }
  SnfResult sb = snf(b, r, k + r);
  Int rank_b = 0;
  for (Int i = 0; i < std::min(r, k + r); ++i)
    if (sb.d[i][i] != 0) ++rank_b;
  std::vector<std::vector<Int>> rel_cols;
  for (Int j = rank_b; j < k + r; ++j) {
    std::vector<Int> col(static_cast<size_t>(k));
    for (Int i = 0; i < k; ++i) col[i] = sb.v[i][j];
    rel_cols.push_back(std::move(col));
  }
  const Int l = static_cast<Int>(rel_cols.size());
  IntMat relm(static_cast<size_t>(k), std::vector<Int>(static_cast<size_t>(l), 0));
  for (Int i = 0; i < k; ++i)
    for (Int j = 0; j < l; ++j) relm[i][j] = rel_cols[j][i];

  SnfResult sr = snf(relm, k, l);
  // abstract generator i corresponds to sum_j gens[j] * u_inv[j][i]
  std::vector<Int> orders;
  std::vector<Elem> basis;
  for (Int i = 0; i < k; ++i) {
    const Int di = i < std::min(k, l) ? sr.d[i][i] : 0;
    if (di == 1) continue;
    if (di == 0) throw internal_error("subgroup presentation has an infinite factor");
    Elem bas = ambient.zero();
    for (Int j = 0; j < k; ++j)
      bas = ambient.add(bas, ambient.scale(sr.u_inv[j][i], gens[j]));
    // canonical representative: least unit multiple spanning the same factor
    Elem best = bas;
    for (Int u = 2; u < di; ++u) {
      if (std::gcd(u, di) != 1) continue;
      Elem cand = ambient.scale(u, bas);
      if (cand < best) best = std::move(cand);
    }
    orders.push_back(di);
    basis.push_back(std::move(best));
  }

  s.group = Group(orders);
  s.basis = std::move(basis);
  IntMat emb(static_cast<size_t>(r), std::vector<Int>(s.basis.size(), 0));
  for (size_t j = 0; j < s.basis.size(); ++j)
    for (Int i = 0; i < r; ++i) emb[i][j] = s.basis[j][i];
  s.embed = Hom{s.group, ambient, std::move(emb)};

  for (const Elem& x : s.group.elements()) {
    const Elem img = s.embed.apply(x);
    if (!s.abstract_of.emplace(img, x).second)
      throw internal_error("subgroup basis does not generate freely");
  }
  if (s.abstract_of.size() != s.elements.size())
    throw internal_error("subgroup basis does not generate the element set");
  for (const Elem& e : s.elements)
    if (!s.abstract_of.count(e))
      throw internal_error("subgroup basis misses an element");
  return s;
}

Subgroup make_subgroup(const Group& ambient, const std::vector<Elem>& gens) {
  return subgroup_from_elements(ambient, generated_elements(ambient, gens));
}

Subgroup trivial_subgroup(const Group& g) {
  return subgroup_from_elements(g, {g.zero()});
}

Subgroup full_subgroup(const Group& g) { return subgroup_from_elements(g, g.elements()); }

std::vector<Subgroup> enumerate_subgroups(const Group& g, Int budget) {
  if (g.order() > budget)
    throw validation_error("group order " + std::to_string(g.order()) +
                           " exceeds the budget " + std::to_string(budget));
  const std::vector<Elem> all = g.elements();
  std::set<std::vector<Elem>> seen;
  std::vector<std::vector<Elem>> work;
  std::vector<Elem> triv = {g.zero()};
  seen.insert(triv);
  work.push_back(triv);
  while (!work.empty()) {
    std::vector<Elem> s = std::move(work.back());
    work.pop_back();
    for (const Elem& a : all) {
      if (std::binary_search(s.begin(), s.end(), a)) continue;
      std::vector<Elem> gens = s;
      gens.push_back(a);
      std::vector<Elem> t = generated_elements(g, gens);
      if (seen.insert(t).second) work.push_back(std::move(t));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (const auto& elems : seen) out.push_back(subgroup_from_elements(g, elems));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

QuotientResult quotient(const Group& g, const Subgroup& h) {
  if (h.ambient != g) throw validation_error("quotient: subgroup has a different ambient group");
  const Int r = g.rank();
  const Int k = static_cast<Int>(h.basis.size());
  IntMat rel(static_cast<size_t>(r), std::vector<Int>(static_cast<size_t>(r + k), 0));
  for (Int i = 0; i < r; ++i) {
    rel[i][i] = g.order_of_factor(i);
    for (Int j = 0; j < k; ++j) rel[i][r + j] = h.basis[j][i];
  }
  SnfResult s = snf(rel, r, r + k);
  std::vector<Int> orders;
  std::vector<Int> kept;
  for (Int i = 0; i < r; ++i) {
    const Int di = s.d[i][i];
    if (di == 0) throw internal_error("quotient presentation has an infinite factor");
    if (di > 1) {
      orders.push_back(di);
      kept.push_back(i);
    }
  }
  QuotientResult q;
  q.group = Group(orders);
  IntMat pm(kept.size(), std::vector<Int>(static_cast<size_t>(r), 0));
  for (size_t i = 0; i < kept.size(); ++i)
    for (Int j = 0; j < r; ++j) {
      const Int m = orders[i];
      pm[i][j] = (s.u[kept[i]][j] % m + m) % m;
    }
  q.proj = Hom{g, q.group, std::move(pm)};

  // kernel recomputed and compared against h
  Int kernel_size = 0;
  for (const Elem& e : h.elements)
    if (q.proj.apply(e) != q.group.zero())
      throw internal_error("quotient projection does not kill the subgroup");
  for (Int idx = 0; idx < g.order(); ++idx)
    if (q.proj.apply(g.element_at(idx)) == q.group.zero()) ++kernel_size;
  if (kernel_size != h.order())
    throw internal_error("quotient projection kernel differs from the subgroup");
  if (q.group.order() * h.order() != g.order())
    throw internal_error("quotient order mismatch");
  return q;
}

HomSolveResult solve_hom(const Hom& f, const Elem& t) {
  const Int rs = f.source.rank();
  const Int rt = f.target.rank();
  HomSolveResult res;

  // integer system [A | diag(target orders)] z = t
  IntMat b(static_cast<size_t>(rt), std::vector<Int>(static_cast<size_t>(rs + rt), 0));
  for (Int i = 0; i < rt; ++i) {
    for (Int j = 0; j < rs; ++j) b[i][j] = f.matrix[i][j];
    b[i][rs + i] = f.target.order_of_factor(i);
  }
  SnfResult s = snf(b, rt, rs + rt);

  std::vector<Wide> c(static_cast<size_t>(rt), 0);
  for (Int i = 0; i < rt; ++i)
    for (Int j = 0; j < rt; ++j) c[i] += static_cast<Wide>(s.u[i][j]) * t[j];
  std::vector<Wide> w(static_cast<size_t>(rs + rt), 0);
  bool ok = true;
  for (Int i = 0; i < rt; ++i) {
    const Int di = i < std::min(rt, rs + rt) ? s.d[i][i] : 0;
    if (di != 0) {
      if (c[i] % di != 0) {
        ok = false;
        break;
      }
      w[i] = c[i] / di;
    } else if (c[i] != 0) {
      ok = false;
      break;
    }
  }

  // kernel generators: x-parts of the free columns of V, plus nothing else
  // (reducing mod source orders realizes the source relations)
  Int rank = 0;
  for (Int i = 0; i < std::min(rt, rs + rt); ++i)
    if (s.d[i][i] != 0) ++rank;
  for (Int j = rank; j < rs + rt; ++j) {
    Elem k(static_cast<size_t>(rs), 0);
    for (Int i = 0; i < rs; ++i) k[i] = s.v[i][j];
    k = f.source.reduce(std::move(k));
    if (k != f.source.zero()) res.kernel_gens.push_back(std::move(k));
  }

  if (!ok) return res;

  Elem x0(static_cast<size_t>(rs), 0);
  for (Int i = 0; i < rs; ++i) {
    Wide acc = 0;
    for (Int j = 0; j < rs + rt; ++j) acc += static_cast<Wide>(s.v[i][j]) * w[j];
    const Int m = f.source.order_of_factor(i);
    x0[i] = static_cast<Int>((acc % m + m) % m);
  }

  // canonical choice: lexicographically least over the whole preimage coset
  Elem best = x0;
  for (const Elem& k : generated_elements(f.source, res.kernel_gens)) {
    Elem cand = f.source.add(x0, k);
    if (cand < best) best = cand;
  }
  res.ok = true;
  res.solution = std::move(best);
  return res;
}

}  // namespace tymod
