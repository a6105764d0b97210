#include "tymod/forms.hpp"

#include <algorithm>
#include <cmath>

namespace tymod {

Phase Bicharacter::eval(const Elem& x, const Elem& y) const {
  Phase p;
  for (Int i = 0; i < group.rank(); ++i) {
    if (x[i] == 0) continue;
    for (Int j = 0; j < group.rank(); ++j) {
      if (y[j] == 0) continue;
      p += b[i][j].times(x[i]).times(y[j]);
    }
  }
  return p;
}

Bicharacter zero_form(const Group& g) {
  return Bicharacter{g, std::vector<std::vector<Phase>>(
                            static_cast<size_t>(g.rank()),
                            std::vector<Phase>(static_cast<size_t>(g.rank())))};
}

std::optional<std::pair<Int, Int>> well_definedness_witness(const Bicharacter& f) {
  for (Int i = 0; i < f.group.rank(); ++i)
    for (Int j = 0; j < f.group.rank(); ++j) {
      const Phase& p = f.b[i][j];
      if (!p.times(f.group.order_of_factor(i)).is_zero() ||
          !p.times(f.group.order_of_factor(j)).is_zero())
        return std::make_pair(i, j);
    }
  return std::nullopt;
}

bool is_well_defined(const Bicharacter& f) { return !well_definedness_witness(f); }

bool is_symmetric(const Bicharacter& f) {
  for (Int i = 0; i < f.group.rank(); ++i)
    for (Int j = 0; j < f.group.rank(); ++j)
      if (f.b[i][j] != f.b[j][i]) return false;
  return true;
}

std::optional<std::pair<Elem, Elem>> symmetry_witness(const Bicharacter& f) {
  for (Int i = 0; i < f.group.rank(); ++i)
    for (Int j = 0; j < f.group.rank(); ++j)
      if (f.b[i][j] != f.b[j][i])
        return std::make_pair(f.group.generator(i), f.group.generator(j));
  return std::nullopt;
}

bool is_alternating(const Bicharacter& f) {
  for (Int i = 0; i < f.group.rank(); ++i) {
    if (!f.b[i][i].is_zero()) return false;
    for (Int j = i + 1; j < f.group.rank(); ++j)
      if (f.b[i][j] != -f.b[j][i]) return false;
  }
  return true;
}

Hom adjoint(const Bicharacter& f) {
  const Group& g = f.group;
  Hom h{g, dual_group(g),
        IntMat(static_cast<size_t>(g.rank()), std::vector<Int>(static_cast<size_t>(g.rank()), 0))};
  for (Int j = 0; j < g.rank(); ++j)
    for (Int i = 0; i < g.rank(); ++i) {
      // coordinate j of f(e_i, -): m_j * f(e_i, e_j)
      const Phase p = f.b[i][j].times(g.order_of_factor(j));
      if (!p.is_zero()) throw validation_error("form is not well defined on the generators");
      h.matrix[j][i] = (g.order_of_factor(j) / f.b[i][j].den()) * f.b[i][j].num() % g.order_of_factor(j);
    }
  return h;
}

std::optional<Elem> kernel_witness(const Bicharacter& f) {
  const Hom adj = adjoint(f);
  HomSolveResult s = solve_hom(adj, dual_group(f.group).zero());
  for (const Elem& k : s.kernel_gens)
    if (k != f.group.zero()) return k;
  return std::nullopt;
}

bool is_nondegenerate(const Bicharacter& f) { return !kernel_witness(f); }

Subgroup perp(const Bicharacter& chi, const Subgroup& s) {
  if (chi.group != s.ambient)
    throw validation_error("perp: form and subgroup live on different groups");
  std::vector<Elem> out;
  for (Int idx = 0; idx < chi.group.order(); ++idx) {
    Elem a = chi.group.element_at(idx);
    bool ok = true;
    for (const Elem& g : s.basis)
      if (!chi.eval(a, g).is_zero()) {
        ok = false;
        break;
      }
    if (ok) out.push_back(std::move(a));
  }
  return subgroup_from_elements(chi.group, std::move(out));
}

Bicharacter restrict_form(const Bicharacter& f, const Subgroup& h) {
  if (f.group != h.ambient)
    throw validation_error("restrict: form and subgroup live on different groups");
  const Int r = h.group.rank();
  Bicharacter out = zero_form(h.group);
  for (Int i = 0; i < r; ++i)
    for (Int j = 0; j < r; ++j) out.b[i][j] = f.eval(h.basis[i], h.basis[j]);
  return out;
}

DescendResult descend_form(const Bicharacter& f, const Subgroup& k) {
  if (f.group != k.ambient)
    throw validation_error("descend: form and subgroup live on different groups");
  const Subgroup rad = radical(f);
  for (const Elem& e : k.elements)
    if (!rad.contains(e))
      throw validation_error("descend: subgroup is not inside the radical of the form");

  DescendResult res;
  QuotientResult q = quotient(f.group, k);
  res.quotient = q.group;
  res.proj = q.proj;
  res.form = zero_form(q.group);
  // evaluate on arbitrary preimages; K <= radical makes this independent of
  // the choice
  std::vector<Elem> pre;
  for (Int i = 0; i < q.group.rank(); ++i) {
    HomSolveResult s = solve_hom(q.proj, q.group.generator(i));
    if (!s.ok) throw internal_error("descend: projection is not surjective");
    pre.push_back(s.solution);
  }
  for (Int i = 0; i < q.group.rank(); ++i)
    for (Int j = 0; j < q.group.rank(); ++j) {
      res.form.b[i][j] = f.eval(pre[i], pre[j]);
      if (!res.form.b[i][j].times(q.group.order_of_factor(i)).is_zero() ||
          !res.form.b[i][j].times(q.group.order_of_factor(j)).is_zero())
        throw internal_error("descend: induced form is not well defined");
    }
  return res;
}

Subgroup radical(const Bicharacter& f) {
  const Hom adj = adjoint(f);
  HomSolveResult s = solve_hom(adj, dual_group(f.group).zero());
  return make_subgroup(f.group, s.kernel_gens);
}

std::vector<Subgroup> lagrangians(const Group& a, const Bicharacter& chi) {
  if (!is_symmetric(chi)) throw validation_error("lagrangians: form is not symmetric");
  if (!is_nondegenerate(chi)) throw validation_error("lagrangians: form is degenerate");
  std::vector<Subgroup> out;
  for (Subgroup& s : enumerate_subgroups(a)) {
    if (same_subgroup(perp(chi, s), s)) out.push_back(std::move(s));
  }
  return out;
}

AlternatingForm alt_form(const BilinearCocycle& psi) {
  AlternatingForm out = zero_form(psi.group);
  for (Int i = 0; i < psi.group.rank(); ++i)
    for (Int j = 0; j < psi.group.rank(); ++j) out.b[i][j] = psi.b[i][j] - psi.b[j][i];
  return out;
}

BilinearCocycle standard_cocycle(const AlternatingForm& xi) {
  if (!is_alternating(xi)) throw validation_error("standard_cocycle: form is not alternating");
  BilinearCocycle out = zero_form(xi.group);
  for (Int i = 0; i < xi.group.rank(); ++i)
    for (Int j = i + 1; j < xi.group.rank(); ++j) out.b[i][j] = xi.b[i][j];
  return out;
}

std::vector<AlternatingForm> enumerate_alternating_forms(const Group& g) {
  const Int r = g.rank();
  std::vector<std::pair<Int, Int>> slots;  // upper-triangle positions
  std::vector<Int> gcds;
  for (Int i = 0; i < r; ++i)
    for (Int j = i + 1; j < r; ++j) {
      slots.emplace_back(i, j);
      gcds.push_back(std::gcd(g.order_of_factor(i), g.order_of_factor(j)));
    }
  std::vector<AlternatingForm> out;
  std::vector<Int> choice(slots.size(), 0);
  while (true) {
    AlternatingForm f = zero_form(g);
    for (size_t s = 0; s < slots.size(); ++s) {
      const Phase p(choice[s], gcds[s]);
      f.b[slots[s].first][slots[s].second] = p;
      f.b[slots[s].second][slots[s].first] = -p;
    }
    out.push_back(std::move(f));
    size_t s = slots.size();
    while (s-- > 0) {
      if (++choice[s] < gcds[s]) break;
      choice[s] = 0;
      if (s == 0) return out;
    }
    if (slots.empty()) return out;
  }
}

Phase nu_coboundary(const NuFunction& nu, const Elem& a, const Elem& b) {
  return nu.at(a) + nu.at(b) - nu.at(nu.domain.add(a, b));
}

namespace {

NuFunction solve_coboundary_impl(const Group& g,
                                 const std::function<Phase(const Elem&, const Elem&)>& f,
                                 bool check_cocycle) {
  const Int n = g.order();
  const std::vector<Elem> elems = g.elements();

  if (!f(g.zero(), g.zero()).is_zero())
    throw validation_error("solve_coboundary: cocycle is not normalized at (0,0)");
  for (Int i = 0; i < n; ++i)
    for (Int j = i; j < n; ++j)
      if (f(elems[i], elems[j]) != f(elems[j], elems[i]))
        throw validation_error(
            "solve_coboundary: nonzero alternating part at a = " /* witness */ +
            std::to_string(i) + ", b = " + std::to_string(j));
  if (check_cocycle) {
    for (Int i = 0; i < n; ++i)
      for (Int j = 0; j < n; ++j)
        for (Int k = 0; k < n; ++k) {
          const Elem& a = elems[i];
          const Elem& b = elems[j];
          const Elem& c = elems[k];
          if (f(a, b) + f(g.add(a, b), c) != f(b, c) + f(a, g.add(b, c)))
            throw validation_error("solve_coboundary: input violates the 2-cocycle identity");
        }
  }

  if (n == 1) return NuFunction{g, {Phase()}};

  Int lcm_den = 1;
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < n; ++j) lcm_den = std::lcm(lcm_den, f(elems[i], elems[j]).den());
  const Int big = 2 * n * lcm_den;

  // generator equations delta(nu)(a, e_k) = f(a, e_k); the cocycle identity
  // implies the rest
  const Int vars = n - 1;  // nu(0) = 0 fixed
  std::vector<std::vector<Int>> lhs;
  std::vector<Int> rhs;
  for (Int i = 1; i < n; ++i)
    for (Int kgen = 0; kgen < g.rank(); ++kgen) {
      const Elem ek = g.generator(kgen);
      const Elem sum = g.add(elems[i], ek);
      std::vector<Int> row(static_cast<size_t>(vars), 0);
      row[i - 1] += 1;
      const Int ek_idx = g.index_of(ek);
      if (ek_idx != 0) row[ek_idx - 1] += 1;
      const Int sum_idx = g.index_of(sum);
      if (sum_idx != 0) row[sum_idx - 1] -= 1;
      const Phase val = f(elems[i], ek);
      rhs.push_back(big / val.den() * val.num());
      lhs.push_back(std::move(row));
    }
  const Int eqs = static_cast<Int>(lhs.size());
  IntMat b(static_cast<size_t>(eqs), std::vector<Int>(static_cast<size_t>(vars + eqs), 0));
  for (Int i = 0; i < eqs; ++i) {
    for (Int j = 0; j < vars; ++j) b[i][j] = lhs[i][j];
    b[i][vars + i] = big;
  }
  SnfResult s = snf(b, eqs, vars + eqs);
  std::vector<__int128> c(static_cast<size_t>(eqs), 0);
  for (Int i = 0; i < eqs; ++i)
    for (Int j = 0; j < eqs; ++j) c[i] += static_cast<__int128>(s.u[i][j]) * rhs[j];
  std::vector<__int128> w(static_cast<size_t>(vars + eqs), 0);
  for (Int i = 0; i < eqs; ++i) {
    const Int di = i < std::min(eqs, vars + eqs) ? s.d[i][i] : 0;
    if (di != 0) {
      if (c[i] % di != 0)
        throw internal_error("solve_coboundary: validated input has no solution");
      w[i] = c[i] / di;
    } else if (c[i] != 0) {
      throw internal_error("solve_coboundary: validated input has no solution");
    }
  }

  NuFunction nu{g, std::vector<Phase>(static_cast<size_t>(n))};
  for (Int i = 0; i < vars; ++i) {
    __int128 acc = 0;
    for (Int j = 0; j < vars + eqs; ++j) acc += static_cast<__int128>(s.v[i][j]) * w[j];
    const Int residue = static_cast<Int>((acc % big + big) % big);
    nu.table[static_cast<size_t>(i + 1)] = Phase(residue, big);
  }

  // exact verification of the full coboundary equation
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < n; ++j)
      if (nu_coboundary(nu, elems[i], elems[j]) != f(elems[i], elems[j]))
        throw internal_error("solve_coboundary: solution fails verification");

  // canonical choice: lexicographically least over nu + (characters of g)
  NuFunction best = nu;
  for (Int li = 0; li < n; ++li) {
    const Elem lambda = g.element_at(li);
    NuFunction cand{g, std::vector<Phase>(static_cast<size_t>(n))};
    for (Int i = 0; i < n; ++i)
      cand.table[static_cast<size_t>(i)] = nu.table[static_cast<size_t>(i)] + char_eval(g, lambda, elems[i]);
    if (std::lexicographical_compare(cand.table.begin(), cand.table.end(),
                                     best.table.begin(), best.table.end()))
      best = std::move(cand);
  }
  return best;
}

}  // namespace

NuFunction solve_coboundary(const Group& g,
                            const std::function<Phase(const Elem&, const Elem&)>& f) {
  return solve_coboundary_impl(g, f, /*check_cocycle=*/true);
}

NuFunction solve_coboundary(const Bicharacter& f) {
  if (auto w = well_definedness_witness(f))
    throw validation_error("solve_coboundary: form entry (" + std::to_string(w->first) +
                           "," + std::to_string(w->second) + ") is not well defined");
  // bilinear maps satisfy the cocycle identity structurally
  return solve_coboundary_impl(
      f.group, [&f](const Elem& a, const Elem& b) { return f.eval(a, b); },
      /*check_cocycle=*/false);
}

int gauss_sign(const std::vector<Phase>& values) {
  constexpr double kPi2 = 6.283185307179586476925286766559;
  double re = 0.0, im = 0.0;
  for (const Phase& p : values) {
    re += std::cos(kPi2 * p.value());
    im += std::sin(kPi2 * p.value());
  }
  if (std::abs(im) >= 1e-9)
    throw internal_error("gauss_sign: sum is not real (invalid quadratic data)");
  const double target = std::sqrt(static_cast<double>(values.size()));
  if (std::abs(std::abs(re) - target) >= 1e-9)
    throw internal_error("gauss_sign: |sum| differs from sqrt(n) (invalid quadratic data)");
  return re > 0 ? +1 : -1;
}

}  // namespace tymod
