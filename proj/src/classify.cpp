#include "tymod/classify.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace tymod {

namespace {

bool form_matrix_less(const std::vector<std::vector<Phase>>& a,
                      const std::vector<std::vector<Phase>>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) {
      if (a[i][j] < b[i][j]) return true;
      if (b[i][j] < a[i][j]) return false;
    }
  return false;
}

// character of H given by h |-> f(a, embed(h)), as an element of dual(H)
Elem char_coords_on_subgroup(const Bicharacter& f, const Elem& a, const Subgroup& h) {
  Elem c(static_cast<size_t>(h.group.rank()), 0);
  for (Int l = 0; l < h.group.rank(); ++l) {
    const Int m = h.group.order_of_factor(l);
    const Phase q = f.eval(a, h.basis[static_cast<size_t>(l)]);
    if (!q.times(m).is_zero())
      throw internal_error("character coordinates: value not killed by the generator order");
    c[static_cast<size_t>(l)] = (m / q.den()) * q.num() % m;
  }
  return c;
}

Elem phase_char_coords(const Group& g, const std::vector<Phase>& values_on_gens) {
  Elem c(static_cast<size_t>(g.rank()), 0);
  for (Int l = 0; l < g.rank(); ++l) {
    const Int m = g.order_of_factor(l);
    const Phase q = values_on_gens[static_cast<size_t>(l)];
    if (!q.times(m).is_zero())
      throw internal_error("character coordinates: value not killed by the generator order");
    c[static_cast<size_t>(l)] = (m / q.den()) * q.num() % m;
  }
  return c;
}

}  // namespace

bool operator==(const VecAPair& a, const VecAPair& b) {
  return same_subgroup(a.h, b.h) && a.xi.b == b.xi.b;
}

bool pair_less(const VecAPair& a, const VecAPair& b) {
  if (a.h.order() != b.h.order()) return a.h.order() < b.h.order();
  if (a.h.elements != b.h.elements) return a.h.elements < b.h.elements;
  if (form_matrix_less(a.xi.b, b.xi.b)) return true;
  return false;
}

std::vector<VecAPair> enumerate_pairs(const Group& a, Int budget) {
  std::vector<VecAPair> out;
  for (Subgroup& h : enumerate_subgroups(a, budget)) {
    for (AlternatingForm& xi : enumerate_alternating_forms(h.group))
      out.push_back(VecAPair{h, std::move(xi)});
  }
  std::sort(out.begin(), out.end(), pair_less);
  return out;
}

TMap t_map(const TYData& ty, const VecAPair& pair) {
  TMap tm;
  const Subgroup rad = radical(pair.xi);  // inside pair.h.group
  std::vector<Elem> rad_amb;
  for (const Elem& e : rad.elements) rad_amb.push_back(pair.h.from_abstract(e));
  const Subgroup rad_in_a = subgroup_from_elements(ty.a, std::move(rad_amb));
  tm.domain = perp(ty.chi, rad_in_a);

  const Hom adj = adjoint(pair.xi);
  for (const Elem& a : tm.domain.elements) {
    const Elem target = char_coords_on_subgroup(ty.chi, a, pair.h);
    HomSolveResult s = solve_hom(adj, target);
    if (!s.ok)
      throw internal_error(
          "t_map: chi(a,-) restricted to H is not realized by the alternating form "
          "(inconsistent pair data)");
    tm.t.emplace(a, std::move(s.solution));
  }
  return tm;
}

VecAPair sigma_act(const TYData& ty, const VecAPair& pair) {
  TMap tm = t_map(ty, pair);
  VecAPair out;
  out.h = tm.domain;
  out.xi = zero_form(out.h.group);
  // xi'(a,b) = psi~(a,b) - psi~(b,a) = xi(t_b, t_a)
  const Int r = out.h.group.rank();
  for (Int i = 0; i < r; ++i)
    for (Int j = 0; j < r; ++j) {
      const Elem& ti = tm.t.at(out.h.basis[static_cast<size_t>(i)]);
      const Elem& tj = tm.t.at(out.h.basis[static_cast<size_t>(j)]);
      out.xi.b[i][j] = pair.xi.eval(tj, ti);
    }
  if (!is_well_defined(out.xi) || !is_alternating(out.xi))
    throw internal_error("sigma_act: image form is not a well-defined alternating form");
  return out;
}

std::optional<FixedPairData> is_sigma_fixed(const TYData& ty, const VecAPair& pair) {
  FixedPairData fx;
  fx.hperp = perp(ty.chi, pair.h);
  for (const Elem& e : fx.hperp.elements)
    if (!pair.h.contains(e)) return std::nullopt;  // (i) fails

  const Subgroup rad = radical(pair.xi);
  std::vector<Elem> rad_amb;
  for (const Elem& e : rad.elements) rad_amb.push_back(pair.h.from_abstract(e));
  std::sort(rad_amb.begin(), rad_amb.end());
  if (rad_amb != fx.hperp.elements) return std::nullopt;  // (ii) fails

  std::vector<Elem> pp;
  for (const Elem& e : fx.hperp.elements) pp.push_back(pair.h.to_abstract(e));
  fx.hperp_in_h = subgroup_from_elements(pair.h.group, std::move(pp));

  DescendResult dx = descend_form(pair.xi, fx.hperp_in_h);
  const Bicharacter chi_h = restrict_form(ty.chi, pair.h);
  DescendResult dc = descend_form(chi_h, fx.hperp_in_h);
  if (dx.quotient != dc.quotient || dx.proj.matrix != dc.proj.matrix)
    throw internal_error("is_sigma_fixed: inconsistent quotient presentations");
  fx.hbar = dx.quotient;
  fx.proj = dx.proj;
  fx.xi_bar = std::move(dx.form);
  fx.chi_bar = std::move(dc.form);
  if (!is_nondegenerate(fx.xi_bar))
    throw internal_error("is_sigma_fixed: descended alternating form is degenerate");
  if (!is_nondegenerate(fx.chi_bar))
    throw internal_error("is_sigma_fixed: descended bicharacter is degenerate");

  // unique s with xi_bar(s(a), b) = chi_bar(a, b)
  const Hom adjx = adjoint(fx.xi_bar);
  const Hom adjc = adjoint(fx.chi_bar);
  const Int r = fx.hbar.rank();
  IntMat smat(static_cast<size_t>(r), std::vector<Int>(static_cast<size_t>(r), 0));
  for (Int k = 0; k < r; ++k) {
    HomSolveResult sol = solve_hom(adjx, adjc.apply(fx.hbar.generator(k)));
    if (!sol.ok)
      throw internal_error("is_sigma_fixed: nondegenerate adjoint is not surjective");
    for (Int i = 0; i < r; ++i) smat[i][k] = sol.solution[static_cast<size_t>(i)];
  }
  fx.s = Hom{fx.hbar, fx.hbar, std::move(smat)};
  if (!fx.s.compose(fx.s).is_identity()) return std::nullopt;  // (iii) fails
  return fx;
}

NuSolveResult solve_nu(const TYData& ty, const VecAPair& pair, const FixedPairData& fx,
                       const NuFunction* nu0_override) {
  (void)pair;
  NuSolveResult res;
  const Group& hbar = fx.hbar;
  const Int n = hbar.order();
  const std::vector<Elem> elems = hbar.elements();

  const BilinearCocycle psi_bar = standard_cocycle(fx.xi_bar);
  // f(a,b) = psi(a,b) - psi(s(b), s(a)); bilinear since s is linear
  Bicharacter f = zero_form(hbar);
  for (Int i = 0; i < hbar.rank(); ++i)
    for (Int j = 0; j < hbar.rank(); ++j) {
      const Elem ei = hbar.generator(i);
      const Elem ej = hbar.generator(j);
      f.b[i][j] = psi_bar.eval(ei, ej) - psi_bar.eval(fx.s.apply(ej), fx.s.apply(ei));
    }
  if (!is_well_defined(f) || !is_symmetric(f))
    throw internal_error("solve_nu: twisted coboundary datum is not a symmetric form");

  res.nu0 = nu0_override ? *nu0_override : solve_coboundary(f);
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < n; ++j)
      if (nu_coboundary(res.nu0, elems[i], elems[j]) != f.eval(elems[i], elems[j]))
        throw internal_error("solve_nu: particular solution fails the coboundary equation");

  // g(a) = nu0(a) + nu0(s(a)) must be a character
  std::vector<Phase> g_table(static_cast<size_t>(n));
  for (Int i = 0; i < n; ++i)
    g_table[static_cast<size_t>(i)] = res.nu0.at_index(i) + res.nu0.at(fx.s.apply(elems[i]));
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < n; ++j) {
      const Int k = hbar.index_of(hbar.add(elems[i], elems[j]));
      if (g_table[static_cast<size_t>(i)] + g_table[static_cast<size_t>(j)] !=
          g_table[static_cast<size_t>(k)])
        throw internal_error("solve_nu: nu0(a) + nu0(s(a)) is not additive");
    }
  std::vector<Phase> g_on_gens;
  for (Int l = 0; l < hbar.rank(); ++l)
    g_on_gens.push_back(g_table[static_cast<size_t>(hbar.index_of(hbar.generator(l)))]);
  const Group hdual = dual_group(hbar);
  const Elem g_coords = phase_char_coords(hbar, g_on_gens);

  // the second condition nu(a) + nu(s(a)) = 0 reads lambda((1+s)a) = -g(a)
  IntMat tmat = identity_mat(hbar.rank());
  for (Int i = 0; i < hbar.rank(); ++i)
    for (Int j = 0; j < hbar.rank(); ++j) tmat[i][j] += fx.s.matrix[i][j];
  const Hom t_plus{hbar, hbar, tmat};
  const Hom t_star = dual_hom(t_plus);
  HomSolveResult constraint = solve_hom(t_star, hdual.neg(g_coords));

  // fixed points and the descended torsor hbar^s / hbar_s
  std::vector<Elem> fixed_elems;
  std::vector<Elem> hs_elems;
  for (Int i = 0; i < n; ++i) {
    const Elem img = fx.s.apply(elems[i]);
    if (img == elems[i]) fixed_elems.push_back(elems[i]);
    hs_elems.push_back(hbar.add(elems[i], img));
  }
  const Subgroup fixed_sub = subgroup_from_elements(hbar, std::move(fixed_elems));
  std::sort(hs_elems.begin(), hs_elems.end());
  hs_elems.erase(std::unique(hs_elems.begin(), hs_elems.end()), hs_elems.end());
  const Subgroup hbar_s = subgroup_from_elements(hbar, hs_elems);
  res.fixed_point_count = fixed_sub.order();
  res.hbar_s_size = hbar_s.order();

  std::vector<Elem> hs_in_fixed;
  for (const Elem& e : hbar_s.elements) hs_in_fixed.push_back(fixed_sub.to_abstract(e));
  const Subgroup hs_sub_f = subgroup_from_elements(fixed_sub.group, std::move(hs_in_fixed));
  const QuotientResult vq = quotient(fixed_sub.group, hs_sub_f);
  const Group& v = vq.group;
  const std::vector<Elem> v_elems = v.elements();

  if (!constraint.ok) {
    res.presign_solvable = false;
    return res;
  }
  res.presign_solvable = true;

  const std::vector<Elem> ann = generated_elements(hdual, constraint.kernel_gens);
  res.torsor_size = static_cast<Int>(ann.size());

  IntMat wmat = identity_mat(hbar.rank());
  for (Int i = 0; i < hbar.rank(); ++i)
    for (Int j = 0; j < hbar.rank(); ++j) wmat[i][j] -= fx.s.matrix[i][j];
  const Hom w_minus{hbar, hbar, wmat};
  const Hom w_star = dual_hom(w_minus);
  std::vector<Elem> eq_gens;
  for (Int l = 0; l < hdual.rank(); ++l)
    eq_gens.push_back(w_star.apply(hdual.generator(l)));
  const std::vector<Elem> eq_elems = generated_elements(hdual, eq_gens);
  res.equivalence_subgroup_size = static_cast<Int>(eq_elems.size());
  for (const Elem& q : eq_elems)
    if (t_star.apply(q) != hdual.zero())
      throw internal_error("solve_nu: equivalence subgroup escapes the constraint kernel");

  auto nu_table_for = [&](const Elem& lambda) {
    std::vector<Phase> t(static_cast<size_t>(n));
    for (Int i = 0; i < n; ++i)
      t[static_cast<size_t>(i)] = res.nu0.at_index(i) + char_eval(hbar, lambda, elems[i]);
    return t;
  };

  std::set<Elem> seen;
  for (const Elem& k : ann) {
    const Elem lambda = hdual.add(constraint.solution, k);
    if (seen.count(lambda)) continue;
    std::vector<Phase> best;
    for (const Elem& q : eq_elems) {
      const Elem member = hdual.add(lambda, q);
      seen.insert(member);
      std::vector<Phase> t = nu_table_for(member);
      if (best.empty() || std::lexicographical_compare(t.begin(), t.end(),
                                                       best.begin(), best.end()))
        best = std::move(t);
    }

    NuClass cls;
    cls.rep = NuFunction{hbar, std::move(best)};
    // exact re-check of the defining conditions on the representative
    for (Int i = 0; i < n; ++i) {
      if (!(cls.rep.at_index(i) + cls.rep.at(fx.s.apply(elems[i]))).is_zero())
        throw internal_error("solve_nu: class member violates nu(a) + nu(s(a)) = 0");
      for (Int j = 0; j < n; ++j)
        if (nu_coboundary(cls.rep, elems[i], elems[j]) != f.eval(elems[i], elems[j]))
          throw internal_error("solve_nu: class member violates the coboundary equation");
    }

    // descend nu|_{hbar^s} to V; members of one class agree there
    cls.mu.resize(v_elems.size());
    for (size_t w = 0; w < v_elems.size(); ++w) {
      bool have = false;
      Phase val;
      for (const Elem& xf : fixed_sub.group.elements()) {
        if (vq.proj.apply(xf) != v_elems[w]) continue;
        const Phase p = cls.rep.at(fixed_sub.from_abstract(xf));
        if (!have) {
          val = p;
          have = true;
        } else if (p != val) {
          throw internal_error("solve_nu: nu is not constant on hbar_s cosets");
        }
      }
      if (!have) throw internal_error("solve_nu: quotient projection misses a class");
      if (!(val + val).is_zero())
        throw internal_error("solve_nu: descended refinement is not 2-torsion");
      cls.mu[w] = val;
    }
    cls.sign = gauss_sign(cls.mu);
    res.classes.push_back(std::move(cls));
  }

  std::sort(res.classes.begin(), res.classes.end(), [](const NuClass& a, const NuClass& b) {
    return std::lexicographical_compare(a.rep.table.begin(), a.rep.table.end(),
                                        b.rep.table.begin(), b.rep.table.end());
  });
  for (const NuClass& c : res.classes)
    if (c.sign == ty.tau) res.admissible.push_back(c);
  return res;
}

std::pair<Elem, Elem> EGroup::canonical(const Elem& a_elem, const Elem& lambda) const {
  // representative = the lexicographically least element of the coset a_elem + H
  const Elem a_red = a.reduce(a_elem);
  for (const Elem& rep : coset_reps) {
    if (!h.contains(a.sub(a_red, rep))) continue;
    const Elem h_abs = h.to_abstract(a.sub(a_red, rep));
    const Elem lam = hdual.add(hdual.reduce(lambda), adj_xi.apply(h_abs));
    return {rep, lam};
  }
  throw internal_error("e_group: no coset representative found");
}

std::pair<Elem, Elem> EGroup::add(const std::pair<Elem, Elem>& x,
                                  const std::pair<Elem, Elem>& y) const {
  return canonical(a.add(x.first, y.first), hdual.add(x.second, y.second));
}

Int EGroup::index_of(const std::pair<Elem, Elem>& x) const {
  const auto it = std::lower_bound(
      elements.begin(), elements.end(), x,
      [](const std::pair<Elem, Elem>& p, const std::pair<Elem, Elem>& q) { return p < q; });
  if (it == elements.end() || *it != x) throw internal_error("e_group: element not found");
  return static_cast<Int>(it - elements.begin());
}

EGroup e_group(const TYData& ty, const VecAPair& pair) {
  EGroup e;
  e.a = ty.a;
  e.h = pair.h;
  e.xi = pair.xi;
  e.hdual = dual_group(pair.h.group);
  e.adj_xi = adjoint(pair.xi);

  std::vector<bool> taken(static_cast<size_t>(ty.a.order()), false);
  for (Int i = 0; i < ty.a.order(); ++i) {
    if (taken[static_cast<size_t>(i)]) continue;
    const Elem rep = ty.a.element_at(i);
    e.coset_reps.push_back(rep);
    for (const Elem& hh : pair.h.elements)
      taken[static_cast<size_t>(ty.a.index_of(ty.a.add(rep, hh)))] = true;
  }

  for (const Elem& rep : e.coset_reps)
    for (Int l = 0; l < e.hdual.order(); ++l)
      e.elements.emplace_back(rep, e.hdual.element_at(l));
  std::sort(e.elements.begin(), e.elements.end());
  if (static_cast<Int>(e.elements.size()) != ty.a.order())
    throw internal_error("e_group: element count differs from |A|");

  // invariant factors of (A + dual(H)) / <(h, -xi(h,-))>
  const Int ra = ty.a.rank();
  const Int rh = pair.h.group.rank();
  const Hom& adj = e.adj_xi;
  IntMat rel(static_cast<size_t>(ra + rh),
             std::vector<Int>(static_cast<size_t>(ra + rh + rh), 0));
  for (Int i = 0; i < ra; ++i) rel[i][i] = ty.a.order_of_factor(i);
  for (Int i = 0; i < rh; ++i) rel[ra + i][ra + i] = pair.h.group.order_of_factor(i);
  for (Int l = 0; l < rh; ++l) {
    const Elem ha = pair.h.basis[static_cast<size_t>(l)];
    const Elem xil = adj.apply(pair.h.group.generator(l));
    for (Int i = 0; i < ra; ++i) rel[i][ra + rh + l] = ha[static_cast<size_t>(i)];
    for (Int i = 0; i < rh; ++i) rel[ra + i][ra + rh + l] = -xil[static_cast<size_t>(i)];
  }
  SnfResult s = snf(rel, ra + rh, ra + rh + rh);
  Int prod = 1;
  for (Int i = 0; i < ra + rh; ++i) {
    const Int di = s.d[i][i];
    if (di == 0) throw internal_error("e_group: presentation has an infinite factor");
    if (di > 1) e.snf_type.push_back(di);
    prod *= di;
  }
  if (prod != ty.a.order())
    throw internal_error("e_group: |E| differs from |A| in the presentation");
  return e;
}

SigmaOnE sigma_on_e(const TYData& ty, const VecAPair& pair, const FixedPairData& fx,
                    const EGroup& e, const NuFunction& nu0) {
  SigmaOnE out;
  const TMap tm = t_map(ty, pair);
  // Rad(xi)^perp = (H^perp)^perp = H for a sigma-fixed pair
  if (!same_subgroup(tm.domain, pair.h))
    throw internal_error("sigma_on_e: t map is not total on H for a sigma-fixed pair");

  // per-representative character values on H^perp, for locating the target coset
  std::vector<Elem> hperp_abs;
  for (const Elem& x : fx.hperp.elements) hperp_abs.push_back(pair.h.to_abstract(x));

  auto find_partner = [&](const Elem& lambda) {
    Int found = -1;
    for (size_t j = 0; j < e.coset_reps.size(); ++j) {
      bool match = true;
      for (size_t x = 0; x < hperp_abs.size(); ++x) {
        const Phase lhs = ty.chi.eval(e.coset_reps[j], fx.hperp.elements[x]);
        const Phase rhs = -char_eval(pair.h.group, lambda, hperp_abs[x]);
        if (lhs != rhs) {
          match = false;
          break;
        }
      }
      if (match) {
        if (found >= 0) throw internal_error("sigma_on_e: target coset is not unique");
        found = static_cast<Int>(j);
      }
    }
    if (found < 0) throw internal_error("sigma_on_e: no target coset matches the character");
    return found;
  };

  auto build_action = [&](bool alternate) {
    std::vector<Int> action(e.elements.size());
    for (size_t idx = 0; idx < e.elements.size(); ++idx) {
      const Elem& rep_i = e.elements[idx].first;
      const Elem& lambda = e.elements[idx].second;
      const Elem& rep_j = e.coset_reps[static_cast<size_t>(find_partner(lambda))];
      std::vector<Phase> mu_vals;
      for (Int l = 0; l < pair.h.group.rank(); ++l) {
        const Elem f_l_amb = pair.h.basis[static_cast<size_t>(l)];
        const Elem t_l = tm.t.at(f_l_amb);
        const Elem t_l_amb = pair.h.from_abstract(t_l);
        const Elem& last_rep = alternate ? rep_i : rep_j;
        mu_vals.push_back(-ty.chi.eval(rep_i, f_l_amb) +
                          char_eval(pair.h.group, lambda, t_l) +
                          ty.chi.eval(last_rep, t_l_amb));
      }
      const Elem mu = phase_char_coords(pair.h.group, mu_vals);
      action[idx] = e.index_of(e.canonical(rep_j, mu));
    }
    return action;
  };

  auto is_involution = [&](const std::vector<Int>& action) {
    for (size_t idx = 0; idx < action.size(); ++idx)
      if (action[static_cast<size_t>(action[idx])] != static_cast<Int>(idx)) return false;
    return true;
  };

  out.action = build_action(false);
  if (!is_involution(out.action)) {
    std::vector<Int> alt = build_action(true);
    if (!is_involution(alt))
      throw internal_error(
          "sigma_on_e: the action is not an involution under either conjugation formula");
    out.action = std::move(alt);
    out.alternate_formula = true;
  }

  // additivity on a generating set implies additivity everywhere
  std::vector<std::pair<Elem, Elem>> gens;
  for (Int k = 0; k < ty.a.rank(); ++k)
    gens.push_back(e.canonical(ty.a.generator(k), e.hdual.zero()));
  for (Int l = 0; l < e.hdual.rank(); ++l)
    gens.push_back(e.canonical(ty.a.zero(), e.hdual.generator(l)));
  for (const auto& g : gens) {
    const Int gi = e.index_of(g);
    for (size_t idx = 0; idx < e.elements.size(); ++idx) {
      const Int lhs = out.action[static_cast<size_t>(e.index_of(e.add(g, e.elements[idx])))];
      const Int rhs = e.index_of(e.add(e.elements[static_cast<size_t>(out.action[gi])],
                                       e.elements[static_cast<size_t>(out.action[idx])]));
      if (lhs != rhs) throw internal_error("sigma_on_e: action is not additive");
    }
  }

  // obstruction: the character h |-> nu0(h) + nu0(t_h), as an element of E
  std::vector<Phase> obs_vals;
  for (Int l = 0; l < pair.h.group.rank(); ++l) {
    const Elem f_l = pair.h.group.generator(l);
    const Elem t_l = tm.t.at(pair.h.basis[static_cast<size_t>(l)]);
    obs_vals.push_back(nu0.at(fx.proj.apply(f_l)) + nu0.at(fx.proj.apply(t_l)));
  }
  const Elem obs_char = phase_char_coords(pair.h.group, obs_vals);
  const auto obs_elem = e.canonical(ty.a.zero(), obs_char);
  out.obstruction_index = e.index_of(obs_elem);
  if (out.action[static_cast<size_t>(out.obstruction_index)] != out.obstruction_index)
    throw internal_error("sigma_on_e: obstruction element is not sigma-fixed");
  out.obstruction_trivial = false;
  for (size_t idx = 0; idx < e.elements.size(); ++idx) {
    const auto norm = e.add(e.elements[idx], e.elements[static_cast<size_t>(out.action[idx])]);
    if (e.index_of(norm) == out.obstruction_index) {
      out.obstruction_trivial = true;
      break;
    }
  }
  return out;
}

TambaraData tambara_cross_check(const TYData& ty, const VecAPair& pair,
                                const FixedPairData& fx) {
  (void)pair;
  TambaraData out;
  const Group& hbar = fx.hbar;
  std::vector<Elem> fixed_elems;
  std::vector<Elem> hs_elems;
  for (Int i = 0; i < hbar.order(); ++i) {
    const Elem x = hbar.element_at(i);
    const Elem img = fx.s.apply(x);
    if (img == x) fixed_elems.push_back(x);
    hs_elems.push_back(hbar.add(x, img));
  }
  const Subgroup fixed_sub = subgroup_from_elements(hbar, std::move(fixed_elems));
  std::sort(hs_elems.begin(), hs_elems.end());
  hs_elems.erase(std::unique(hs_elems.begin(), hs_elems.end()), hs_elems.end());
  const Subgroup hbar_s = subgroup_from_elements(hbar, hs_elems);

  // chi_bar must kill hbar^s x hbar_s for the induced form to be well defined
  for (const Elem& xf : fixed_sub.elements)
    for (const Elem& xs : hbar_s.elements)
      if (!fx.chi_bar.eval(xf, xs).is_zero())
        throw internal_error("tambara_cross_check: induced form is not well defined");

  std::vector<Elem> hs_in_fixed;
  for (const Elem& e : hbar_s.elements) hs_in_fixed.push_back(fixed_sub.to_abstract(e));
  const QuotientResult vq =
      quotient(fixed_sub.group, subgroup_from_elements(fixed_sub.group, hs_in_fixed));
  out.v = vq.group;
  for (Int l = 0; l < out.v.rank(); ++l)
    if (out.v.order_of_factor(l) != 2)
      throw internal_error("tambara_cross_check: hbar^s / hbar_s is not elementary abelian of exponent 2");

  // induced form on V through chosen lifts
  std::vector<Elem> lifts;  // in hbar
  for (Int l = 0; l < out.v.rank(); ++l) {
    HomSolveResult s = solve_hom(vq.proj, out.v.generator(l));
    if (!s.ok) throw internal_error("tambara_cross_check: projection not surjective");
    lifts.push_back(fixed_sub.from_abstract(s.solution));
  }
  out.chi_tilde = zero_form(out.v);
  for (Int i = 0; i < out.v.rank(); ++i)
    for (Int j = 0; j < out.v.rank(); ++j)
      out.chi_tilde.b[i][j] = fx.chi_bar.eval(lifts[static_cast<size_t>(i)],
                                              lifts[static_cast<size_t>(j)]);
  if (!is_well_defined(out.chi_tilde) || !is_symmetric(out.chi_tilde))
    throw internal_error("tambara_cross_check: induced form is not a symmetric form on V");
  for (Int i = 0; i < out.v.rank(); ++i)
    if (!out.chi_tilde.b[i][i].is_zero())
      throw internal_error("tambara_cross_check: induced form has a nonzero diagonal");
  if (!is_nondegenerate(out.chi_tilde))
    throw internal_error("tambara_cross_check: induced form on V is degenerate");

  // quadratic refinements mu with mu(a)+mu(b)-mu(a+b) = chi_tilde(a,b):
  // one explicit refinement plus the character torsor
  const std::vector<Elem> v_elems = out.v.elements();
  std::vector<Phase> mu0(v_elems.size());
  for (size_t i = 0; i < v_elems.size(); ++i) {
    Phase q;
    for (Int a = 0; a < out.v.rank(); ++a)
      for (Int b = a + 1; b < out.v.rank(); ++b)
        q += out.chi_tilde.b[a][b].times(v_elems[i][static_cast<size_t>(a)] *
                                         v_elems[i][static_cast<size_t>(b)]);
    mu0[i] = q;
  }
  const Group vdual = dual_group(out.v);
  for (Int li = 0; li < vdual.order(); ++li) {
    const Elem lambda = vdual.element_at(li);
    std::vector<Phase> mu(v_elems.size());
    for (size_t i = 0; i < v_elems.size(); ++i)
      mu[i] = mu0[i] + char_eval(out.v, lambda, v_elems[i]);
    for (size_t i = 0; i < v_elems.size(); ++i)
      for (size_t j = 0; j < v_elems.size(); ++j) {
        const size_t k = static_cast<size_t>(out.v.index_of(out.v.add(v_elems[i], v_elems[j])));
        if (mu[i] + mu[j] - mu[k] != out.chi_tilde.eval(v_elems[i], v_elems[j]))
          throw internal_error("tambara_cross_check: refinement fails its defining equation");
      }
    ++out.refinement_count;
    if (gauss_sign(mu) == ty.tau) ++out.sign_matched;
  }
  return out;
}

DualReportData dual_report(const TYData& ty, const VecAPair& pair) {
  DualReportData out;
  out.e_type = e_group(ty, pair).snf_type;
  out.dual_pointed = is_sigma_fixed(ty, pair).has_value();
  return out;
}

GroupTheoreticity is_group_theoretical(const TYData& ty, Int budget) {
  GroupTheoreticity out;
  out.witnesses = lagrangians(ty.a, ty.chi);
  out.value = !out.witnesses.empty();
  bool any_fixed = false;
  for (const VecAPair& pair : enumerate_pairs(ty.a, budget))
    if (is_sigma_fixed(ty, pair)) {
      any_fixed = true;
      break;
    }
  if (any_fixed != out.value)
    throw internal_error(
        "is_group_theoretical: Lagrangian existence and sigma-fixed-pair existence disagree");
  return out;
}

namespace {

struct PairWork {
  VecAPair image;
  std::optional<FixedPairData> fx;
  std::optional<NuSolveResult> nu;
  std::optional<TambaraData> tambara;
  EGroup e;
  std::optional<SigmaOnE> se;
};

PairWork analyze_pair(const TYData& ty, const VecAPair& pair) {
  PairWork w;
  w.image = sigma_act(ty, pair);
  w.fx = is_sigma_fixed(ty, pair);
  const bool fixed_by_action = w.image == pair;
  if (fixed_by_action != w.fx.has_value())
    throw internal_error("classify: sigma_act fixedness disagrees with the fixed-pair test");
  w.e = e_group(ty, pair);
  if (w.fx) {
    w.nu = solve_nu(ty, pair, *w.fx);
    w.tambara = tambara_cross_check(ty, pair, *w.fx);
    if (w.tambara->refinement_count != static_cast<Int>(w.nu->classes.size()))
      throw internal_error("classify: Tambara refinement count differs from the nu class count");
    if (w.tambara->sign_matched != static_cast<Int>(w.nu->admissible.size()))
      throw internal_error("classify: Tambara sign count differs from the admissible nu count");
    w.se = sigma_on_e(ty, pair, *w.fx, w.e, w.nu->nu0);
    if (w.se->obstruction_trivial != w.nu->presign_solvable)
      throw internal_error(
          "classify: E-group obstruction triviality disagrees with pre-sign nu solvability");
  }
  return w;
}

}  // namespace

ClassificationReport classify(const TYData& ty, Int budget, int workers) {
  ValidationResult v = validate(ty);
  if (!v.ok) throw validation_error(v.message);
  if (ty.a.order() > budget)
    throw validation_error("group order " + std::to_string(ty.a.order()) +
                           " exceeds the budget " + std::to_string(budget));

  const std::vector<VecAPair> pairs = enumerate_pairs(ty.a, budget);
  std::vector<PairWork> work(pairs.size());

  if (workers <= 1) {
    for (size_t i = 0; i < pairs.size(); ++i) work[i] = analyze_pair(ty, pairs[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&, t]() {
        try {
          for (size_t i = next.fetch_add(1); i < pairs.size(); i = next.fetch_add(1))
            work[i] = analyze_pair(ty, pairs[i]);
        } catch (...) {
          errors[static_cast<size_t>(t)] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  ClassificationReport rep;
  rep.ty = ty;

  auto find_pair = [&pairs](const VecAPair& p) {
    const auto it = std::lower_bound(pairs.begin(), pairs.end(), p, pair_less);
    if (it == pairs.end() || !(*it == p))
      throw internal_error("classify: sigma image is not an enumerated pair");
    return static_cast<size_t>(it - pairs.begin());
  };

  std::vector<bool> visited(pairs.size(), false);
  for (size_t i = 0; i < pairs.size(); ++i) {
    const size_t j = find_pair(work[i].image);
    if (!(work[j].image == pairs[i]))
      throw internal_error("classify: sigma action is not an involution on pairs");
    if (visited[i]) continue;
    visited[i] = true;
    if (j == i) {
      const NuSolveResult& nu = *work[i].nu;
      if (!nu.admissible.empty()) {
        rep.equivariant.push_back(
            EquivariantEntry{pairs[i], *work[i].fx, nu, *work[i].tambara});
      } else {
        rep.obstructed.push_back(ObstructedEntry{pairs[i], nu.presign_solvable});
      }
      if (work[i].se->alternate_formula)
        rep.notes.push_back("sigma_on_e: fallback conjugation formula used for pair index " +
                            std::to_string(i));
    } else {
      visited[j] = true;
      SigmaOrbit orbit;
      orbit.fixed = false;
      orbit.members = {pairs[i], pairs[j]};
      std::sort(orbit.members.begin(), orbit.members.end(), pair_less);
      rep.induced.push_back(std::move(orbit));
    }
  }

  for (size_t i = 0; i < pairs.size(); ++i) {
    EGroupEntry e;
    e.pair = pairs[i];
    e.type = work[i].e.snf_type;
    e.sigma_fixed = work[i].fx.has_value();
    if (work[i].se) e.obstruction_trivial = work[i].se->obstruction_trivial;
    rep.e_groups.push_back(std::move(e));
  }

  rep.lagrangian_witnesses = lagrangians(ty.a, ty.chi);
  rep.group_theoretical = !rep.lagrangian_witnesses.empty();
  bool any_fixed = false;
  for (const PairWork& w : work)
    if (w.fx) any_fixed = true;
  if (any_fixed != rep.group_theoretical)
    throw internal_error(
        "classify: Lagrangian existence and sigma-fixed-pair existence disagree");

  rep.fiber_functor_count = 0;
  for (const EquivariantEntry& e : rep.equivariant)
    if (e.pair.h.order() == ty.a.order())
      rep.fiber_functor_count += static_cast<Int>(e.nu.admissible.size());
  return rep;
}

FiberFunctors fiber_functors(const TYData& ty, Int budget) {
  ValidationResult v = validate(ty);
  if (!v.ok) throw validation_error(v.message);
  if (ty.a.order() > budget)
    throw validation_error("group order " + std::to_string(ty.a.order()) +
                           " exceeds the budget " + std::to_string(budget));
  FiberFunctors out;
  const Subgroup full = full_subgroup(ty.a);
  for (AlternatingForm& xi : enumerate_alternating_forms(full.group)) {
    VecAPair pair{full, std::move(xi)};
    const auto fx = is_sigma_fixed(ty, pair);
    if (!fx) continue;
    NuSolveResult nu = solve_nu(ty, pair, *fx);
    TambaraData tam = tambara_cross_check(ty, pair, *fx);
    if (tam.sign_matched != static_cast<Int>(nu.admissible.size()))
      throw internal_error("fiber_functors: Tambara count differs from the nu class count");
    out.count += static_cast<Int>(nu.admissible.size());
    if (!nu.admissible.empty())
      out.entries.push_back(EquivariantEntry{std::move(pair), *fx, std::move(nu), std::move(tam)});
  }
  return out;
}

}  // namespace tymod
