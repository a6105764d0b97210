#pragma once

#include <optional>

#include "tymod/tycat.hpp"

namespace tymod {

/// Indecomposable Vec_A module category M(H, psi), carried as the subgroup H
/// together with the alternating form classifying the cohomology class of
/// psi (on the abstract presentation of H). A cocycle representative is
/// materialized only where equations need values, via standard_cocycle.
struct VecAPair {
  Subgroup h;
  AlternatingForm xi;  // on h.group
};

bool operator==(const VecAPair& a, const VecAPair& b);
bool pair_less(const VecAPair& a, const VecAPair& b);

/// All (H, xi) pairs on A, sorted by (|H|, element list, form matrix).
std::vector<VecAPair> enumerate_pairs(const Group& a, Int budget = 4096);

/// The map a -> t_a on Rad(xi)^perp: t_a is the canonical element of H with
/// xi(t_a, h) = chi(a, h) for all h in H.
struct TMap {
  Subgroup domain;         // Rad(xi)^perp inside A
  std::map<Elem, Elem> t;  // ambient element -> element of pair.h.group
};
TMap t_map(const TYData& ty, const VecAPair& pair);

/// sigma . M(H, psi) = M(Rad(psi)^perp, psi~) with psi~(a,b) = psi(t_b, t_a);
/// the image is returned through its alternating form. Involutive.
VecAPair sigma_act(const TYData& ty, const VecAPair& pair);

/// Everything attached to a sigma-fixed pair: Hbar = H/H^perp with the
/// descended forms, and the involution s with xi_bar(s(a), b) = chi_bar(a, b).
struct FixedPairData {
  Subgroup hperp;       // H^perp inside A
  Subgroup hperp_in_h;  // the same subgroup inside pair.h.group
  Group hbar;
  Hom proj;  // pair.h.group -> hbar
  Bicharacter chi_bar;
  AlternatingForm xi_bar;
  Hom s;  // involution on hbar
};

/// Present exactly when (i) H^perp <= H, (ii) Rad(xi) = H^perp, and (iii) the
/// solved s is an involution. The identity s is admitted (forced when Hbar is
/// trivial).
std::optional<FixedPairData> is_sigma_fixed(const TYData& ty, const VecAPair& pair);

struct NuClass {
  NuFunction rep;         // lexicographically least member of the class
  int sign;               // Gauss sign of the descended fixed-point sum
  std::vector<Phase> mu;  // values on hbar^s / hbar_s in element order
};

struct NuSolveResult {
  NuFunction nu0;  // particular solution of the coboundary equation alone
  bool presign_solvable = false;
  Int torsor_size = 0;  // solutions of the first two conditions
  Int equivalence_subgroup_size = 0;
  Int fixed_point_count = 0;  // |hbar^s|
  Int hbar_s_size = 0;        // |{a + s(a)}|
  std::vector<NuClass> classes;     // all equivalence classes, canonical order
  std::vector<NuClass> admissible;  // the sign(tau)-matched ones
};

/// Solves the nu conditions for a sigma-fixed pair. Empty `admissible` is a
/// valid outcome (the obstruction does not vanish). A different particular
/// solution may be injected to exercise representative independence.
NuSolveResult solve_nu(const TYData& ty, const VecAPair& pair, const FixedPairData& fx,
                       const NuFunction* nu0_override = nullptr);

/// The group of invertible bimodules supported on Vec_A: the pushout
/// (A + dual(H)) / {(h, -xi(h,-))}, of order |A|, with elements carried as
/// canonical pairs (coset representative, character of H).
struct EGroup {
  Group a;
  Subgroup h;
  AlternatingForm xi;
  Group hdual;                  // dual of h.group
  Hom adj_xi;                   // h |-> xi(h,-)
  std::vector<Elem> coset_reps; // lexicographically least in each coset
  std::vector<Int> snf_type;    // invariant factors
  std::vector<std::pair<Elem, Elem>> elements;  // (rep, lambda), canonical order

  Int size() const { return static_cast<Int>(elements.size()); }
  std::pair<Elem, Elem> canonical(const Elem& a_elem, const Elem& lambda) const;
  std::pair<Elem, Elem> add(const std::pair<Elem, Elem>& x,
                            const std::pair<Elem, Elem>& y) const;
  Int index_of(const std::pair<Elem, Elem>& x) const;
};

EGroup e_group(const TYData& ty, const VecAPair& pair);

struct SigmaOnE {
  std::vector<Int> action;  // permutation of EGroup element indices
  bool alternate_formula = false;  // fallback conjugation formula was needed
  Int obstruction_index = 0;       // the class of h |-> nu(h) + nu(t_h) in E
  bool obstruction_trivial = false;
};

/// The sigma action on E and the obstruction element in E^sigma / im(1+sigma).
SigmaOnE sigma_on_e(const TYData& ty, const VecAPair& pair, const FixedPairData& fx,
                    const EGroup& e, const NuFunction& nu0);

/// Tambara-style count over pairs (s, mu): quadratic refinements mu of the
/// induced form on V = hbar^s / hbar_s, filtered by Gauss sign.
struct TambaraData {
  Group v;
  Bicharacter chi_tilde;
  Int refinement_count = 0;
  Int sign_matched = 0;
};
TambaraData tambara_cross_check(const TYData& ty, const VecAPair& pair,
                                const FixedPairData& fx);

struct DualReportData {
  std::vector<Int> e_type;
  bool dual_pointed = false;
};
DualReportData dual_report(const TYData& ty, const VecAPair& pair);

struct GroupTheoreticity {
  bool value = false;
  std::vector<Subgroup> witnesses;  // the Lagrangian subgroups
};
/// Lagrangian existence, cross-validated against sigma-fixed-pair existence
/// (the two must agree; disagreement aborts).
GroupTheoreticity is_group_theoretical(const TYData& ty, Int budget = 4096);

struct SigmaOrbit {
  std::vector<VecAPair> members;  // 1 or 2, sorted
  bool fixed = false;
};

struct EquivariantEntry {
  VecAPair pair;
  FixedPairData fixed;
  NuSolveResult nu;
  TambaraData tambara;
};

struct ObstructedEntry {
  VecAPair pair;
  bool presign_solvable = false;
};

struct EGroupEntry {
  VecAPair pair;
  std::vector<Int> type;
  bool sigma_fixed = false;
  std::optional<bool> obstruction_trivial;
};

struct ClassificationReport {
  TYData ty;
  std::vector<SigmaOrbit> induced;              // the size-2 orbits
  std::vector<EquivariantEntry> equivariant;    // per sigma-fixed pair with classes
  std::vector<ObstructedEntry> obstructed;      // sigma-fixed, no admissible nu
  bool group_theoretical = false;
  std::vector<Subgroup> lagrangian_witnesses;
  Int fiber_functor_count = 0;
  std::vector<EGroupEntry> e_groups;  // one per pair, canonical order
  std::vector<std::string> notes;    // diagnostics (errors stream material)
};

ClassificationReport classify(const TYData& ty, Int budget = 4096, int workers = 1);

struct FiberFunctors {
  Int count = 0;
  std::vector<EquivariantEntry> entries;  // the H = A pairs with their classes
};
FiberFunctors fiber_functors(const TYData& ty, Int budget = 4096);

}  // namespace tymod
