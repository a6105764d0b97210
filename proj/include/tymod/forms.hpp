#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tymod/group.hpp"

namespace tymod {

/// Bilinear map group x group -> Q/Z determined by the generator pairings
/// b[i][j]; evaluation is sum_{i,j} x_i y_j b[i][j] on canonical residues.
struct Bicharacter {
  Group group;
  std::vector<std::vector<Phase>> b;

  Phase eval(const Elem& x, const Elem& y) const;
  bool operator==(const Bicharacter&) const = default;
};

/// xi with xi(x,x) = 0; same representation, classified by the matrix tests
/// b[i][i] = 0 and b[i][j] = -b[j][i].
using AlternatingForm = Bicharacter;
/// Explicit bilinear 2-cocycle representative (matrix not required symmetric).
using BilinearCocycle = Bicharacter;

Bicharacter zero_form(const Group& g);

/// Entry (i,j) whose denominator is not killed by both generator orders.
std::optional<std::pair<Int, Int>> well_definedness_witness(const Bicharacter& f);
bool is_well_defined(const Bicharacter& f);

bool is_symmetric(const Bicharacter& f);
std::optional<std::pair<Elem, Elem>> symmetry_witness(const Bicharacter& f);
bool is_alternating(const Bicharacter& f);

/// a |-> f(a,-) as a homomorphism into the dual group.
Hom adjoint(const Bicharacter& f);
bool is_nondegenerate(const Bicharacter& f);
/// A nonzero element of the radical, if any.
std::optional<Elem> kernel_witness(const Bicharacter& f);

/// {a in ambient : chi(a, s) = 0 for all s in S}.
Subgroup perp(const Bicharacter& chi, const Subgroup& s);

Bicharacter restrict_form(const Bicharacter& f, const Subgroup& h);

struct DescendResult {
  Group quotient;
  Hom proj;
  Bicharacter form;
};
/// Pushes f on G down to G/K; requires K inside the radical of f (checked).
DescendResult descend_form(const Bicharacter& f, const Subgroup& k);

/// {h : f(h,-) = 0} as a subgroup of f.group.
Subgroup radical(const Bicharacter& f);

/// All L with perp(chi, L) = L; chi must be symmetric and nondegenerate.
std::vector<Subgroup> lagrangians(const Group& a, const Bicharacter& chi);

/// xi_psi = P - P^T entrywise; depends only on the cohomology class of psi.
AlternatingForm alt_form(const BilinearCocycle& psi);

/// Upper-triangular cocycle representative of an alternating form;
/// alt_form(standard_cocycle(xi)) == xi.
BilinearCocycle standard_cocycle(const AlternatingForm& xi);

/// Every alternating form on g, sorted by matrix entries; the count is
/// prod_{i<j} gcd(m_i, m_j).
std::vector<AlternatingForm> enumerate_alternating_forms(const Group& g);

/// Function nu : G -> Q/Z with nu(0) = 0, tabulated in element-index order.
struct NuFunction {
  Group domain;
  std::vector<Phase> table;

  Phase at(const Elem& e) const { return table[static_cast<size_t>(domain.index_of(e))]; }
  Phase at_index(Int i) const { return table[static_cast<size_t>(i)]; }
  bool operator==(const NuFunction&) const = default;
};

/// nu(a) + nu(b) - nu(a+b).
Phase nu_coboundary(const NuFunction& nu, const Elem& a, const Elem& b);

/// Solves delta(nu) = f exactly for a normalized symmetric 2-cocycle f
/// (both properties checked; violations raise validation_error). The result
/// is the lexicographically least table among all solutions with nu(0) = 0;
/// denominators divide |G| * lcm(denominators of f) * 2.
NuFunction solve_coboundary(const Group& g,
                            const std::function<Phase(const Elem&, const Elem&)>& f);
/// Same solver for a bilinear f given by its matrix (cocycle identity holds
/// structurally; symmetry is still checked).
NuFunction solve_coboundary(const Bicharacter& f);

/// Sign of sum e^{2 pi i q} over the values. The sum must be real with
/// magnitude sqrt(#values) within 1e-9; a violation raises internal_error
/// (it means the values do not come from a valid quadratic refinement).
int gauss_sign(const std::vector<Phase>& values);

}  // namespace tymod
