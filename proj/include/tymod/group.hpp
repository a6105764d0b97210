#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tymod/phase.hpp"

namespace tymod {

/// Element of a finite abelian group, one residue per cyclic factor.
using Elem = std::vector<Int>;
using IntMat = std::vector<std::vector<Int>>;

IntMat identity_mat(Int n);
IntMat mat_mul(const IntMat& a, const IntMat& b);

/// Finite abelian group presented as a fixed direct sum of cyclic factors
/// Z_{m_1} + ... + Z_{m_r}, m_i >= 2. The factor list is part of the data:
/// no isomorphism canonicalization happens across differently presented
/// groups (the basis carries the meaning of user-supplied form matrices).
class Group {
public:
  Group() = default;
  explicit Group(std::vector<Int> orders);

  Int rank() const { return static_cast<Int>(orders_.size()); }
  const std::vector<Int>& orders() const { return orders_; }
  Int order_of_factor(Int i) const { return orders_[static_cast<size_t>(i)]; }
  Int order() const;
  Int exponent() const;

  Elem zero() const { return Elem(orders_.size(), 0); }
  Elem reduce(Elem e) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem scale(Int n, const Elem& a) const;
  Elem generator(Int i) const;
  Int element_order(const Elem& a) const;

  /// Mixed-radix index with the first coordinate most significant, so
  /// ascending index = ascending lexicographic order on coordinates.
  Int index_of(const Elem& e) const;
  Elem element_at(Int idx) const;
  std::vector<Elem> elements() const;

  bool operator==(const Group&) const = default;

  std::string str() const;  // "Z2xZ4"; the trivial group prints as "Z1"

private:
  std::vector<Int> orders_;
};

/// Homomorphism between finite abelian groups; column j of `matrix` holds the
/// target coordinates of the image of the j-th source generator.
struct Hom {
  Group source;
  Group target;
  IntMat matrix;  // target.rank() x source.rank()

  Elem apply(const Elem& x) const;
  bool well_defined() const;
  bool is_identity() const;
  Hom compose(const Hom& inner) const;  // (*this) o inner

  static Hom identity(const Group& g);
  static Hom zero_map(const Group& s, const Group& t);
};

/// Pontryagin dual: same invariant-factor presentation, element lambda acts by
/// a |-> sum_i lambda_i a_i / m_i.
Group dual_group(const Group& g);
Phase char_eval(const Group& g, const Elem& lambda, const Elem& a);

/// Dual homomorphism of f : S -> T, mapping dual(T) -> dual(S) by
/// (f^ lambda)(x) = lambda(f x).
Hom dual_hom(const Hom& f);

struct SnfResult {
  IntMat u, u_inv;  // unimodular row transform and its inverse
  IntMat d;         // diagonal, d_i | d_{i+1}, entries >= 0
  IntMat v, v_inv;  // unimodular column transform and its inverse
};

/// Smith normal form u * m * v = d. Dimensions may be zero.
SnfResult snf(const IntMat& m, Int rows, Int cols);
SnfResult snf(const IntMat& m);

/// Subgroup of an ambient group, carried as its full sorted element list plus
/// an abstract presentation derived from Smith normal form. `basis[l]` lives
/// in the ambient group and has order `group.orders()[l]`; `embed` maps the
/// abstract group onto the element set.
struct Subgroup {
  Group ambient;
  std::vector<Elem> elements;  // canonically sorted
  Group group;                 // abstract invariant-factor presentation
  std::vector<Elem> basis;     // basis[l] in ambient coordinates
  Hom embed;                   // group -> ambient
  std::map<Elem, Elem> abstract_of;  // ambient element -> abstract coordinates

  Int order() const { return static_cast<Int>(elements.size()); }
  bool contains(const Elem& e) const;
  Elem to_abstract(const Elem& ambient_elem) const;
  Elem from_abstract(const Elem& x) const { return embed.apply(x); }
};

bool same_subgroup(const Subgroup& a, const Subgroup& b);

/// Sorted closure of `gens` under addition (contains zero).
std::vector<Elem> generated_elements(const Group& g, const std::vector<Elem>& gens);

Subgroup make_subgroup(const Group& ambient, const std::vector<Elem>& gens);
/// Same, but from an already closed element set (validated).
Subgroup subgroup_from_elements(const Group& ambient, std::vector<Elem> elems);
Subgroup trivial_subgroup(const Group& g);
Subgroup full_subgroup(const Group& g);

/// Every subgroup exactly once, sorted by (order, element list).
std::vector<Subgroup> enumerate_subgroups(const Group& g, Int budget = 4096);

struct QuotientResult {
  Group group;
  Hom proj;  // ambient -> quotient, surjective with kernel exactly the subgroup
};
QuotientResult quotient(const Group& g, const Subgroup& h);

struct HomSolveResult {
  bool ok = false;
  Elem solution;                  // lexicographically least preimage when ok
  std::vector<Elem> kernel_gens;  // generate ker f inside f.source
};

/// Solve f(x) = t. The solution, when it exists, is the lexicographically
/// least coordinate vector among all preimages.
HomSolveResult solve_hom(const Hom& f, const Elem& t);

}  // namespace tymod
