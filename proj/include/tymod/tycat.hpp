#pragma once

#include <map>
#include <string>

#include "tymod/forms.hpp"

namespace tymod {

/// A Tambara-Yamagami category TY(A, chi, tau): chi symmetric nondegenerate,
/// tau = tau_sign / sqrt(|A|). Only the sign of tau enters classification.
struct TYData {
  Group a;
  Bicharacter chi;
  int tau = +1;  // +1 or -1
};

struct ValidationResult {
  bool ok = true;
  std::string message;
};

/// Checks rank fit, well-definedness, symmetry and nondegeneracy of chi;
/// diagnostics name the failing witness pair or kernel element.
ValidationResult validate(const TYData& ty);

/// validate() or throw validation_error.
TYData make_ty(const Group& a, const Bicharacter& chi, int tau);

/// Non-negative integer combination of the simple objects A u {m}.
struct FusionElement {
  std::map<Elem, Int> group_part;
  Int m_mult = 0;

  bool operator==(const FusionElement&) const = default;
};

FusionElement fusion_basis_g(const Elem& g);
FusionElement fusion_basis_m();

/// Bilinear extension of g*h = g+h, g*m = m*g = m, m*m = sum_{g in A} g.
FusionElement fuse(const TYData& ty, const FusionElement& x, const FusionElement& y);

/// Frobenius-Perron dimension: g |-> 1, m |-> sqrt(|A|).
double fp_dim(const TYData& ty, const FusionElement& x);

}  // namespace tymod
