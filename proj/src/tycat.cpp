#include "tymod/tycat.hpp"

#include <cmath>

namespace tymod {

namespace {

std::string elem_str(const Elem& e) {
  std::string s = "(";
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

}  // namespace

ValidationResult validate(const TYData& ty) {
  const Int r = ty.a.rank();
  if (static_cast<Int>(ty.chi.b.size()) != r)
    return {false, "chi matrix has " + std::to_string(ty.chi.b.size()) +
                       " rows, expected " + std::to_string(r)};
  for (const auto& row : ty.chi.b)
    if (static_cast<Int>(row.size()) != r)
      return {false, "chi matrix is not square of rank " + std::to_string(r)};
  if (ty.chi.group != ty.a) return {false, "chi is defined on a different group"};
  if (auto w = well_definedness_witness(ty.chi))
    return {false, "chi entry (" + std::to_string(w->first) + "," +
                       std::to_string(w->second) + ") = " +
                       ty.chi.b[w->first][w->second].str() +
                       " is not killed by the generator orders"};
  if (auto w = symmetry_witness(ty.chi))
    return {false, "chi is not symmetric: witness pair a = " + elem_str(w->first) +
                       ", b = " + elem_str(w->second)};
  if (auto w = kernel_witness(ty.chi))
    return {false, "chi is degenerate: kernel element " + elem_str(*w)};
  if (ty.tau != 1 && ty.tau != -1) return {false, "tau sign must be +1 or -1"};
  return {};
}

TYData make_ty(const Group& a, const Bicharacter& chi, int tau) {
  TYData ty{a, chi, tau};
  ValidationResult v = validate(ty);
  if (!v.ok) throw validation_error(v.message);
  return ty;
}

FusionElement fusion_basis_g(const Elem& g) {
  FusionElement x;
  x.group_part[g] = 1;
  return x;
}

FusionElement fusion_basis_m() {
  FusionElement x;
  x.m_mult = 1;
  return x;
}

FusionElement fuse(const TYData& ty, const FusionElement& x, const FusionElement& y) {
  FusionElement out;
  Int xg = 0, yg = 0;  // total group-part multiplicities
  for (const auto& [g, c] : x.group_part) xg += c;
  for (const auto& [g, c] : y.group_part) yg += c;

  for (const auto& [g, c] : x.group_part)
    for (const auto& [h, d] : y.group_part) {
      if (c == 0 || d == 0) continue;
      out.group_part[ty.a.add(g, h)] += c * d;
    }
  // m*m contributes one copy of every group element
  const Int mm = x.m_mult * y.m_mult;
  if (mm != 0)
    for (Int i = 0; i < ty.a.order(); ++i) out.group_part[ty.a.element_at(i)] += mm;
  out.m_mult = xg * y.m_mult + x.m_mult * yg;

  for (auto it = out.group_part.begin(); it != out.group_part.end();)
    it = it->second == 0 ? out.group_part.erase(it) : std::next(it);
  return out;
}

double fp_dim(const TYData& ty, const FusionElement& x) {
  double d = 0.0;
  for (const auto& [g, c] : x.group_part) d += static_cast<double>(c);
  d += static_cast<double>(x.m_mult) * std::sqrt(static_cast<double>(ty.a.order()));
  return d;
}

}  // namespace tymod
