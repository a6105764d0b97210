#include "tymod/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tymod {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

Group parse_group(const std::string& spec) {
  std::vector<Int> orders;
  size_t i = 0;
  while (i < spec.size()) {
    if (spec[i] != 'z' && spec[i] != 'Z')
      throw validation_error("group spec: expected 'Z' at position " + std::to_string(i) +
                             " in '" + spec + "'");
    ++i;
    size_t start = i;
    while (i < spec.size() && std::isdigit(static_cast<unsigned char>(spec[i]))) ++i;
    if (start == i)
      throw validation_error("group spec: expected digits at position " +
                             std::to_string(i) + " in '" + spec + "'");
    const Int n = std::stoll(spec.substr(start, i - start));
    if (n < 2)
      throw validation_error("group spec: cyclic order must be >= 2 (got Z" +
                             std::to_string(n) + ")");
    orders.push_back(n);
    if (i < spec.size()) {
      if (spec[i] != 'x' && spec[i] != 'X')
        throw validation_error("group spec: expected 'x' at position " +
                               std::to_string(i) + " in '" + spec + "'");
      ++i;
      if (i == spec.size())
        throw validation_error("group spec: trailing 'x' in '" + spec + "'");
    }
  }
  if (orders.empty()) throw validation_error("group spec: empty");
  return Group(orders);
}

Bicharacter parse_form(const std::string& spec, const Group& g) {
  const std::string body = strip(spec);
  const Int r = g.rank();
  if (body.empty()) {
    if (r == 0) return zero_form(g);
    throw validation_error("form matrix: empty spec for a rank-" + std::to_string(r) +
                           " group");
  }
  const std::vector<std::string> rows = split(body, ';');
  if (static_cast<Int>(rows.size()) != r)
    throw validation_error("form matrix: got " + std::to_string(rows.size()) +
                           " rows, expected " + std::to_string(r));
  Bicharacter f = zero_form(g);
  for (Int i = 0; i < r; ++i) {
    const std::vector<std::string> entries = split(rows[static_cast<size_t>(i)], ',');
    if (static_cast<Int>(entries.size()) != r)
      throw validation_error("form matrix: row " + std::to_string(i) + " has " +
                             std::to_string(entries.size()) + " entries, expected " +
                             std::to_string(r));
    for (Int j = 0; j < r; ++j) {
      const auto p = Phase::parse(strip(entries[static_cast<size_t>(j)]));
      if (!p)
        throw validation_error("form matrix: cannot parse entry (" + std::to_string(i) +
                               "," + std::to_string(j) + ") = '" +
                               entries[static_cast<size_t>(j)] + "'");
      f.b[i][j] = *p;
    }
  }
  if (auto w = well_definedness_witness(f))
    throw validation_error("form matrix: entry (" + std::to_string(w->first) + "," +
                           std::to_string(w->second) + ") = " +
                           f.b[w->first][w->second].str() +
                           " is not killed by the generator orders");
  return f;
}

std::vector<Elem> parse_elem_list(const std::string& spec, const Group& g) {
  std::vector<Elem> out;
  for (const std::string& raw : split(strip(spec), ';')) {
    std::string t = strip(raw);
    if (t.empty()) continue;
    if (t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    const std::vector<std::string> coords = split(t, ',');
    if (static_cast<Int>(coords.size()) != g.rank())
      throw validation_error("element '" + raw + "' has " +
                             std::to_string(coords.size()) + " coordinates, expected " +
                             std::to_string(g.rank()));
    Elem e;
    for (const std::string& c : coords) {
      try {
        e.push_back(std::stoll(strip(c)));
      } catch (const std::exception&) {
        throw validation_error("element '" + raw + "': bad coordinate '" + c + "'");
      }
    }
    out.push_back(g.reduce(std::move(e)));
  }
  return out;
}

int parse_tau(const std::string& spec) {
  if (spec == "+" || spec == "+1") return +1;
  if (spec == "-" || spec == "-1") return -1;
  throw validation_error("tau must be '+' or '-', got '" + spec + "'");
}

std::string elem_to_string(const Elem& e) {
  std::string s = "(";
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

std::string form_to_string(const Bicharacter& f) {
  std::string s;
  for (size_t i = 0; i < f.b.size(); ++i) {
    if (i) s += ";";
    for (size_t j = 0; j < f.b[i].size(); ++j) {
      if (j) s += ",";
      s += f.b[i][j].str();
    }
  }
  return s;
}

Json subgroup_json(const Subgroup& s) {
  Json j;
  j["elements"] = Json::array();
  for (const Elem& e : s.elements) j["elements"].push_back(elem_to_string(e));
  j["type"] = s.group.str();
  j["basis"] = Json::array();
  for (const Elem& b : s.basis) j["basis"].push_back(elem_to_string(b));
  return j;
}

Json pair_json(const VecAPair& p) {
  Json j;
  j["H"] = Json::array();
  for (const Elem& e : p.h.elements) j["H"].push_back(elem_to_string(e));
  j["H_type"] = p.h.group.str();
  j["basis"] = Json::array();
  for (const Elem& b : p.h.basis) j["basis"].push_back(elem_to_string(b));
  j["xi"] = form_to_string(p.xi);
  return j;
}

namespace {

Json nu_json(const NuFunction& nu) {
  Json j = Json::object();
  for (Int i = 0; i < nu.domain.order(); ++i)
    j[elem_to_string(nu.domain.element_at(i))] = nu.at_index(i).str();
  return j;
}

Json equivariant_json(const EquivariantEntry& e) {
  Json j;
  j["pair"] = pair_json(e.pair);
  j["hbar_type"] = e.fixed.hbar.str();
  j["s"] = e.fixed.s.matrix;
  j["class_size_data"] = Json{{"torsor", e.nu.torsor_size},
                              {"equivalence_subgroup", e.nu.equivalence_subgroup_size},
                              {"classes", e.nu.classes.size()},
                              {"sign_matched", e.nu.admissible.size()}};
  j["fixed_points"] = e.nu.fixed_point_count;
  j["classes"] = Json::array();
  for (const NuClass& c : e.nu.admissible) {
    Json cj;
    cj["nu"] = nu_json(c.rep);
    cj["sign"] = c.sign > 0 ? "+" : "-";
    j["classes"].push_back(std::move(cj));
  }
  j["tambara"] = Json{{"v_type", e.tambara.v.str()},
                      {"refinements", e.tambara.refinement_count},
                      {"sign_matched", e.tambara.sign_matched}};
  return j;
}

}  // namespace

Json classify_json(const ClassificationReport& rep, Int budget) {
  Json j;
  j["input"] = Json{{"group", rep.ty.a.str()},
                    {"order", rep.ty.a.order()},
                    {"chi", form_to_string(rep.ty.chi)},
                    {"tau", rep.ty.tau > 0 ? "+" : "-"},
                    {"budget", budget}};
  j["induced"] = Json::array();
  for (const SigmaOrbit& o : rep.induced) {
    Json oj;
    oj["members"] = Json::array();
    for (const VecAPair& m : o.members) oj["members"].push_back(pair_json(m));
    j["induced"].push_back(std::move(oj));
  }
  j["equivariant"] = Json::array();
  for (const EquivariantEntry& e : rep.equivariant)
    j["equivariant"].push_back(equivariant_json(e));
  j["obstructed"] = Json::array();
  for (const ObstructedEntry& o : rep.obstructed) {
    Json oj;
    oj["pair"] = pair_json(o.pair);
    oj["presign_solvable"] = o.presign_solvable;
    j["obstructed"].push_back(std::move(oj));
  }
  j["group_theoretical"] = rep.group_theoretical;
  j["lagrangians"] = Json::array();
  for (const Subgroup& l : rep.lagrangian_witnesses) {
    Json lj = Json::array();
    for (const Elem& e : l.elements) lj.push_back(elem_to_string(e));
    j["lagrangians"].push_back(std::move(lj));
  }
  j["fiber_functor_count"] = rep.fiber_functor_count;
  j["e_groups"] = Json::array();
  for (const EGroupEntry& e : rep.e_groups) {
    Json ej;
    ej["pair"] = pair_json(e.pair);
    ej["type"] = e.type;
    ej["sigma_fixed"] = e.sigma_fixed;
    if (e.obstruction_trivial)
      ej["obstruction_trivial"] = *e.obstruction_trivial;
    else
      ej["obstruction_trivial"] = nullptr;
    j["e_groups"].push_back(std::move(ej));
  }
  return j;
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  return out + "\"";
}

bool is_scalar_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& v : j)
    if (v.is_object() || (v.is_array() && !is_scalar_array(v))) return false;
  return true;
}

void flatten(const Json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    if (j.empty()) out += csv_escape(path) + ",{}\n";
    for (const auto& [k, v] : j.items())
      flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !is_scalar_array(j)) {
    if (j.empty()) out += csv_escape(path) + ",[]\n";
    for (size_t i = 0; i < j.size(); ++i)
      flatten(j[i], path + "." + std::to_string(i), out);
  } else {
    const std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    out += csv_escape(path) + "," + csv_escape(v) + "\n";
  }
}

void render_text_rec(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !is_scalar_array(v))) {
        out += pad + k + ":\n";
        render_text_rec(v, indent + 1, out);
      } else {
        const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
        out += pad + k + ": " + s + "\n";
      }
    }
  } else if (j.is_array()) {
    if (j.empty()) out += pad + "(none)\n";
    for (const auto& v : j) {
      if (v.is_object() || (v.is_array() && !is_scalar_array(v))) {
        out += pad + "-\n";
        render_text_rec(v, indent + 1, out);
      } else {
        const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
        out += pad + "- " + s + "\n";
      }
    }
  } else {
    out += pad + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

}  // namespace

std::string render_csv(const Json& j) {
  std::string out = "path,value\n";
  flatten(j, "", out);
  return out;
}

std::string render_text(const Json& j) {
  std::string out;
  render_text_rec(j, 0, out);
  return out;
}

}  // namespace tymod
