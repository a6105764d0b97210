#pragma once

#include <string>

#include <json.hpp>

#include "tymod/classify.hpp"

namespace tymod {

using Json = nlohmann::ordered_json;

/// "Z2xZ4" (case-insensitive, no spaces); factor order is load-bearing for
/// the chi matrix basis. Orders below 2 are rejected.
Group parse_group(const std::string& spec);

/// Row-major rational matrix, entries comma-separated, rows semicolon-
/// separated: "0,1/2;1/2,0". Entry p/q means the phase p/q. Dimension and
/// well-definedness are validated; symmetry/nondegeneracy are the caller's
/// command-dependent checks.
Bicharacter parse_form(const std::string& spec, const Group& g);

/// "(1,0);(0,1)" — a semicolon-separated tuple list.
std::vector<Elem> parse_elem_list(const std::string& spec, const Group& g);

int parse_tau(const std::string& spec);

std::string elem_to_string(const Elem& e);
std::string form_to_string(const Bicharacter& f);

Json subgroup_json(const Subgroup& s);
Json pair_json(const VecAPair& p);
Json classify_json(const ClassificationReport& rep, Int budget);

std::string render_json(const Json& j);
std::string render_csv(const Json& j);
std::string render_text(const Json& j);

}  // namespace tymod
