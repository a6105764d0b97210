#include "tymod/selfcheck.hpp"

#include <random>
#include <set>

#include "tymod/io.hpp"

namespace tymod {

namespace {

using Rng = std::mt19937_64;

bool phase_arithmetic(Rng& rng, std::string& detail) {
  std::uniform_int_distribution<Int> num(-50, 50);
  std::uniform_int_distribution<Int> den(1, 48);
  for (int i = 0; i < 100000; ++i) {
    const Phase p(num(rng), den(rng));
    const Phase q(num(rng), den(rng));
    if ((p + q) - q != p) {
      detail = "(p + q) - q != p at p = " + p.str() + ", q = " + q.str();
      return false;
    }
  }
  return true;
}

bool snf_random(Rng& rng, std::string& detail) {
  std::uniform_int_distribution<Int> dim(1, 5);
  std::uniform_int_distribution<Int> entry(-9, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const Int rows = dim(rng), cols = dim(rng);
    IntMat m(static_cast<size_t>(rows), std::vector<Int>(static_cast<size_t>(cols), 0));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    SnfResult s = snf(m, rows, cols);
    if (mat_mul(mat_mul(s.u, m), s.v) != s.d) {
      detail = "u*m*v != d";
      return false;
    }
    if (mat_mul(s.u, s.u_inv) != identity_mat(rows) ||
        mat_mul(s.v, s.v_inv) != identity_mat(cols)) {
      detail = "transform inverses fail";
      return false;
    }
    for (Int i = 0; i + 1 < std::min(rows, cols); ++i) {
      const Int a = s.d[i][i], b = s.d[i + 1][i + 1];
      if (a != 0 && b % a != 0) {
        detail = "divisibility chain broken";
        return false;
      }
      if (a == 0 && b != 0) {
        detail = "zero before nonzero on the diagonal";
        return false;
      }
    }
    for (Int i = 0; i < rows; ++i)
      for (Int j = 0; j < cols; ++j)
        if (i != j && s.d[i][j] != 0) {
          detail = "off-diagonal entry";
          return false;
        }
  }
  return true;
}

// independent subgroup count: closures of all tuples of length <= rank
Int closure_oracle_count(const Group& g) {
  const std::vector<Elem> all = g.elements();
  std::set<std::vector<Elem>> found;
  std::vector<size_t> idx(static_cast<size_t>(g.rank()), 0);
  const size_t n = all.size();
  if (g.rank() == 0) return 1;
  while (true) {
    std::vector<Elem> gens;
    for (size_t v : idx) gens.push_back(all[v]);
    found.insert(generated_elements(g, gens));
    size_t k = idx.size();
    while (k-- > 0) {
      if (++idx[k] < n) break;
      idx[k] = 0;
      if (k == 0) return static_cast<Int>(found.size());
    }
  }
}

bool subgroup_closure(std::string& detail) {
  for (const char* spec : {"Z2", "Z4", "Z2xZ2", "Z6", "Z8", "Z2xZ4", "Z9", "Z3xZ3"}) {
    const Group g = parse_group(spec);
    const Int fast = static_cast<Int>(enumerate_subgroups(g).size());
    const Int slow = closure_oracle_count(g);
    if (fast != slow) {
      detail = std::string(spec) + ": enumerate gives " + std::to_string(fast) +
               ", closure oracle gives " + std::to_string(slow);
      return false;
    }
  }
  return true;
}

bool form_round_trip(std::string& detail) {
  for (const char* spec : {"Z2xZ2", "Z4", "Z2xZ4", "Z3xZ3", "Z2xZ2xZ2"}) {
    const Group g = parse_group(spec);
    Int expected = 1;
    for (Int i = 0; i < g.rank(); ++i)
      for (Int j = i + 1; j < g.rank(); ++j)
        expected *= std::gcd(g.order_of_factor(i), g.order_of_factor(j));
    const auto forms = enumerate_alternating_forms(g);
    if (static_cast<Int>(forms.size()) != expected) {
      detail = std::string(spec) + ": form count " + std::to_string(forms.size()) +
               " != " + std::to_string(expected);
      return false;
    }
    for (const AlternatingForm& xi : forms)
      if (alt_form(standard_cocycle(xi)) != xi) {
        detail = std::string(spec) + ": alt_form(standard_cocycle(xi)) != xi";
        return false;
      }
  }
  return true;
}

Bicharacter random_symmetric_form(Rng& rng, const Group& g) {
  Bicharacter f = zero_form(g);
  for (Int i = 0; i < g.rank(); ++i)
    for (Int j = i; j < g.rank(); ++j) {
      const Int m = std::gcd(g.order_of_factor(i), g.order_of_factor(j));
      const Phase p(std::uniform_int_distribution<Int>(0, m - 1)(rng), m);
      f.b[i][j] = p;
      f.b[j][i] = p;
    }
  return f;
}

bool coboundary_solver(Rng& rng, std::string& detail) {
  for (const char* spec : {"Z2", "Z4", "Z2xZ2", "Z6", "Z2xZ4"}) {
    const Group g = parse_group(spec);
    for (int trial = 0; trial < 50; ++trial) {
      const Bicharacter f = random_symmetric_form(rng, g);
      const NuFunction nu = solve_coboundary(f);
      for (const Elem& a : g.elements())
        for (const Elem& b : g.elements())
          if (nu_coboundary(nu, a, b) != f.eval(a, b)) {
            detail = std::string(spec) + ": delta(nu) != f";
            return false;
          }
    }
  }
  return true;
}

bool sigma_involution(std::string& detail) {
  struct Case {
    const char* group;
    const char* chi;
  };
  const Case cases[] = {{"Z2", "1/2"},         {"Z4", "1/4"},
                        {"Z2xZ2", "0,1/2;1/2,0"}, {"Z2xZ2", "1/2,0;0,1/2"},
                        {"Z3xZ3", "0,1/3;1/3,0"}, {"Z8", "3/8"}};
  for (const Case& c : cases) {
    const Group g = parse_group(c.group);
    const TYData ty = make_ty(g, parse_form(c.chi, g), +1);
    for (const VecAPair& pair : enumerate_pairs(g)) {
      const VecAPair twice = sigma_act(ty, sigma_act(ty, pair));
      if (!(twice == pair)) {
        detail = std::string(c.group) + " chi=" + c.chi + ": sigma^2 moved a pair";
        return false;
      }
    }
  }
  return true;
}

bool classify_determinism(std::string& detail) {
  const Group g = parse_group("Z2xZ2");
  const TYData ty = make_ty(g, parse_form("0,1/2;1/2,0", g), +1);
  const std::string one = render_json(classify_json(classify(ty, 4096, 1), 4096));
  const std::string eight = render_json(classify_json(classify(ty, 4096, 8), 4096));
  if (one != eight) {
    detail = "classify output differs between 1 and 8 workers";
    return false;
  }
  return true;
}

}  // namespace

std::vector<SelfCheckResult> run_selfcheck(Int seed) {
  Rng rng(static_cast<uint64_t>(seed));
  std::vector<SelfCheckResult> out;
  const auto run = [&out](const std::string& name, auto&& fn) {
    SelfCheckResult r;
    r.name = name;
    try {
      r.ok = fn(r.detail);
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  };
  run("phase_arithmetic", [&rng](std::string& d) { return phase_arithmetic(rng, d); });
  run("smith_normal_form", [&rng](std::string& d) { return snf_random(rng, d); });
  run("subgroup_closure", [](std::string& d) { return subgroup_closure(d); });
  run("alternating_form_round_trip", [](std::string& d) { return form_round_trip(d); });
  run("coboundary_solver", [&rng](std::string& d) { return coboundary_solver(rng, d); });
  run("sigma_involution", [](std::string& d) { return sigma_involution(d); });
  run("classify_determinism", [](std::string& d) { return classify_determinism(d); });
  return out;
}

}  // namespace tymod
