#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "battery.hpp"
#include "oracles.hpp"
#include "tymod/selfcheck.hpp"

using namespace tymod;
using tymod::testing::battery_cases;
using tymod::testing::battery_groups;
using tymod::testing::battery_ty;
using tymod::testing::golden_cases;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void pass(const std::string& line) { std::printf("[PASS] %s\n", line.c_str()); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("cannot open " + path).c_str());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string run_cli(const std::string& args, int expected_exit = 0) {
  const std::string out_path =
      std::string(TYMOD_BUILD_DIR) + "/cli_capture_" + std::to_string(::getpid()) + ".out";
  const std::string cmd =
      std::string(TYMOD_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(rc));
  REQUIRE(WEXITSTATUS(rc) == expected_exit);
  return read_file(out_path);
}

}  // namespace

TEST_CASE("criterion 0: the checked-in chi list is valid") {
  // every battery group appears and every chi is symmetric and nondegenerate
  for (const std::string& spec : battery_groups()) {
    bool found = false;
    for (const auto& c : battery_cases()) found |= c.group == spec;
    REQUIRE_MESSAGE(found, (spec + " has no checked-in chi").c_str());
  }
  for (const auto& c : battery_cases()) {
    const Group g = parse_group(c.group);
    const Bicharacter chi = parse_form(c.chi, g);
    REQUIRE(is_symmetric(chi));
    REQUIRE(is_nondegenerate(chi));
  }
  pass("criterion 0: checked-in chi list (" + std::to_string(battery_cases().size()) +
       " metric groups) is symmetric and nondegenerate");
}

TEST_CASE("criterion 1: sigma_act is an involution on every battery pair") {
  const auto t0 = std::chrono::steady_clock::now();
  Int pairs_checked = 0;
  for (const auto& c : battery_cases()) {
    const TYData ty = battery_ty(c, +1);
    for (const VecAPair& pair : enumerate_pairs(ty.a)) {
      const VecAPair image = sigma_act(ty, pair);
      REQUIRE(sigma_act(ty, image) == pair);
      ++pairs_checked;
    }
  }
  const double dt = seconds_since(t0);
  REQUIRE(dt < 60.0);
  pass("criterion 1: sigma^2 = id exactly on " + std::to_string(pairs_checked) +
       " pairs in " + std::to_string(dt) + " s (< 60 s)");
}

TEST_CASE("criterion 2: alternating-form bijection and counts") {
  Int forms_checked = 0;
  for (const std::string& spec : battery_groups()) {
    const Group g = parse_group(spec);
    for (const Subgroup& h : enumerate_subgroups(g)) {
      const auto forms = enumerate_alternating_forms(h.group);
      REQUIRE(static_cast<Int>(forms.size()) ==
              tymod::testing::alternating_count_formula(h.group));
      for (const AlternatingForm& xi : forms) {
        REQUIRE(alt_form(standard_cocycle(xi)) == xi);
        ++forms_checked;
      }
    }
  }
  REQUIRE(enumerate_alternating_forms(parse_group("Z2xZ2")).size() == 2);
  REQUIRE(enumerate_alternating_forms(parse_group("Z2xZ4")).size() == 2);
  pass("criterion 2: alt_form o standard_cocycle = id on " +
       std::to_string(forms_checked) + " forms; counts match prod gcd(m_i,m_j)");
}

TEST_CASE("criterion 3: coboundary solver against 500 random forms per group") {
  std::mt19937_64 rng(2024);
  Int solved = 0;
  for (const std::string& spec : battery_groups()) {
    const Group g = parse_group(spec);
    for (int trial = 0; trial < 500; ++trial) {
      Bicharacter f = zero_form(g);
      for (Int i = 0; i < g.rank(); ++i)
        for (Int j = i; j < g.rank(); ++j) {
          const Int m = std::gcd(g.order_of_factor(i), g.order_of_factor(j));
          const Phase p(std::uniform_int_distribution<Int>(0, m - 1)(rng), m);
          f.b[i][j] = p;
          f.b[j][i] = p;
        }
      const NuFunction nu = solve_coboundary(f);
      for (const Elem& a : g.elements())
        for (const Elem& b : g.elements())
          REQUIRE(nu_coboundary(nu, a, b) == f.eval(a, b));
      ++solved;
    }
    // every perturbation with a nonzero alternating part mod 1 must error
    const std::vector<Elem> elems = g.elements();
    for (const Elem& a : elems)
      for (const Elem& b : elems) {
        if (a == b) continue;
        const Phase bump(1, g.exponent() == 2 ? 4 : g.exponent());
        const auto f = [&](const Elem& x, const Elem& y) {
          return x == a && y == b ? bump : Phase();
        };
        CHECK_THROWS_AS(solve_coboundary(g, f), validation_error);
      }
  }
  pass("criterion 3: delta(solve_coboundary(f)) = f exactly on " +
       std::to_string(solved) + " random forms; asymmetric perturbations rejected");
}

TEST_CASE("criterion 4: nu-solver equals brute force on small fixed pairs") {
  const auto t0 = std::chrono::steady_clock::now();
  Int fixed_pairs = 0;
  for (const auto& c : battery_cases()) {
    for (int tau : {+1, -1}) {
      const TYData ty = battery_ty(c, tau);
      for (const VecAPair& pair : enumerate_pairs(ty.a)) {
        const auto fx = is_sigma_fixed(ty, pair);
        if (!fx || fx->hbar.order() > 4) continue;
        const NuSolveResult nu = solve_nu(ty, pair, *fx);
        const auto brute = tymod::testing::brute_force_nu(ty, *fx);
        REQUIRE(static_cast<Int>(nu.classes.size()) == brute.classes);
        REQUIRE(static_cast<Int>(nu.admissible.size()) == brute.sign_matched);
        REQUIRE(nu.presign_solvable == (brute.solutions > 0));
        ++fixed_pairs;
      }
    }
  }
  const double dt = seconds_since(t0);
  REQUIRE(dt < 120.0);
  pass("criterion 4: solver classes = exhaustive enumeration on " +
       std::to_string(fixed_pairs) + " fixed pairs in " + std::to_string(dt) +
       " s (< 120 s)");
}

TEST_CASE("criterion 5: Gauss-sign soundness for every nu produced") {
  Int signs_checked = 0;
  for (const auto& c : battery_cases()) {
    for (int tau : {+1, -1}) {
      const TYData ty = battery_ty(c, tau);
      for (const VecAPair& pair : enumerate_pairs(ty.a)) {
        const auto fx = is_sigma_fixed(ty, pair);
        if (!fx) continue;
        const NuSolveResult nu = solve_nu(ty, pair, *fx);
        for (const NuClass& cls : nu.classes) {
          // the descended fixed-point sum obeys the sqrt(n) magnitude law
          std::complex<double> descended = 0.0;
          for (const Phase& p : cls.mu)
            descended += std::exp(std::complex<double>(0.0, 2 * M_PI * p.value()));
          REQUIRE(std::abs(descended.imag()) < 1e-9);
          REQUIRE(std::abs(std::abs(descended.real()) -
                           std::sqrt(static_cast<double>(cls.mu.size()))) < 1e-9);
          REQUIRE(gauss_sign(cls.mu) == cls.sign);

          // the raw sum over all s-fixed points is real with magnitude
          // sqrt(|hbar^s| * |hbar_s|) and the same sign
          std::complex<double> full = 0.0;
          Int fixed_count = 0;
          for (Int i = 0; i < fx->hbar.order(); ++i) {
            const Elem x = fx->hbar.element_at(i);
            if (fx->s.apply(x) != x) continue;
            ++fixed_count;
            full += std::exp(
                std::complex<double>(0.0, 2 * M_PI * cls.rep.at(x).value()));
          }
          REQUIRE(fixed_count == nu.fixed_point_count);
          REQUIRE(std::abs(full.imag()) < 1e-9);
          REQUIRE(std::abs(std::abs(full.real()) -
                           std::sqrt(static_cast<double>(nu.fixed_point_count *
                                                         nu.hbar_s_size))) < 1e-9);
          REQUIRE((full.real() > 0 ? +1 : -1) == cls.sign);
          ++signs_checked;
        }
      }
    }
  }
  pass("criterion 5: |imag| < 1e-9 and the sqrt magnitude law hold for " +
       std::to_string(signs_checked) + " produced nu classes");
}

TEST_CASE("criterion 6: Ising report") {
  for (int tau : {+1, -1}) {
    const Group z2 = parse_group("Z2");
    const ClassificationReport rep = classify(make_ty(z2, parse_form("1/2", z2), tau));
    REQUIRE(rep.induced.size() == 1);
    REQUIRE(rep.equivariant.empty());
    REQUIRE(rep.obstructed.empty());
    REQUIRE(rep.fiber_functor_count == 0);
    REQUIRE_FALSE(rep.group_theoretical);
  }
  pass("criterion 6: Ising (tau = +/-): induced 1, equivariant 0, fiber 0, not "
       "group-theoretical");
}

TEST_CASE("criterion 7: Z4 with chi = 1/4") {
  const Group z4 = parse_group("Z4");
  {
    const ClassificationReport rep = classify(make_ty(z4, parse_form("1/4", z4), +1));
    REQUIRE(rep.equivariant.size() == 1);
    REQUIRE(rep.equivariant[0].pair.h.elements == std::vector<Elem>{{0}, {2}});
    REQUIRE(rep.equivariant[0].pair.xi.b == zero_form(rep.equivariant[0].pair.h.group).b);
    REQUIRE(rep.equivariant[0].nu.admissible.size() == 1);
    REQUIRE(rep.group_theoretical);
    REQUIRE(rep.lagrangian_witnesses.size() == 1);
    REQUIRE(rep.lagrangian_witnesses[0].elements == std::vector<Elem>{{0}, {2}});
  }
  {
    const ClassificationReport rep = classify(make_ty(z4, parse_form("1/4", z4), -1));
    REQUIRE(rep.equivariant.empty());
    REQUIRE(rep.obstructed.size() == 1);
    REQUIRE(rep.obstructed[0].pair.h.elements == std::vector<Elem>{{0}, {2}});
  }
  pass("criterion 7: Z4: tau=+ gives one equivariant class on ({0,2}, triv) with "
       "Lagrangian {0,2}; tau=- obstructs it");
}

TEST_CASE("criterion 8: Z2xZ2 hyperbolic fiber functors via both routes") {
  const Group g = parse_group("Z2xZ2");
  const Bicharacter chi = parse_form("0,1/2;1/2,0", g);
  const Int expected[2] = {3, 1};
  int idx = 0;
  for (int tau : {+1, -1}) {
    const TYData ty = make_ty(g, chi, tau);
    const FiberFunctors ff = fiber_functors(ty);
    REQUIRE(ff.count == expected[idx]);
    // the Tambara (s, mu) route agrees pairwise and in total
    Int tambara_total = 0;
    for (const EquivariantEntry& e : ff.entries) {
      REQUIRE(e.tambara.sign_matched == static_cast<Int>(e.nu.admissible.size()));
      tambara_total += e.tambara.sign_matched;
    }
    REQUIRE(tambara_total == expected[idx]);
    REQUIRE(classify(ty).fiber_functor_count == expected[idx]);
    ++idx;
  }
  pass("criterion 8: Z2xZ2 hyperbolic: 3 fiber functors at tau=+, 1 at tau=-, "
       "solve_nu and Tambara routes agree");
}

TEST_CASE("criterion 9: E groups over the whole battery") {
  Int pairs_checked = 0, fixed_checked = 0;
  for (const auto& c : battery_cases()) {
    const TYData ty = battery_ty(c, +1);
    for (const VecAPair& pair : enumerate_pairs(ty.a)) {
      const EGroup e = e_group(ty, pair);
      Int prod = 1;
      for (Int d : e.snf_type) prod *= d;
      REQUIRE(prod == ty.a.order());
      REQUIRE(e.size() == ty.a.order());
      ++pairs_checked;
      const auto fx = is_sigma_fixed(ty, pair);
      if (!fx) continue;
      const NuSolveResult nu = solve_nu(ty, pair, *fx);
      const SigmaOnE se = sigma_on_e(ty, pair, *fx, e, nu.nu0);
      for (size_t i = 0; i < se.action.size(); ++i)
        REQUIRE(se.action[static_cast<size_t>(se.action[i])] == static_cast<Int>(i));
      REQUIRE(se.obstruction_trivial == nu.presign_solvable);
      ++fixed_checked;
    }
  }
  pass("criterion 9: |E| = |A| on " + std::to_string(pairs_checked) +
       " pairs; sigma^2 = id on E and obstruction agreement on " +
       std::to_string(fixed_checked) + " fixed pairs");
}

TEST_CASE("criterion 10: group-theoreticity iff Lagrangian existence") {
  Int checked = 0;
  for (const auto& c : battery_cases()) {
    const TYData ty = battery_ty(c, +1);
    // is_group_theoretical aborts if the two criteria disagree
    const GroupTheoreticity gt = is_group_theoretical(ty);
    bool any_fixed = false;
    for (const VecAPair& pair : enumerate_pairs(ty.a))
      any_fixed |= is_sigma_fixed(ty, pair).has_value();
    REQUIRE(gt.value == any_fixed);
    ++checked;
  }

  // 20 randomized nondegenerate symmetric forms on groups of order <= 16
  std::mt19937_64 rng(424242);
  const std::vector<std::string> pool = {"Z2",   "Z3",   "Z4",     "Z2xZ2", "Z5",
                                         "Z6",   "Z7",   "Z8",     "Z2xZ4", "Z2xZ2xZ2",
                                         "Z9",   "Z3xZ3", "Z10",   "Z12",   "Z2xZ6",
                                         "Z16",  "Z4xZ4", "Z2xZ8", "Z15",   "Z2xZ2xZ4"};
  Int randomized = 0;
  while (randomized < 20) {
    const Group g =
        parse_group(pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)]);
    Bicharacter chi = zero_form(g);
    for (Int i = 0; i < g.rank(); ++i)
      for (Int j = i; j < g.rank(); ++j) {
        const Int m = std::gcd(g.order_of_factor(i), g.order_of_factor(j));
        const Phase p(std::uniform_int_distribution<Int>(0, m - 1)(rng), m);
        chi.b[i][j] = p;
        chi.b[j][i] = p;
      }
    if (!is_nondegenerate(chi)) continue;
    const TYData ty = make_ty(g, chi, +1);
    const GroupTheoreticity gt = is_group_theoretical(ty);
    bool any_fixed = false;
    for (const VecAPair& pair : enumerate_pairs(ty.a))
      any_fixed |= is_sigma_fixed(ty, pair).has_value();
    REQUIRE(gt.value == any_fixed);
    ++randomized;
    ++checked;
  }
  pass("criterion 10: Lagrangian existence <=> sigma-fixed-pair existence on " +
       std::to_string(checked) + " metric groups (battery + 20 randomized)");
}

TEST_CASE("CLI surface: subcommands, exit codes, sweep, env budget") {
  // listing commands
  REQUIRE(run_cli("subgroups --group Z2xZ4 --format json").find("\"count\": 8") !=
          std::string::npos);
  REQUIRE(run_cli("forms --group Z2xZ4 --format json").find("\"count\": 2") !=
          std::string::npos);
  REQUIRE(run_cli("lagrangians --group Z2xZ2 --chi \"0,1/2;1/2,0\" --format json")
              .find("\"count\": 3") != std::string::npos);
  REQUIRE(run_cli("sigma --group Z2 --chi 1/2 --H \"(1)\" --format json")
              .find("\"fixed\": false") != std::string::npos);
  REQUIRE(run_cli("fiber --group Z2xZ2 --chi \"0,1/2;1/2,0\" --tau=+ --format json")
              .find("\"fiber_functor_count\": 3") != std::string::npos);
  REQUIRE(run_cli("dual --group Z4 --chi 1/4 --H \"(2)\" --format json")
              .find("\"dual_pointed\": true") != std::string::npos);
  REQUIRE(run_cli("selfcheck --seed 7 --format json").find("\"ok\": true") !=
          std::string::npos);

  // formats
  REQUIRE(run_cli("classify --group Z2 --chi 1/2 --tau=+ --format csv")
              .rfind("path,value\n", 0) == 0);
  REQUIRE(run_cli("classify --group Z2 --chi 1/2 --tau=+ --format text")
              .find("group_theoretical: false") != std::string::npos);

  // exit codes: 1 for validation failures
  run_cli("classify --group Z2 --chi 1/3 --tau=+", 1);
  run_cli("classify --group Z0 --chi 1/2 --tau=+", 1);
  run_cli("classify --group Z2 --chi 0 --tau=+", 1);  // degenerate chi

  // sweep: ordered, deterministic across workers, bad lines exit 1
  const std::string sweep_path = std::string(TYMOD_BUILD_DIR) + "/sweep_input.txt";
  {
    std::ofstream out(sweep_path);
    out << "# comment\nZ2|1/2|+\nZ4|1/4|-\nZ2xZ2|0,1/2;1/2,0|+\n";
  }
  const std::string s1 = run_cli("sweep --sweep " + sweep_path + " --workers 1");
  const std::string s4 = run_cli("sweep --sweep " + sweep_path + " --workers 4");
  REQUIRE(s1 == s4);
  {
    std::ofstream out(sweep_path);
    out << "Z2|1/2|+\nZ2|1/3|+\n";
  }
  const std::string bad = run_cli("sweep --sweep " + sweep_path, 1);
  REQUIRE(bad.find("\"error\"") != std::string::npos);
  REQUIRE(bad.find("\"report\"") != std::string::npos);  // good line still processed

  // TYMOD_BUDGET drives the default budget; the flag overrides it
  {
    const std::string out_path = std::string(TYMOD_BUILD_DIR) + "/cli_env.out";
    const std::string base = std::string("TYMOD_BUDGET=2 ") + TYMOD_CLI_PATH;
    int rc = std::system((base + " classify --group Z4 --chi 1/4 --tau=+ > " + out_path +
                          " 2>/dev/null").c_str());
    REQUIRE(WEXITSTATUS(rc) == 1);
    rc = std::system((base + " classify --group Z4 --chi 1/4 --tau=+ --budget 16 > " +
                      out_path + " 2>/dev/null").c_str());
    REQUIRE(WEXITSTATUS(rc) == 0);
  }
  pass("CLI surface: all subcommands, formats, exit codes, sweep ordering and "
       "TYMOD_BUDGET behave");
}

TEST_CASE("criterion 11: CLI determinism, goldens, and the Z2 timing gate") {
  for (const auto& c : golden_cases()) {
    const std::string args = std::string("classify --group ") + c.group + " --chi \"" +
                             c.chi + "\" --tau=" + c.tau + " --format json";
    const std::string run1 = run_cli(args + " --workers 1");
    const std::string run2 = run_cli(args + " --workers 1");
    const std::string run8 = run_cli(args + " --workers 8");
    REQUIRE(run1 == run2);
    REQUIRE(run1 == run8);
    const std::string golden =
        read_file(std::string(TYMOD_GOLDEN_DIR) + "/" + c.name + ".json");
    REQUIRE_MESSAGE(run1 == golden, (std::string("golden mismatch for ") + c.name).c_str());
  }
  const auto t0 = std::chrono::steady_clock::now();
  run_cli("classify --group Z2 --chi 1/2 --tau + --format json");
  const double dt = seconds_since(t0);
  REQUIRE(dt < 1.0);
  pass("criterion 11: six goldens byte-identical across runs and worker counts 1/8; "
       "classify Z2 took " + std::to_string(dt) + " s (< 1 s)");
}
