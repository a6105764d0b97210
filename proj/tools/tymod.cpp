#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "tymod/io.hpp"
#include "tymod/selfcheck.hpp"

namespace {

using namespace tymod;

struct Options {
  std::string group_spec;
  std::string chi_spec;
  std::string tau_spec = "+";
  std::string h_spec;
  std::string xi_spec;
  std::string format = "json";
  std::string sweep_file;
  Int budget = 4096;
  bool budget_set = false;
  Int seed = 1;
  int workers = 1;
};

Int resolved_budget(const Options& opt) {
  if (opt.budget_set) return opt.budget;
  if (const char* env = std::getenv("TYMOD_BUDGET")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw validation_error("TYMOD_BUDGET is not an integer: '" + std::string(env) + "'");
    }
  }
  return opt.budget;
}

std::string emit(const Options& opt, const Json& j) {
  if (opt.format == "json") return render_json(j);
  if (opt.format == "csv") return render_csv(j);
  if (opt.format == "text") return render_text(j);
  throw validation_error("unknown format '" + opt.format + "'");
}

Json input_json(const TYData& ty, Int budget) {
  return Json{{"group", ty.a.str()},
              {"order", ty.a.order()},
              {"chi", form_to_string(ty.chi)},
              {"tau", ty.tau > 0 ? "+" : "-"},
              {"budget", budget}};
}

TYData ty_from(const Options& opt) {
  const Group g = parse_group(opt.group_spec);
  const Bicharacter chi = parse_form(opt.chi_spec, g);
  return make_ty(g, chi, parse_tau(opt.tau_spec));
}

VecAPair pair_from(const Options& opt, const TYData& ty) {
  const Subgroup h = make_subgroup(ty.a, parse_elem_list(opt.h_spec, ty.a));
  AlternatingForm xi =
      opt.xi_spec.empty() ? zero_form(h.group) : parse_form(opt.xi_spec, h.group);
  if (!is_alternating(xi))
    throw validation_error("--xi is not an alternating form (in the printed basis of H)");
  return VecAPair{h, std::move(xi)};
}

int cmd_classify(const Options& opt) {
  const TYData ty = ty_from(opt);
  const Int budget = resolved_budget(opt);
  const ClassificationReport rep = classify(ty, budget, opt.workers);
  for (const std::string& note : rep.notes) std::cerr << "note: " << note << "\n";
  std::cout << emit(opt, classify_json(rep, budget));
  return 0;
}

int cmd_subgroups(const Options& opt) {
  const Group g = parse_group(opt.group_spec);
  Json j;
  j["group"] = g.str();
  j["order"] = g.order();
  j["subgroups"] = Json::array();
  const auto subs = enumerate_subgroups(g, resolved_budget(opt));
  for (const Subgroup& s : subs) j["subgroups"].push_back(subgroup_json(s));
  j["count"] = subs.size();
  std::cout << emit(opt, j);
  return 0;
}

int cmd_forms(const Options& opt) {
  const Group g = parse_group(opt.group_spec);
  Json j;
  j["group"] = g.str();
  Group base = g;
  if (!opt.h_spec.empty()) {
    const Subgroup h = make_subgroup(g, parse_elem_list(opt.h_spec, g));
    j["H"] = subgroup_json(h);
    base = h.group;
  }
  j["forms"] = Json::array();
  const auto forms = enumerate_alternating_forms(base);
  for (const AlternatingForm& f : forms) j["forms"].push_back(form_to_string(f));
  j["count"] = forms.size();
  std::cout << emit(opt, j);
  return 0;
}

int cmd_lagrangians(const Options& opt) {
  const Group g = parse_group(opt.group_spec);
  const Bicharacter chi = parse_form(opt.chi_spec, g);
  Json j;
  j["group"] = g.str();
  j["chi"] = form_to_string(chi);
  j["lagrangians"] = Json::array();
  const auto ls = lagrangians(g, chi);
  for (const Subgroup& l : ls) j["lagrangians"].push_back(subgroup_json(l));
  j["count"] = ls.size();
  std::cout << emit(opt, j);
  return 0;
}

Json orbit_json(const TYData& ty, const VecAPair& pair) {
  Json j;
  j["pair"] = pair_json(pair);
  const VecAPair image = sigma_act(ty, pair);
  j["image"] = pair_json(image);
  const auto fx = is_sigma_fixed(ty, pair);
  j["fixed"] = fx.has_value();
  if (fx) {
    j["hbar_type"] = fx->hbar.str();
    j["s"] = fx->s.matrix;
  } else {
    j["hbar_type"] = nullptr;
    j["s"] = nullptr;
  }
  return j;
}

int cmd_sigma(const Options& opt) {
  const TYData ty = ty_from(opt);
  Json j;
  j["input"] = input_json(ty, resolved_budget(opt));
  if (!opt.h_spec.empty()) {
    const VecAPair pair = pair_from(opt, ty);
    Json oj = orbit_json(ty, pair);
    for (auto& [k, v] : oj.items()) j[k] = v;
  } else {
    j["orbits"] = Json::array();
    for (const VecAPair& pair : enumerate_pairs(ty.a, resolved_budget(opt)))
      j["orbits"].push_back(orbit_json(ty, pair));
  }
  std::cout << emit(opt, j);
  return 0;
}

int cmd_fiber(const Options& opt) {
  const TYData ty = ty_from(opt);
  const FiberFunctors ff = fiber_functors(ty, resolved_budget(opt));
  Json j;
  j["input"] = input_json(ty, resolved_budget(opt));
  j["fiber_functor_count"] = ff.count;
  j["entries"] = Json::array();
  for (const EquivariantEntry& e : ff.entries) {
    Json ej;
    ej["xi"] = form_to_string(e.pair.xi);
    ej["hbar_type"] = e.fixed.hbar.str();
    ej["classes"] = Json::array();
    for (const NuClass& c : e.nu.admissible) {
      Json cj = Json::object();
      for (Int i = 0; i < c.rep.domain.order(); ++i)
        cj[elem_to_string(c.rep.domain.element_at(i))] = c.rep.at_index(i).str();
      ej["classes"].push_back(std::move(cj));
    }
    ej["tambara_sign_matched"] = e.tambara.sign_matched;
    j["entries"].push_back(std::move(ej));
  }
  std::cout << emit(opt, j);
  return 0;
}

int cmd_dual(const Options& opt) {
  const TYData ty = ty_from(opt);
  Json j;
  j["input"] = input_json(ty, resolved_budget(opt));
  const auto entry = [&ty](const VecAPair& pair) {
    const DualReportData d = dual_report(ty, pair);
    Json ej;
    ej["pair"] = pair_json(pair);
    ej["e_type"] = d.e_type;
    ej["dual_pointed"] = d.dual_pointed;
    return ej;
  };
  if (!opt.h_spec.empty()) {
    Json ej = entry(pair_from(opt, ty));
    for (auto& [k, v] : ej.items()) j[k] = v;
  } else {
    j["duals"] = Json::array();
    for (const VecAPair& pair : enumerate_pairs(ty.a, resolved_budget(opt)))
      j["duals"].push_back(entry(pair));
  }
  std::cout << emit(opt, j);
  return 0;
}

int cmd_sweep(const Options& opt) {
  std::ifstream in(opt.sweep_file);
  if (!in) throw validation_error("cannot open sweep file '" + opt.sweep_file + "'");
  struct Line {
    Int number;
    std::string spec;
  };
  std::vector<Line> lines;
  std::string raw;
  Int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    bool blank = true;
    for (char c : raw)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    lines.push_back(Line{number, raw});
  }

  const Int budget = resolved_budget(opt);
  std::vector<Json> results(lines.size());
  std::vector<int> codes(lines.size(), 0);
  const auto run_line = [&](size_t i) {
    const std::string& spec = lines[i].spec;
    Json out;
    out["line"] = lines[i].number;
    try {
      std::vector<std::string> parts;
      std::string cur;
      for (char c : spec) {
        if (c == '|') {
          parts.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      parts.push_back(cur);
      if (parts.size() != 3)
        throw validation_error("sweep line must be group|chi|tau");
      auto strip_ws = [](std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
          s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        return s;
      };
      const Group g = parse_group(strip_ws(parts[0]));
      const TYData ty =
          make_ty(g, parse_form(strip_ws(parts[1]), g), parse_tau(strip_ws(parts[2])));
      out["report"] = classify_json(classify(ty, budget, 1), budget);
    } catch (const internal_error& e) {
      out["error"] = e.what();
      codes[i] = 2;
    } catch (const std::exception& e) {
      out["error"] = e.what();
      codes[i] = 1;
    }
    results[i] = std::move(out);
  };

  if (opt.workers <= 1) {
    for (size_t i = 0; i < lines.size(); ++i) run_line(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < opt.workers; ++t)
      pool.emplace_back([&]() {
        for (size_t i = next.fetch_add(1); i < lines.size(); i = next.fetch_add(1))
          run_line(i);
      });
    for (auto& th : pool) th.join();
  }

  Json j;
  j["sweep"] = Json::array();
  for (Json& r : results) j["sweep"].push_back(std::move(r));
  std::cout << emit(opt, j);
  int worst = 0;
  for (int c : codes) worst = std::max(worst, c);
  return worst;
}

int cmd_selfcheck(const Options& opt) {
  const auto results = run_selfcheck(opt.seed);
  bool all_ok = true;
  Json j;
  j["selfcheck"] = Json::array();
  for (const SelfCheckResult& r : results) {
    all_ok &= r.ok;
    j["selfcheck"].push_back(
        Json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
    if (opt.format == "text")
      std::cout << (r.ok ? "ok " : "FAIL ") << r.name
                << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
  }
  j["ok"] = all_ok;
  if (opt.format != "text") std::cout << emit(opt, j);
  if (!all_ok) throw internal_error("selfcheck failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classification of module categories over Tambara-Yamagami fusion "
               "categories and analysis of metric finite abelian groups"};
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&opt](CLI::App* cmd, bool with_workers = false) {
    cmd->add_option("--format", opt.format, "Output format: json, csv or text")
        ->default_val("json");
    cmd->add_option("--budget", opt.budget, "Maximum |A| (default 4096; TYMOD_BUDGET overrides)")
        ->each([&opt](const std::string&) { opt.budget_set = true; });
    if (with_workers)
      cmd->add_option("--workers", opt.workers, "Concurrent workers")->default_val(1);
  };

  auto* classify_cmd = app.add_subcommand("classify", "Full classification report");
  classify_cmd->add_option("--group", opt.group_spec, "Group, e.g. Z2xZ4")->required();
  classify_cmd->add_option("--chi", opt.chi_spec, "Bicharacter matrix, e.g. 0,1/2;1/2,0")
      ->required();
  classify_cmd->add_option("--tau", opt.tau_spec, "Sign of tau: + or -")->required();
  add_common(classify_cmd, true);

  auto* subgroups_cmd = app.add_subcommand("subgroups", "List all subgroups");
  subgroups_cmd->add_option("--group", opt.group_spec)->required();
  add_common(subgroups_cmd);

  auto* forms_cmd = app.add_subcommand("forms", "List alternating forms");
  forms_cmd->add_option("--group", opt.group_spec)->required();
  forms_cmd->add_option("--H", opt.h_spec, "Subgroup generators, e.g. \"(1,0);(0,2)\"");
  add_common(forms_cmd);

  auto* lagrangians_cmd = app.add_subcommand("lagrangians", "List Lagrangian subgroups");
  lagrangians_cmd->add_option("--group", opt.group_spec)->required();
  lagrangians_cmd->add_option("--chi", opt.chi_spec)->required();
  add_common(lagrangians_cmd);

  auto* sigma_cmd = app.add_subcommand("sigma", "Apply the sigma action to module pairs");
  sigma_cmd->add_option("--group", opt.group_spec)->required();
  sigma_cmd->add_option("--chi", opt.chi_spec)->required();
  sigma_cmd->add_option("--tau", opt.tau_spec)->default_val("+");
  sigma_cmd->add_option("--H", opt.h_spec, "Subgroup generators of one pair");
  sigma_cmd->add_option("--xi", opt.xi_spec, "Alternating form on H (in its printed basis)");
  add_common(sigma_cmd);

  auto* fiber_cmd = app.add_subcommand("fiber", "Count fiber functors (H = A classes)");
  fiber_cmd->add_option("--group", opt.group_spec)->required();
  fiber_cmd->add_option("--chi", opt.chi_spec)->required();
  fiber_cmd->add_option("--tau", opt.tau_spec)->required();
  add_common(fiber_cmd);

  auto* dual_cmd = app.add_subcommand("dual", "Dual-category data per pair");
  dual_cmd->add_option("--group", opt.group_spec)->required();
  dual_cmd->add_option("--chi", opt.chi_spec)->required();
  dual_cmd->add_option("--tau", opt.tau_spec)->default_val("+");
  dual_cmd->add_option("--H", opt.h_spec);
  dual_cmd->add_option("--xi", opt.xi_spec);
  add_common(dual_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Classify each group|chi|tau line of a file");
  sweep_cmd->add_option("--sweep", opt.sweep_file, "Input file")->required();
  add_common(sweep_cmd, true);

  auto* selfcheck_cmd = app.add_subcommand("selfcheck", "Run the internal oracle suites");
  selfcheck_cmd->add_option("--seed", opt.seed, "Seed for randomized suites")->default_val(1);
  add_common(selfcheck_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return cmd_classify(opt);
    if (subgroups_cmd->parsed()) return cmd_subgroups(opt);
    if (forms_cmd->parsed()) return cmd_forms(opt);
    if (lagrangians_cmd->parsed()) return cmd_lagrangians(opt);
    if (sigma_cmd->parsed()) return cmd_sigma(opt);
    if (fiber_cmd->parsed()) return cmd_fiber(opt);
    if (dual_cmd->parsed()) return cmd_dual(opt);
    if (sweep_cmd->parsed()) return cmd_sweep(opt);
    if (selfcheck_cmd->parsed()) return cmd_selfcheck(opt);
  } catch (const tymod::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const tymod::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
