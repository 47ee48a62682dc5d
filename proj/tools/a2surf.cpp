#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "a2surf/a2surf.hpp"
#include "a2surf/acceptance.hpp"

using namespace a2surf;
using nlohmann::json;

namespace {

Diagram read_diagram(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return parse_mgd(ss.str());
  }
  return load_diagram(path);
}

json laurent_json(const LaurentA& p) {
  json j = json::object();
  for (const auto& [e, c] : p.terms()) j[std::to_string(e)] = c.str();
  return j;
}

json surface_json(const SurfacePoly& p) {
  json terms = json::array();
  for (const auto& [k, c] : p.terms()) terms.push_back({{"x", k.first}, {"y", k.second}, {"a", laurent_json(c)}});
  return {{"text", p.str()}, {"terms", terms}};
}

json quotient_json(const QuotientPoly& p) {
  json terms = json::array();
  for (const auto& [k, c] : p.terms()) {
    json co = json::array();
    for (const auto& v : c.coeffs()) co.push_back(v.str());
    terms.push_back({{"x", k.first}, {"y", k.second}, {"coeffs", co}});
  }
  return {{"modulus", modulus_name(p.modulus())}, {"text", p.str()}, {"terms", terms}};
}

std::string complex_text(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12f%+.12fi", z.real(), z.imag());
  return buf;
}

std::string state_text(const State& s) {
  std::string out;
  for (auto v : s) out += v == Smoothing::TInf ? 'I' : '0';
  return out;
}

void emit(const json& j, bool as_json, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_eval(const std::string& file, bool as_json) {
  Diagram d = read_diagram(file);
  validate(d);
  InvariantReport rep = surface_poly(d);
  json states = json::array();
  std::ostringstream os;
  for (const auto& r : rep.states)
    states.push_back({{"state", state_text(r.state)}, {"x", r.x_deg}, {"y", r.y_deg}, {"bracket", r.bracket.str()}});
  os << rep.poly.str() << "\n";
  emit({{"writhe", rep.writhe}, {"marked", rep.marked_count}, {"invariant", surface_json(rep.poly)}, {"states", states}},
       as_json, os.str());
  return 0;
}

int cmd_bracket(const std::string& file, bool as_json) {
  Diagram d = read_diagram(file);
  validate(d);
  LaurentA raw = a2_bracket(d);
  LaurentA norm = raw.shifted(8 * writhe(d));
  std::ostringstream os;
  os << "bracket: " << raw.str() << "\nnormalized: " << norm.str() << "\n";
  emit({{"writhe", writhe(d)}, {"bracket", raw.str()}, {"normalized", norm.str()}}, as_json, os.str());
  return 0;
}

int cmd_specialize(const std::string& file, const std::string& mod, bool p9star, bool as_json) {
  Diagram d = read_diagram(file);
  validate(d);
  Modulus m = p9star ? Modulus::PHI18 : parse_modulus(mod);
  QuotientPoly q = specialize(d, m);
  json j = quotient_json(q);
  std::ostringstream os;
  os << q.str() << "\n";
  if (p9star) {
    json c = json::array();
    for (const auto& [k, z] : to_complex(q)) {
      c.push_back({{"x", k.first}, {"y", k.second}, {"re", z.real()}, {"im", z.imag()}});
      os << detail::xy_text(k) << ": " << complex_text(z) << "\n";
    }
    j["p9star"] = c;
    j["tolerance"] = kP9Tolerance;
  }
  emit(j, as_json, os.str());
  return 0;
}

int cmd_conway(const std::string& file, bool as_json) {
  Diagram d = read_diagram(file);
  validate(d);
  std::ostringstream os;
  json j;
  if (marked_vertices(d).empty()) {
    ZPoly z = conway_poly(d);
    QuotientElem e = evaluate_in_quotient(z);
    os << "conway: " << z.str() << "\nin phi18: " << e.str() << "\n";
    j = {{"conway", z.str()}, {"phi18", e.str()}};
  } else {
    QuotientPoly q = conway_state_sum(d);
    os << q.str() << "\n";
    j = quotient_json(q);
  }
  emit(j, as_json, os.str());
  return 0;
}

int cmd_moves(const std::string& file, const std::string& move, bool all_sites, bool insertions, bool as_json) {
  Diagram d = read_diagram(file);
  validate(d);
  MoveId m = parse_move(move);
  auto sites = find_sites(d, m);
  if (insertions) {
    auto ins = find_insertion_sites(d, m);
    sites.insert(sites.end(), ins.begin(), ins.end());
  }
  std::ostringstream os;
  os << sites.size() << " site(s) for " << move_name(m) << "\n";
  json js = json::array();
  bool all_hold = true;
  for (size_t i = 0; i < sites.size(); ++i) {
    if (!all_sites && i > 0) break;
    MoveBehavior b = move_behavior_report(d, sites[i]);
    all_hold = all_hold && b.holds;
    os << "site " << i << ": " << sites[i].text() << "\n  law: " << b.law << "\n  holds: " << (b.holds ? "yes" : "no")
       << "\n  before: " << b.inv_before.str() << "\n  after: " << b.inv_after.str() << "\n";
    if (b.quotient) os << "  quotient: " << b.quotient->str() << "\n";
    json e = {{"site", sites[i].text()},
              {"law", b.law},
              {"holds", b.holds},
              {"before", surface_json(b.inv_before)},
              {"after", surface_json(b.inv_after)},
              {"result", serialize_mgd(b.after)}};
    if (b.quotient) e["quotient"] = surface_json(*b.quotient);
    js.push_back(e);
  }
  emit({{"move", move_name(m)}, {"site_count", sites.size()}, {"checked", js}}, as_json, os.str());
  return all_hold ? 0 : 1;
}

std::string labeling_text(const TableResult& t) {
  std::ostringstream os;
  for (size_t k = 0; k < t.labeling.size(); ++k) os << (k ? " " : "") << k << "->" << t.labeling[k];
  return os.str();
}

int cmd_tables(int vmax, bool as_json) {
  TablesReport rep = reproduce_tables(load_templates(), vmax, vmax);
  std::ostringstream os;
  os << "3-tangles: " << rep.t1.matched << "/" << rep.t1.spec.entries() << " entries match; 4-tangles: " << rep.t2.matched
     << "/" << rep.t2.spec.entries() << " entries match; labeling: [" << labeling_text(rep.t1) << "] ["
     << labeling_text(rep.t2) << "]\n";
  auto tj = [](const TableResult& t) {
    return json{{"matched", t.matched},
                {"entries", t.spec.entries()},
                {"labelings_matching_cells", t.table_consistent},
                {"labelings_matching_decompositions", t.decomposition_consistent},
                {"labeling", t.labeling}};
  };
  emit({{"tangles3", tj(rep.t1)}, {"tangles4", tj(rep.t2)}}, as_json, os.str());
  return rep.ok() ? 0 : 1;
}

int cmd_enumerate(int n, int vmax) {
  auto ts = enumerate_fundamental(n, vmax);
  std::cout << "# " << ts.size() << " fundamental " << n << "-tangles\n";
  for (size_t i = 0; i < ts.size(); ++i) {
    std::cout << "\n# tangle " << i << ", " << ts[i].vertices.size() << " vertices\n" << serialize_mgd(ts[i]);
  }
  return 0;
}

int cmd_reproduce(std::uint64_t seed, int jobs, bool as_json) {
  auto results = run_acceptance(seed, jobs);
  bool all = true;
  std::ostringstream os;
  json j = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    char id[8];
    std::snprintf(id, sizeof id, "%2d", r.id);
    os << id << "  " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
    j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  emit({{"seed", seed}, {"criteria", j}, {"all_pass", all}}, as_json, os.str());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"A2 bracket invariants of marked graph diagrams"};
  app.require_subcommand(1);
  std::string report = "text", file, mod = "a6+1", move = "g1";
  bool p9star = false, all_sites = false, insertions = false;
  int vmax = -1, jobs = 1, boundary = 3;
  std::uint64_t seed = kDefaultSeed;
  auto add_report = [&](CLI::App* c) {
    c->add_option("--report", report, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* eval = app.add_subcommand("eval", "Invariant <<D>> of a closed marked graph diagram");
  eval->add_option("file", file, "MGD file, or - for stdin")->required();
  add_report(eval);

  auto* bracket = app.add_subcommand("bracket", "A2 bracket of a link diagram");
  bracket->add_option("file", file)->required();
  add_report(bracket);

  auto* spec = app.add_subcommand("specialize", "Invariant reduced modulo a6+1, a12+1 or phi18");
  spec->add_option("file", file)->required();
  spec->add_option("--mod", mod, "a6+1, a12+1 or phi18");
  spec->add_flag("--p9star", p9star, "Evaluate at exp(2 pi i/18)");
  add_report(spec);

  auto* conway = app.add_subcommand("conway", "Conway polynomial, or its state sum for marked diagrams");
  conway->add_option("file", file)->required();
  add_report(conway);

  auto* moves = app.add_subcommand("moves-check", "Find move sites and check the move's law");
  moves->add_option("file", file)->required();
  moves->add_option("--move", move, "G1, G1', G2, G3, G4, G4', G5, G6, G6', G7 or G8")->required();
  moves->add_flag("--all-sites", all_sites, "Check every site instead of the first");
  moves->add_flag("--insertions", insertions, "Also offer kink, bigon and closure insertions on edges");
  add_report(moves);

  auto* tables = app.add_subcommand("tables", "Gram tables of fundamental 3- and 4-tangles");
  tables->add_option("--vmax", vmax, "Vertex bound for the enumeration");
  add_report(tables);

  auto* enumerate = app.add_subcommand("enumerate", "Fundamental n-tangles as an MGD bundle");
  enumerate->add_option("--boundary", boundary, "Number of strands n (2n boundary points)");
  enumerate->add_option("--vmax", vmax, "Vertex bound");

  auto* repro = app.add_subcommand("reproduce", "Run every acceptance check and print a pass/fail matrix");
  repro->add_option("--seed", seed, "Seed for the randomized suites");
  repro->add_option("--jobs", jobs, "Criteria run concurrently")->check(CLI::PositiveNumber);
  add_report(repro);

  CLI11_PARSE(app, argc, argv);
  const bool as_json = report == "json";
  try {
    if (*eval) return cmd_eval(file, as_json);
    if (*bracket) return cmd_bracket(file, as_json);
    if (*spec) return cmd_specialize(file, mod, p9star, as_json);
    if (*conway) return cmd_conway(file, as_json);
    if (*moves) return cmd_moves(file, move, all_sites, insertions, as_json);
    if (*tables) return cmd_tables(vmax, as_json);
    if (*enumerate) return cmd_enumerate(boundary, vmax);
    if (*repro) return cmd_reproduce(seed, jobs, as_json);
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "invalid diagram: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
