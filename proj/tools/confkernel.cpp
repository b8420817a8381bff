// confkernel: check algebras, maps, bimaps and modules; run the bounded solvers.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "confkernel/biderivations.hpp"
#include "confkernel/catalog.hpp"
#include "confkernel/maps.hpp"
#include "confkernel/modules.hpp"
#include "confkernel/parser.hpp"
#include "confkernel/report.hpp"
#include "confkernel/solver.hpp"
#include "confkernel/textio.hpp"

using namespace confkernel;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string format = "text";
  std::string output;
  bool timing = false;

  // sources
  std::string builtin, file, algebra, target;
  std::vector<std::string> params, target_params;
  bool symbolic = false;
  unsigned degree = 3;
  std::string as = "derivation";

  // solvers
  std::string parity = "both";
  unsigned bound = 3;
  int bound_lam = -1;
  std::map<std::string, std::string> shorthand;  // flag -> value

  std::string input;  // report
  std::string listing = "all";
};

ParamValues parse_params(const std::vector<std::string>& items) {
  ParamValues out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + item + "'");
    std::string name = trim(item.substr(0, eq));
    try {
      out[name] = parse_rational(trim(item.substr(eq + 1)));
    } catch (const std::exception& e) {
      throw UsageError("--param " + name + ": " + e.what());
    }
  }
  return out;
}

ParamValues all_params(const Options& o) {
  ParamValues v = parse_params(o.params);
  for (const auto& [name, text] : o.shorthand) {
    if (text.empty()) continue;
    try {
      v[name] = parse_rational(text);
    } catch (const std::exception& e) {
      throw UsageError("--" + name + ": " + e.what());
    }
  }
  return v;
}

Json param_json(const ParamValues& v) {
  Json j = Json::object();
  for (const auto& [k, x] : v) j[k] = to_string(x);
  return j;
}

BuildOptions build_options(const Options& o, const ParamValues& values) {
  BuildOptions b;
  b.values = values;
  b.symbolic = o.symbolic;
  b.generic_degree = o.degree;
  return b;
}

// Algebra from --builtin / --file (check algebra) or --algebra (key or file path).
LcsAlgebra load_source_algebra(const std::string& key_or_file, bool is_file, const Options& o,
                               const ParamValues& values, Json& input) {
  if (is_file) {
    std::string text = read_file(key_or_file);
    input["file"] = key_or_file;
    input["content_digest"] = digest(text);
    LcsAlgebra raw = parse_algebra(text, key_or_file);
    std::vector<ParamSchema> schema;
    for (const auto& p : raw.params()) schema.push_back({p.name, p.nonzero, std::nullopt, false});
    return instantiate(raw, schema, build_options(o, values));
  }
  input["builtin"] = key_or_file;
  return build_algebra(key_or_file, build_options(o, values));
}

LcsAlgebra algebra_arg(const Options& o, const ParamValues& values, Json& input) {
  if (o.algebra.empty()) throw UsageError("--algebra is required");
  bool is_file = o.algebra.find('/') != std::string::npos || o.algebra.find('.') != std::string::npos;
  bool builtin = false;
  for (const auto& e : algebra_catalog()) builtin = builtin || e.key == o.algebra;
  Json sub;
  LcsAlgebra alg = load_source_algebra(o.algebra, is_file && !builtin, o, values, sub);
  input["algebra"] = sub;
  return alg;
}

void need_one_source(const Options& o) {
  if (o.builtin.empty() == o.file.empty()) throw UsageError("give exactly one of --builtin or --file");
}

Json cmd_check_algebra(const Options& o) {
  need_one_source(o);
  ParamValues values = all_params(o);
  Json input = {{"params", param_json(values)}, {"symbolic", o.symbolic}};
  LcsAlgebra alg = load_source_algebra(o.file.empty() ? o.builtin : o.file, !o.file.empty(), o, values, input);
  Json r = make_report("check algebra", input);
  r["checks"].push_back(to_json(check_parity_closure(alg)));
  r["checks"].push_back(to_json(check_skew_symmetry(alg)));
  r["checks"].push_back(to_json(check_jacobi(alg)));
  r["result"]["algebra"] = alg.name();
  r["result"]["generators"] = alg.generators();
  r["result"]["symbolic_parameters"] = alg.ring()->parameters();
  finalize(r);
  return r;
}

Json cmd_check_map(const Options& o) {
  if (o.file.empty()) throw UsageError("--file is required");
  ParamValues values = all_params(o);
  Json input = {{"params", param_json(values)}, {"symbolic", o.symbolic}, {"as", o.as}};
  LcsAlgebra alg = algebra_arg(o, values, input);
  std::string text = read_file(o.file);
  input["file"] = o.file;
  input["content_digest"] = digest(text);
  MapFile mf = parse_map(text, alg, o.file);
  Json r = make_report("check map", input);
  r["result"]["map"] = mf.name;
  if (o.as == "derivation") {
    r["checks"].push_back(to_json(is_derivation(alg, mf.map)));
  } else if (o.as == "automorphism") {
    PartialEndo s = to_partial_endo(mf, o.file);
    r["checks"].push_back(to_json(is_automorphism(s, alg)));
  } else if (o.as == "homomorphism") {
    if (o.target.empty()) throw UsageError("--as homomorphism needs --target");
    Options t = o;
    t.algebra = o.target;
    t.params = o.target_params;
    t.shorthand.clear();
    Json tin;
    LcsAlgebra target = algebra_arg(t, parse_params(o.target_params), tin);
    r["input"]["target"] = tin["algebra"];
    MapFile tf = parse_map(text, target, o.file);
    r["checks"].push_back(to_json(is_homomorphism(to_partial_endo(tf, o.file), alg, target)));
  } else {
    throw UsageError("--as must be derivation, automorphism or homomorphism");
  }
  finalize(r);
  return r;
}

Json cmd_check_bimap(const Options& o) {
  if (o.file.empty()) throw UsageError("--file is required");
  ParamValues values = all_params(o);
  Json input = {{"params", param_json(values)}, {"symbolic", o.symbolic}};
  LcsAlgebra alg = algebra_arg(o, values, input);
  std::string text = read_file(o.file);
  input["file"] = o.file;
  input["content_digest"] = digest(text);
  BiMapFile bf = parse_bimap(text, alg, o.file);
  Json r = make_report("check bimap", input);
  r["result"]["bimap"] = bf.name;
  r["checks"].push_back(to_json(is_biderivation(alg, bf.map)));
  FourTupleReport l = check_four_tuple(alg, bf.map);
  Json lj = to_json(l);
  if (!l.precondition) {
    // informational only when the map is not a biderivation
    r["result"]["four_tuple"] = lj;
  } else {
    r["checks"].push_back(lj);
  }
  finalize(r);
  return r;
}

Json cmd_check_module(const Options& o) {
  need_one_source(o);
  ParamValues values = all_params(o);
  Json input = {{"params", param_json(values)}, {"symbolic", o.symbolic}};
  ConformalModule m = [&] {
    if (!o.builtin.empty()) {
      input["builtin"] = o.builtin;
      return build_module(o.builtin, build_options(o, values));
    }
    std::string text = read_file(o.file);
    input["file"] = o.file;
    input["content_digest"] = digest(text);
    ConformalModule parsed = parse_module(text, o.file);
    if (!values.empty()) {
      // substitute module parameters
      std::vector<std::string> keep;
      std::vector<ParameterSpec> specs;
      for (const auto& p : parsed.params)
        if (!values.count(p.name)) specs.push_back(p);
      for (const auto& [k, v] : values)
        if (!parsed.ring()->find(k)) throw SchemaError("module has no parameter '" + k + "'");
      for (const auto& name : parsed.ring()->parameters())
        if (!values.count(name)) keep.push_back(name);
      RingPtr ring = Ring::standard(keep);
      for (auto& g : parsed.action)
        for (auto& row : g)
          for (auto& p : row) p = specialize(p, values, ring);
      Table t = parsed.algebra.table();
      for (auto& row : t)
        for (auto& vec : row)
          for (auto& p : vec) p = specialize(p, values, ring);
      std::vector<ParameterSpec> alg_specs;
      for (const auto& p : parsed.algebra.params())
        if (!values.count(p.name)) alg_specs.push_back(p);
      parsed.algebra = LcsAlgebra(parsed.algebra.name(), ring, parsed.algebra.generators(),
                                  parsed.algebra.parities(), alg_specs, std::move(t));
      parsed.params = specs;
    }
    return parsed;
  }();
  Json r = make_report("check module", input);
  r["checks"].push_back(to_json(is_module(m)));
  r["result"]["module"] = m.name;
  r["result"]["algebra"] = m.algebra_key;
  r["result"]["symbolic_parameters"] = m.ring()->parameters();
  finalize(r);
  return r;
}

std::vector<Parity> parities(const std::string& p) {
  if (p == "both") return {Parity::Even, Parity::Odd};
  return {parse_parity(p)};
}

unsigned bound_lam(const Options& o) { return o.bound_lam < 0 ? o.bound : static_cast<unsigned>(o.bound_lam); }

Json cmd_solve_derivations(const Options& o) {
  ParamValues values = all_params(o);
  Json input = {{"params", param_json(values)}, {"parity", o.parity}, {"bound", o.bound}, {"bound_lam", bound_lam(o)}};
  LcsAlgebra alg = algebra_arg(o, values, input);
  Json r = make_report("solve derivations", input);
  Json results = Json::array();
  for (Parity p : parities(o.parity)) {
    DerivationResult d = solve_derivations(alg, p, o.bound, bound_lam(o));
    results.push_back(to_json(d, alg));
  }
  r["result"]["derivations"] = results;
  finalize(r);
  return r;
}

Json cmd_solve_biderivations(const Options& o) {
  ParamValues values = all_params(o);
  Json input = {{"params", param_json(values)}, {"bound", o.bound}, {"bound_lam", bound_lam(o)}};
  LcsAlgebra alg = algebra_arg(o, values, input);
  Json r = make_report("solve biderivations", input);
  r["result"]["biderivations"] = to_json(solve_biderivations(alg, o.bound, bound_lam(o)), alg);
  finalize(r);
  return r;
}

Rational required(const Options& o, const std::string& name) {
  auto it = o.shorthand.find(name);
  if (it == o.shorthand.end() || it->second.empty()) throw UsageError("--" + name + " is required");
  try {
    return parse_rational(it->second);
  } catch (const std::exception& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

Json cmd_solve_keyeq(const Options& o) {
  Rational a = required(o, "a"), b = required(o, "b"), c = required(o, "c");
  Json input = {{"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)}, {"bound", o.bound}};
  Json r = make_report("solve keyeq", input);
  r["result"]["keyeq"] = to_json(solve_keyeq(a, b, c, o.bound));
  finalize(r);
  return r;
}

Json cmd_solve_modules(const Options& o) {
  Rational d0 = required(o, "Delta0"), d1 = required(o, "Delta1"), a = required(o, "a");
  Rational b = 0;
  if (auto it = o.shorthand.find("b"); it != o.shorthand.end() && !it->second.empty()) b = required(o, "b");
  Options alg_opts = o;
  for (const char* k : {"Delta0", "Delta1", "a", "b", "c"}) alg_opts.shorthand.erase(k);
  ParamValues values = all_params(alg_opts);
  Json input = {{"params", param_json(values)},
                {"Delta0", to_string(d0)},
                {"Delta1", to_string(d1)},
                {"a", to_string(a)},
                {"b", to_string(b)},
                {"bound", o.bound}};
  LcsAlgebra alg = algebra_arg(alg_opts, values, input);
  Json r = make_report("solve modules", input);
  DiscoverResult d = discover_rank11(alg, d0, d1, a, b, o.bound);
  r["result"]["modules"] = to_json(d);
  CheckReport verified{"discovered-modules", d.modules.size(), {}};
  for (const auto& m : d.modules) {
    auto c = is_module(m);
    verified.violations.insert(verified.violations.end(), c.violations.begin(), c.violations.end());
  }
  r["checks"].push_back(to_json(verified));
  finalize(r);
  return r;
}

Json cmd_catalog(const Options& o) {
  Json r = make_report("catalog list", {{"kind", o.listing}});
  if (o.listing == "all" || o.listing == "algebras") {
    Json a = Json::array();
    for (const auto& e : algebra_catalog()) {
      Json params = Json::array();
      for (const auto& s : e.schema(o.degree)) {
        std::string p = s.name;
        if (s.nonzero) p += " (nonzero)";
        if (s.default_value) p += " = " + to_string(*s.default_value);
        params.push_back(p);
      }
      a.push_back({{"key", e.key}, {"description", e.description}, {"params", params}});
    }
    r["result"]["algebras"] = a;
  }
  if (o.listing == "all" || o.listing == "modules") {
    Json m = Json::array();
    for (const auto& f : module_catalog()) {
      Json params = Json::array();
      for (const auto& s : f.schema) params.push_back(s.nonzero ? s.name + " (nonzero)" : s.name);
      m.push_back({{"key", f.key}, {"algebra", f.algebra}, {"description", f.description}, {"params", params}});
    }
    r["result"]["modules"] = m;
  }
  if (o.listing != "all" && o.listing != "algebras" && o.listing != "modules")
    throw UsageError("catalog list takes algebras, modules or all");
  return r;
}

Json cmd_report(const Options& o) {
  if (o.input.empty()) throw UsageError("--input is required");
  Json r;
  try {
    r = Json::parse(read_file(o.input));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(o.input, 1, std::string("not a JSON report: ") + e.what());
  }
  if (!r.is_object() || r.value("schema", 0) != kReportSchema)
    throw FormatError(o.input, 1, "unsupported report schema");
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks and bounded solvers for finite Lie conformal superalgebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", o.output, "Write the report to a file");
  app.add_flag("--timing", o.timing, "Print wall time on stderr");

  auto add_source = [&](CLI::App* c, bool builtin) {
    if (builtin) c->add_option("--builtin", o.builtin, "Catalog key");
    c->add_option("--file", o.file, "Input file");
    c->add_option("--param", o.params, "name=value (rational p/q), repeatable");
    c->add_flag("--symbolic", o.symbolic, "Keep parameters without a value symbolic");
    c->add_option("--degree", o.degree, "Degree of generic coefficient polynomials");
  };
  auto add_shorthand = [&](CLI::App* c, std::vector<std::string> names) {
    for (const auto& n : names) c->add_option("--" + n, o.shorthand[n], n + " (rational)");
  };

  auto* check = app.add_subcommand("check", "Run axiom checks")->require_subcommand(1);
  auto* c_alg = check->add_subcommand("algebra", "Skew-symmetry, Jacobi and parity closure");
  add_source(c_alg, true);
  auto* c_map = check->add_subcommand("map", "Derivation / homomorphism / automorphism check");
  add_source(c_map, false);
  c_map->add_option("--algebra", o.algebra, "Algebra key or file")->required();
  c_map->add_option("--as", o.as, "derivation | automorphism | homomorphism");
  c_map->add_option("--target", o.target, "Target algebra for --as homomorphism");
  c_map->add_option("--target-param", o.target_params, "Target parameters name=value");
  add_shorthand(c_map, {"alpha", "beta", "gamma", "tau"});
  auto* c_bimap = check->add_subcommand("bimap", "Biderivation axioms and the derived 4-tuple identity");
  add_source(c_bimap, false);
  c_bimap->add_option("--algebra", o.algebra, "Algebra key or file")->required();
  add_shorthand(c_bimap, {"alpha", "beta", "gamma", "tau"});
  auto* c_mod = check->add_subcommand("module", "Conformal module axioms");
  add_source(c_mod, true);

  auto* solve = app.add_subcommand("solve", "Bounded-degree solvers")->require_subcommand(1);
  auto* s_der = solve->add_subcommand("derivations", "Conformal derivations modulo inner ones");
  auto* s_bid = solve->add_subcommand("biderivations", "Conformal biderivations");
  auto* s_mod = solve->add_subcommand("modules", "Rank (1+1) modules, linear branch");
  for (auto* c : {s_der, s_bid, s_mod}) {
    c->add_option("--algebra", o.algebra, "Algebra key or file")->required();
    c->add_option("--param", o.params, "name=value, repeatable");
    c->add_option("--bound", o.bound, "Degree bound");
    add_shorthand(c, {"alpha", "beta", "gamma", "tau"});
  }
  for (auto* c : {s_der, s_bid}) c->add_option("--bound-lam", o.bound_lam, "Separate bound in lam");
  s_der->add_option("--parity", o.parity, "even | odd | both")->check(CLI::IsMember({"even", "odd", "both"}));
  add_shorthand(s_mod, {"Delta0", "Delta1", "a", "b"});
  auto* s_key = solve->add_subcommand("keyeq", "(x+by)f(x+y,z) - (x+ay+z)f(x,z) = (cy-z)f(x,y+z)");
  add_shorthand(s_key, {"a", "b", "c"});
  s_key->add_option("--bound", o.bound, "Total degree bound");
  o.bound = 3;

  auto* catalog = app.add_subcommand("catalog", "Built-in algebras and module families")->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "List catalog entries");
  list->add_option("kind", o.listing, "algebras | modules | all");
  list->add_option("--degree", o.degree, "Degree of generic coefficient polynomials");

  auto* report = app.add_subcommand("report", "Re-render a saved JSON report");
  report->add_option("--input", o.input, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  // keyeq defaults to the total-degree bound 4
  if (s_key->parsed() && s_key->count("--bound") == 0) o.bound = 4;

  auto start = std::chrono::steady_clock::now();
  Json r;
  try {
    if (c_alg->parsed())
      r = cmd_check_algebra(o);
    else if (c_map->parsed())
      r = cmd_check_map(o);
    else if (c_bimap->parsed())
      r = cmd_check_bimap(o);
    else if (c_mod->parsed())
      r = cmd_check_module(o);
    else if (s_der->parsed())
      r = cmd_solve_derivations(o);
    else if (s_bid->parsed())
      r = cmd_solve_biderivations(o);
    else if (s_key->parsed())
      r = cmd_solve_keyeq(o);
    else if (s_mod->parsed())
      r = cmd_solve_modules(o);
    else if (list->parsed())
      r = cmd_catalog(o);
    else if (report->parsed())
      r = cmd_report(o);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e) == nullptr && dynamic_cast<const std::domain_error*>(&e) == nullptr) {
      std::cerr << "internal error: " << e.what() << "\n";
      return 3;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::string text = render(r, o.format);
  try {
    if (o.output.empty())
      std::cout << text;
    else
      write_file(o.output, text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (o.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "time: " << ms << " ms\n";
  }
  return r.value("verdict", "pass") == "pass" ? 0 : 1;
}
