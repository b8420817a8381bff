#include "confkernel/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

namespace confkernel {

std::string digest(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json make_report(const std::string& command, const Json& input) {
  Json r;
  r["schema"] = kReportSchema;
  r["command"] = command;
  Json in = input;
  in["digest"] = digest(input.dump());
  r["input"] = in;
  r["checks"] = Json::array();
  r["result"] = Json::object();
  r["verdict"] = "pass";
  return r;
}

Json to_json(const CheckReport& r) {
  Json j;
  j["name"] = r.check;
  j["cases"] = r.cases;
  j["passed"] = r.passed();
  Json v = Json::array();
  for (const auto& viol : r.violations) {
    Json e;
    e["where"] = viol.where;
    e["component"] = viol.component;
    e["residual"] = viol.residual.to_string();
    v.push_back(e);
  }
  j["violations"] = v;
  return j;
}

Json to_json(const FourTupleReport& r) {
  Json j = to_json(r.report);
  j["precondition"] = r.precondition;
  j["notes"] = r.notes;
  return j;
}

Json map_json(const ConformalEnd& d, const LcsAlgebra& alg) {
  Json j;
  j["parity"] = to_string(d.parity);
  Json images = Json::object();
  for (std::size_t i = 0; i < alg.size(); ++i) images[alg.generator(i)] = format_vector(d.matrix[i], alg.generators());
  j["images"] = images;
  return j;
}

Json bimap_json(const ConformalBiMap& f, const LcsAlgebra& alg) {
  Json j;
  j["parity"] = to_string(f.parity);
  Json values = Json::object();
  for (std::size_t i = 0; i < alg.size(); ++i)
    for (std::size_t k = 0; k < alg.size(); ++k) {
      std::string s = format_vector(f.F[i][k], alg.generators());
      if (s != "0") values[alg.generator(i) + "," + alg.generator(k)] = s;
    }
  j["values"] = values;
  return j;
}

Json to_json(const DerivationResult& r, const LcsAlgebra& alg) {
  Json j;
  j["parity"] = to_string(r.parity);
  j["bounds"] = {{"del", r.bound_del}, {"lam", r.bound_lam}};
  j["dim"] = r.dim;
  j["inner_dim"] = r.inner_dim;
  j["outer_dim"] = r.outer_dim;
  if (r.stable) j["stable"] = *r.stable;
  Json outer = Json::array();
  for (const auto& d : r.outer) outer.push_back(map_json(d, alg));
  j["outer"] = outer;
  Json basis = Json::array();
  for (const auto& d : r.basis) basis.push_back(map_json(d, alg));
  j["basis"] = basis;
  return j;
}

Json to_json(const BiderivationResult& r, const LcsAlgebra& alg) {
  Json j;
  j["bounds"] = {{"del", r.bound_del}, {"lam", r.bound_lam}};
  j["dim"] = r.dim;
  j["even_dim"] = r.even_dim;
  j["odd_dim"] = r.odd_dim;
  j["inner_dim"] = r.inner_dim;
  j["outer_dim"] = r.outer_dim;
  if (r.stable) j["stable"] = *r.stable;
  Json outer = Json::array();
  for (const auto& f : r.outer) outer.push_back(bimap_json(f, alg));
  j["outer"] = outer;
  Json basis = Json::array();
  for (const auto& f : r.basis) basis.push_back(bimap_json(f, alg));
  j["basis"] = basis;
  return j;
}

Json to_json(const KeyEqResult& r) {
  Json j;
  j["a"] = to_string(r.a);
  j["b"] = to_string(r.b);
  j["c"] = to_string(r.c);
  j["bound"] = r.bound;
  j["dim"] = r.dim();
  Json basis = Json::array();
  for (const auto& p : r.basis) basis.push_back(p.to_string());
  j["basis"] = basis;
  return j;
}

Json to_json(const DiscoverResult& r) {
  Json j;
  j["Delta0"] = to_string(r.delta0);
  j["Delta1"] = to_string(r.delta1);
  j["a"] = to_string(r.a);
  j["b"] = to_string(r.b);
  j["bound"] = r.bound;
  j["admissible"] = r.admissible;
  j["dim"] = r.dim();
  Json basis = Json::array();
  for (const auto& p : r.basis) basis.push_back(p.to_string());
  j["h0"] = basis;
  return j;
}

void finalize(Json& report) {
  bool ok = true;
  for (const auto& c : report["checks"]) ok = ok && c["passed"].get<bool>();
  report["verdict"] = ok ? "pass" : "fail";
}

namespace {

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  return j.dump();
}

void render_value(std::ostringstream& os, const std::string& key, const Json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << pad << key << ": (none)\n";
      return;
    }
    os << pad << key << ":\n";
    for (const auto& [k, v] : j.items()) render_value(os, k, v, indent + 2);
  } else if (j.is_array()) {
    if (j.empty()) {
      os << pad << key << ": (none)\n";
      return;
    }
    os << pad << key << ":\n";
    std::size_t n = 0;
    for (const auto& v : j) {
      if (v.is_object() || v.is_array())
        render_value(os, "[" + std::to_string(n) + "]", v, indent + 2);
      else
        os << pad << "  - " << scalar(v) << "\n";
      ++n;
    }
  } else {
    os << pad << key << ": " << scalar(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  os << "confkernel report (schema " << report.value("schema", 0) << ")\n";
  os << "command: " << report.value("command", "") << "\n";
  if (report.contains("input")) render_value(os, "input", report["input"], 0);
  for (const auto& c : report.value("checks", Json::array())) {
    os << "check " << c["name"].get<std::string>() << ": " << (c["passed"].get<bool>() ? "pass" : "FAIL") << " ("
       << c["cases"].dump() << " cases";
    if (!c["violations"].empty()) os << ", " << c["violations"].size() << " violations";
    os << ")\n";
    for (const auto& v : c["violations"]) {
      std::string where;
      for (const auto& w : v["where"]) where += (where.empty() ? "" : ",") + w.get<std::string>();
      os << "  at (" << where << ") component " << v["component"].get<std::string>() << ": "
         << v["residual"].get<std::string>() << "\n";
    }
    if (c.contains("notes"))
      for (const auto& n : c["notes"]) os << "  note: " << n.get<std::string>() << "\n";
  }
  if (report.contains("result") && !report["result"].empty()) render_value(os, "result", report["result"], 0);
  os << "verdict: " << report.value("verdict", "") << "\n";
  return os.str();
}

std::string render(const Json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  return render_text(report);
}

}  // namespace confkernel
