#include "skewcalc/report.hpp"

#include <cstdio>
#include <sstream>

namespace skewcalc {

namespace {

// Fixed-point numbers travel through the tree as tagged strings and are
// unquoted at the end, so their rendering never depends on the double printer.
const std::string kFixedTag = "\x01" "fixed6:";
const std::string kFixedTagJson = "\"\\u0001fixed6:";

bool is_fixed(const Json& j) {
  return j.is_string() && j.get_ref<const std::string&>().rfind(kFixedTag, 0) == 0;
}

std::string unfix_json(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (true) {
    const std::size_t k = s.find(kFixedTagJson, i);
    if (k == std::string::npos) break;
    out.append(s, i, k - i);
    const std::size_t end = s.find('"', k + kFixedTagJson.size());
    out.append(s, k + kFixedTagJson.size(), end - k - kFixedTagJson.size());
    i = end + 1;
  }
  out.append(s, i, std::string::npos);
  return out;
}

std::string scalar_text(const Json& j) {
  if (is_fixed(j)) return j.get_ref<const std::string&>().substr(kFixedTag.size());
  if (j.is_string()) return j.get_ref<const std::string&>();
  if (j.is_null()) return "-";
  return j.dump();
}

bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

bool all_numbers(const Json& j) {
  for (const auto& e : j)
    if (!e.is_number()) return false;
  return true;
}

void render_text(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(indent * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !(is_flat_array(v) && (v.size() <= 8 || all_numbers(v)))) {
        os << pad << k << ":" << (v.empty() ? " (none)" : "") << "\n";
        render_text(os, v, indent + 1);
      } else if (v.is_array()) {
        os << pad << k << ": ";
        if (v.empty()) os << "(none)";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
        os << "\n";
      } else if (v.is_string() && v.get_ref<const std::string&>().find('\n') != std::string::npos) {
        os << pad << k << ": |\n";
        std::istringstream lines(v.get_ref<const std::string&>());
        for (std::string line; std::getline(lines, line);) os << pad << "  " << line << "\n";
      } else {
        os << pad << k << ": " << scalar_text(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object()) {
        // First key inline after the bullet, the rest aligned beneath it.
        std::ostringstream inner;
        render_text(inner, v, indent + 1);
        std::string s = inner.str();
        const std::string ipad((indent + 1) * 2, ' ');
        if (s.rfind(ipad, 0) == 0) s = s.substr(ipad.size());
        os << pad << "- " << s;
      } else if (is_flat_array(v)) {
        os << pad << "- [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
        os << "]\n";
      } else if (v.is_array()) {
        os << pad << "-\n";
        render_text(os, v, indent + 1);
      } else {
        os << pad << "- " << scalar_text(v) << "\n";
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace

Json fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return kFixedTag + s;
}

std::string emit_report(const Report& r, OutputFormat format) {
  Json prov = Json::array();
  for (const auto& p : r.provenance) prov.push_back(Json{{"claim", p.claim}, {"status", p.status}, {"paper_ref", p.paper_ref}});
  Json top{{"format_version", kFormatVersion}, {"command", r.command}, {"algebra", r.algebra}, {"caps", r.caps},
           {"result", r.result}, {"provenance", prov}};
  if (format == OutputFormat::Json) return unfix_json(top.dump(2)) + "\n";
  std::ostringstream os;
  render_text(os, top, 0);
  return os.str();
}

Json algebra_json(const Algebra& alg) {
  const Presentation& p = alg.presentation();
  Json gens = Json::array();
  for (const auto& g : p.gens) gens.push_back(g.invertible ? g.name + "^{+-1}" : g.name);
  Json flags = Json::array();
  for (const auto& f : p.flags) {
    std::string name = flag_name(f.flag);
    if (f.flag == Flag::Stratiform) name += "(" + std::to_string(f.length) + ")";
    flags.push_back(Json{{"flag", name}, {"provenance", f.provenance}});
  }
  return Json{{"name", p.name},
              {"field", p.field.to_string()},
              {"family", p.family ? Json(family_keyword(p.family->id)) : Json(nullptr)},
              {"generators", gens},
              {"flags", flags}};
}

Json elements_json(const std::vector<Element>& es) {
  Json out = Json::array();
  for (const auto& e : es) out.push_back(e.to_string());
  return out;
}

Json closure_json(const ClosureReport& r) {
  Json rounds = Json::array();
  for (std::size_t k = 0; k < r.rounds.size(); ++k) {
    Json hits = Json::array();
    for (const auto& h : r.rounds[k].new_subwords)
      hits.push_back(Json{{"f", h.f.to_string()}, {"a", h.a.to_string()}, {"g", h.g.to_string()}, {"b", h.b.to_string()}});
    rounds.push_back(Json{{"round", k + 1}, {"span_dim", r.rounds[k].span_dim}, {"new_subwords", hits}});
  }
  return Json{{"F", elements_json(r.F)},
              {"status", closure_status_name(r.status)},
              {"rounds", rounds},
              {"certified_dim", r.certified_basis.size()},
              {"certified_basis", elements_json(r.certified_basis)},
              {"approximation", r.approximation}};
}

Json verdict_json(const Verdict& v) {
  Json ev = Json::array();
  for (const auto& e : v.evidence) ev.push_back(Json{{"kind", e.kind}, {"result", e.result}});
  Json j{{"property", property_name(v.property)},
         {"status", verdict_status_name(v.status)},
         {"rule", v.rule},
         {"paper_ref", v.paper_ref},
         {"evidence", ev}};
  if (!v.also.empty()) j["also"] = v.also;
  return j;
}

Json gk_json(const GkEstimate& g) {
  return Json{{"method", g.method},
              {"estimate", fixed6(g.estimate)},
              {"snapped", g.snapped ? Json(*g.snapped) : Json(nullptr)},
              {"slope", fixed6(g.slope)},
              {"residual", fixed6(g.residual)},
              {"window", Json::array({g.window_start, g.window_end})}};
}

Json fd_vector_json(const FiniteDimAlgebra& a, const std::vector<Vec>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(a.to_string(v));
  return out;
}

}  // namespace skewcalc
