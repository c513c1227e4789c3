#include "skewcalc/commands.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <new>
#include <sstream>

#include "skewcalc/cancel.hpp"
#include "skewcalc/document.hpp"

namespace skewcalc {

namespace {

const char* kRefCenter = "center of the algebra, computed inside a filtration piece";
const char* kRefTorus = "center of a quantum torus at a root of unity";
const char* kRefGrowth = "Gelfand-Kirillov dimension as a growth exponent";
const char* kRefDivisor = "divisor subalgebra generated by subwords of nonzero elements";
const char* kRefControlling = "controlling sets: divisor subalgebra equal to the whole algebra";
const char* kRefNil = "nilradical and von Neumann regularity of commutative algebras";
const char* kRefLocal = "decomposition of an artinian commutative algebra into local factors";
const char* kRefIso = "isomorphisms of Ore extensions of non-isomorphic algebras";
const char* kArtifact = "artifact plumbing";

struct Context {
  const SessionConfig& cfg;
  Report report;
  std::optional<Document> doc;

  const Document& document() {
    if (!doc) {
      if (cfg.inputs.empty()) throw Error(ErrorCode::Usage, "command '" + cfg.command + "' needs an input file");
      if (cfg.inputs.size() > 1) throw Error(ErrorCode::Usage, "command '" + cfg.command + "' takes one input file");
      doc = parse_document(read_file(cfg.inputs[0]));
    }
    return *doc;
  }

  /// The selected algebra with every --assert flag attached.
  AlgebraPtr algebra() {
    AlgebraPtr alg = document().algebra(cfg.name);
    if (!cfg.asserts.empty()) {
      Presentation p = alg->presentation();
      for (const auto& a : cfg.asserts) {
        std::string name = a;
        int length = 0;
        if (auto open = a.find('('); open != std::string::npos) {
          if (a.back() != ')') throw Error(ErrorCode::Usage, "malformed --assert '" + a + "'");
          name = a.substr(0, open);
          try {
            length = std::stoi(a.substr(open + 1, a.size() - open - 2));
          } catch (const std::exception&) {
            throw Error(ErrorCode::Usage, "malformed --assert '" + a + "'");
          }
        }
        const auto f = flag_from_name(name);
        if (!f) throw Error(ErrorCode::Usage, "unknown flag '" + name + "'");
        if ((*f == Flag::Stratiform) != (a.find('(') != std::string::npos))
          throw Error(ErrorCode::Usage, "STRATIFORM takes a length, as STRATIFORM(n); other flags take none");
        p.set_flag(*f, "user", length);
      }
      alg = Algebra::create(std::move(p));
    }
    report.algebra = algebra_json(*alg);
    return alg;
  }

  const FiniteDimAlgebra& fdalgebra() {
    const FiniteDimAlgebra& a = document().fdalgebra(cfg.name);
    std::string name = cfg.name;
    if (name.empty())
      for (const auto& s : document().stanzas)
        if (s.kind == StanzaKind::FdAlgebra) name = s.name;
    report.algebra = Json{{"name", name}, {"field", a.field().to_string()}, {"basis", a.names()}};
    return a;
  }

  void claim(std::string c, std::string status, std::string ref) {
    report.provenance.push_back(ProvenanceEntry{std::move(c), std::move(status), std::move(ref)});
  }
};

std::vector<Element> parse_from(const SessionConfig& cfg, const Algebra& alg) {
  if (cfg.from.empty()) throw Error(ErrorCode::Usage, "--from is required");
  std::vector<Element> F;
  for (const auto& s : cfg.from) F.push_back(alg.parse(s));
  return F;
}

ClosureCaps closure_caps(const SessionConfig& cfg) {
  ClosureCaps c;
  c.degree_cap = cfg.degree_cap;
  c.max_rounds = cfg.max_rounds;
  c.subword = cfg.subword;
  return c;
}

void cmd_check(Context& ctx) {
  const Document& d = ctx.document();
  Json stanzas = Json::array();
  for (const auto& s : d.stanzas) {
    static const char* kinds[] = {"algebra", "family", "ore", "morphism", "fdalgebra"};
    Json j{{"kind", kinds[static_cast<int>(s.kind)]}, {"name", s.name}};
    switch (s.kind) {
      case StanzaKind::Algebra:
      case StanzaKind::Family:
      case StanzaKind::Ore: {
        const ValidationReport& v = d.algebras.at(s.name)->validation();
        j["valid"] = v.pass;
        j["overlaps_checked"] = v.overlaps_checked;
        j["sigma_status"] = v.sigma_status;
        ctx.claim(s.name + " passes the diamond and Ore-tower checks", v.pass ? "COMPUTED" : "FAILED",
                  "well-definedness of iterated Ore extensions");
        break;
      }
      case StanzaKind::Morphism: {
        const MorphismCheck mc = verify_morphism(d.morphisms.at(s.name));
        j["valid"] = mc.ok;
        if (!mc.ok) j["witness"] = mc.witness;
        ctx.claim(s.name + " respects every defining relation", mc.ok ? "COMPUTED" : "FAILED", kArtifact);
        break;
      }
      case StanzaKind::FdAlgebra:
        j["valid"] = true;
        j["dim"] = d.fdalgebras.at(s.name).dim();
        break;
    }
    stanzas.push_back(j);
  }
  if (d.stanzas.empty()) throw Error(ErrorCode::ValidationError, "the input declares nothing");
  bool has_alg = false;
  for (const auto& s : d.stanzas) has_alg = has_alg || (s.kind != StanzaKind::Morphism && s.kind != StanzaKind::FdAlgebra);
  if (has_alg) ctx.algebra();
  ctx.report.result = Json{{"stanzas", stanzas}, {"canonical", print_document(d)}};
}

void cmd_mul(Context& ctx) {
  const AlgebraPtr alg = ctx.algebra();
  if (ctx.cfg.operands.empty()) throw Error(ErrorCode::Usage, "mul needs at least one factor");
  std::vector<Element> factors;
  for (const auto& s : ctx.cfg.operands) factors.push_back(alg->parse(s));
  Element prod = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) prod = prod * factors[i];
  ctx.report.result = Json{{"factors", elements_json(factors)}, {"product", prod.to_string()}};
  ctx.claim("normal form of the product", "COMPUTED", "normal form in the standard monomial basis");
}

void cmd_center(Context& ctx) {
  const AlgebraPtr alg = ctx.algebra();
  const CenterBasis c = center_bounded(*alg, ctx.cfg.max_degree);
  ctx.report.result = Json{{"degree_bound", c.degree_bound},
                           {"dim", c.basis.size()},
                           {"structure", c.structure},
                           {"basis", elements_json(c.basis)}};
  ctx.claim("center up to degree " + std::to_string(c.degree_bound), "BOUNDED", kRefCenter);
}

void cmd_center_torus(Context& ctx) {
  const AlgebraPtr alg = ctx.algebra();
  const auto& fam = alg->presentation().family;
  if (!fam || (fam->id != FamilyId::QuantumTorus && fam->id != FamilyId::SkewPoly) || fam->ell == 0)
    throw Error(ErrorCode::BadParams, "center-torus needs a quantum torus given by a root of unity (l and a_ij)");
  const TorusCenter tc = center_torus(fam->n, fam->ell, fam->a);
  const auto names = alg->presentation().names();
  Json rows = Json::array(), monos = Json::array();
  for (const auto& row : tc.basis) {
    Json r = Json::array();
    Monomial m(names.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      r.push_back(row[i].get_str());
      m.e[i] = static_cast<int>(row[i].get_si());
    }
    rows.push_back(r);
    monos.push_back(monomial_to_string(m, names));
  }
  ctx.report.result = Json{{"n", fam->n},
                           {"l", fam->ell},
                           {"lattice_hnf", rows},
                           {"index", tc.index.get_str()},
                           {"central_monomials", monos}};
  ctx.claim("center is spanned by the monomials of the central lattice", "COMPUTED", kRefTorus);
}

void cmd_growth(Context& ctx, bool estimate) {
  const AlgebraPtr alg = ctx.algebra();
  const GrowthTable t = growth_dims(*alg, ctx.cfg.growth_N);
  Json r{{"generating_space", t.gen_space}, {"N", ctx.cfg.growth_N}, {"dims", t.dims}, {"exact", t.exact}};
  ctx.claim("dim V^n for n <= " + std::to_string(ctx.cfg.growth_N), "COMPUTED", kRefGrowth);
  if (estimate) {
    const GkEstimate g = gk_estimate(t);
    r["gk"] = gk_json(g);
    ctx.claim("GK dimension estimate from the tail window", g.snapped ? "ESTIMATED_SNAPPED" : "ESTIMATED", kRefGrowth);
  }
  ctx.report.result = r;
}

void cmd_divisor(Context& ctx, bool controlling) {
  const AlgebraPtr alg = ctx.algebra();
  const std::vector<Element> F = parse_from(ctx.cfg, *alg);
  const ClosureCaps caps = closure_caps(ctx.cfg);
  if (controlling) {
    const ControllingResult cr = is_controlling(*alg, F, caps);
    ctx.report.result = Json{{"controlling", cr.controlling}, {"closure", closure_json(cr.report)}};
    ctx.claim("F is controlling", cr.controlling ? "BOUNDED_CERTIFIED" : "INCONCLUSIVE", kRefControlling);
  } else {
    const ClosureReport r = divisor_closure(*alg, F, caps);
    ctx.report.result = closure_json(r);
    ctx.claim("divisor closure status " + closure_status_name(r.status),
              r.status == ClosureStatus::Full ? "BOUNDED_CERTIFIED" : "INCONCLUSIVE", kRefDivisor);
  }
}

void cmd_certify(Context& ctx) {
  const AlgebraPtr alg = ctx.algebra();
  CertifyConfig cc;
  cc.center_degree = ctx.cfg.max_degree;
  cc.degree_cap = ctx.cfg.degree_cap;
  cc.max_rounds = ctx.cfg.max_rounds;
  cc.growth_N = ctx.cfg.growth_N;
  const CertifyReport rep = certify(alg, cc);
  const ReplayResult replay = audit_replay(alg, rep, cc);
  Json verdicts = Json::array(), rules = Json::array();
  for (const auto& v : rep.verdicts) {
    verdicts.push_back(verdict_json(v));
    ctx.claim(property_name(v.property), verdict_status_name(v.status), v.paper_ref);
  }
  for (const auto& r : rep.rules) {
    Json j{{"rule", r.rule}, {"fired", r.fired}};
    if (!r.fired) j["reason"] = r.reason;
    rules.push_back(j);
  }
  ctx.report.result = Json{{"verdicts", verdicts},
                           {"rules", rules},
                           {"dag_closed", is_dag_closed(rep)},
                           {"replay", Json{{"ok", replay.ok}, {"lines", replay.lines}}}};
}

void cmd_verify_iso(Context& ctx) {
  const Document& d = ctx.document();
  const Morphism& m = d.morphism(ctx.cfg.name);
  const Morphism* inv = nullptr;
  for (const auto& s : d.stanzas) {
    if (s.kind != StanzaKind::Morphism || s.name == m.name) continue;
    const Morphism& c = d.morphisms.at(s.name);
    if (c.source == m.target && c.target == m.source) {
      inv = &c;
      break;
    }
  }
  if (!inv) throw Error(ErrorCode::ValidationError, "no morphism " + m.target->presentation().name + " -> " +
                                                         m.source->presentation().name + " to pair with " + m.name);
  ctx.report.algebra = algebra_json(*m.source);
  const MorphismCheck fwd = verify_morphism(m), bwd = verify_morphism(*inv);
  const IsoCheck iso = verify_isomorphism_bounded(m, *inv, ctx.cfg.degree_cap);
  auto check_json = [](const MorphismCheck& c) {
    Json j{{"ok", c.ok}};
    if (!c.ok) j["witness"] = c.witness;
    return j;
  };
  Json images = Json::object();
  for (std::size_t i = 0; i < m.images.size(); ++i)
    images[m.source->presentation().gens[i].name] = m.images[i].to_string();
  ctx.report.result = Json{{"morphism", m.name},
                           {"inverse", inv->name},
                           {"source", m.source->presentation().name},
                           {"target", m.target->presentation().name},
                           {"images", images},
                           {"morphism_check", check_json(fwd)},
                           {"inverse_check", check_json(bwd)},
                           {"status", iso.ok ? "ISO_BOUNDED" : "NOT_VERIFIED"},
                           {"witness", iso.witness},
                           {"source_dim", iso.source_dim},
                           {"target_dim", iso.target_dim}};
  ctx.claim(m.name + " is an isomorphism up to degree " + std::to_string(ctx.cfg.degree_cap),
            iso.ok ? "BOUNDED_CERTIFIED" : "NOT_VERIFIED", kRefIso);
}

void cmd_nilradical(Context& ctx) {
  const FiniteDimAlgebra& a = ctx.fdalgebra();
  const NilradicalResult n = nilradical(a);
  const UnitsResult u = units_generated(a);
  ctx.report.result = Json{{"dim", a.dim()},
                           {"nilradical_dim", n.basis.size()},
                           {"nilradical_basis", fd_vector_json(a, n.basis)},
                           {"quotient_dim", n.quotient_dim},
                           {"method", n.method},
                           {"certified", n.certified},
                           {"note", n.note},
                           {"vnr", is_vnr(a)},
                           {"units_generate", Json{{"status", tri_name(u.status)}, {"method", u.method}, {"witness", u.witness}}}};
  ctx.claim("nilradical basis", n.certified ? "COMPUTED" : "UNCERTIFIED", kRefNil);
}

void cmd_decompose(Context& ctx) {
  const FiniteDimAlgebra& a = ctx.fdalgebra();
  const LocalDecomposition dec = local_decomposition(a, ctx.cfg.seed);
  Json factors = Json::array();
  for (const auto& f : dec.factors)
    factors.push_back(Json{{"idempotent", a.to_string(f.idempotent)},
                           {"dim", f.algebra.dim()},
                           {"residue_degree", f.residue_degree},
                           {"certificate", f.certificate}});
  ctx.report.result = Json{{"status", dec.status},
                           {"factors", factors},
                           {"checks", Json{{"sum_is_one", dec.sum_is_one},
                                           {"orthogonal", dec.orthogonal},
                                           {"idempotent", dec.idempotent}}}};
  ctx.claim("decomposition into local factors", dec.status, kRefLocal);
}

void cmd_registry(Context& ctx) {
  if (!ctx.cfg.inputs.empty()) throw Error(ErrorCode::Usage, "registry takes no input file");
  const ImplicationDAG& dag = implication_dag();
  auto edges = [](const std::vector<DagEdge>& es, bool with_fixture) {
    Json out = Json::array();
    for (const auto& e : es) {
      Json j{{"from", property_name(e.from)}, {"to", property_name(e.to)}};
      if (with_fixture) j["fixture"] = e.fixture;
      out.push_back(j);
    }
    return out;
  };
  Json nodes = Json::array();
  for (const auto p : dag.nodes) nodes.push_back(property_name(p));
  Json fixtures = Json::array();
  bool all_pass = true;
  for (const auto& f : counterexample_registry()) {
    const FixtureCheck fc = f.verify(FieldDescriptor::rational(), ctx.cfg.degree_cap);
    all_pass = all_pass && fc.pass;
    Json refutes = Json::array();
    for (const auto p : f.refutes) refutes.push_back(property_name(p));
    fixtures.push_back(Json{{"id", f.id},
                            {"description", f.description},
                            {"paper_ref", f.paper_ref},
                            {"refutes", refutes},
                            {"verified", fc.pass},
                            {"lines", fc.lines}});
    ctx.claim(f.id + ": " + f.description, fc.pass ? "BOUNDED_CERTIFIED" : "NOT_VERIFIED", f.paper_ref);
  }
  bool covered = true;
  for (const auto& e : dag.dotted) {
    bool found = false;
    for (const auto& f : counterexample_registry()) found = found || f.id == e.fixture;
    covered = covered && found;
  }
  ctx.report.algebra = nullptr;
  ctx.report.result = Json{{"nodes", nodes},
                           {"solid", edges(dag.solid, false)},
                           {"dotted", edges(dag.dotted, true)},
                           {"variants", edges(dag.variants, false)},
                           {"fixtures", fixtures},
                           {"dotted_edges_covered", covered},
                           {"all_fixtures_verified", all_pass}};
}

using Handler = std::function<void(Context&)>;

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h = {
      {"check", cmd_check},
      {"mul", cmd_mul},
      {"center", cmd_center},
      {"center-torus", cmd_center_torus},
      {"growth", [](Context& c) { cmd_growth(c, false); }},
      {"gkdim", [](Context& c) { cmd_growth(c, true); }},
      {"divisor", [](Context& c) { cmd_divisor(c, false); }},
      {"controlling", [](Context& c) { cmd_divisor(c, true); }},
      {"certify", cmd_certify},
      {"verify-iso", cmd_verify_iso},
      {"nilradical", cmd_nilradical},
      {"decompose", cmd_decompose},
      {"registry", cmd_registry},
  };
  return h;
}

Json caps_json(const SessionConfig& c) {
  return Json{{"max_degree", c.max_degree},
              {"growth_N", c.growth_N},
              {"degree_cap", c.degree_cap},
              {"max_rounds", c.max_rounds},
              {"subword_max_deg_a", c.subword.max_deg_a},
              {"subword_max_deg_b", c.subword.max_deg_b},
              {"seed", c.seed}};
}

void check_caps(const SessionConfig& c) {
  auto positive = [](int v, const char* what) {
    if (v <= 0) throw Error(ErrorCode::Usage, std::string(what) + " must be positive");
  };
  positive(c.max_degree, "--max-degree");
  positive(c.growth_N, "--N");
  positive(c.degree_cap, "--degree-cap");
  positive(c.max_rounds, "--max-rounds");
  positive(c.subword.max_deg_a, "subword cap a");
  positive(c.subword.max_deg_b, "subword cap b");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, h] : handlers()) out.push_back(n);
    return out;
  }();
  return names;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Usage, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const SessionConfig& cfg) {
  RunResult res;
  try {
    check_caps(cfg);
    const Handler* h = nullptr;
    for (const auto& [n, fn] : handlers())
      if (n == cfg.command) h = &fn;
    if (!h) throw Error(ErrorCode::Usage, "unknown command '" + cfg.command + "'");
    Context ctx{cfg, {}, std::nullopt};
    ctx.report.command = cfg.command;
    ctx.report.caps = caps_json(cfg);
    (*h)(ctx);
    res.out = emit_report(ctx.report, cfg.format);
  } catch (const Error& e) {
    res.exit_code = exit_code_for(e.code());
    res.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::bad_alloc&) {
    res.exit_code = exit_code_for(ErrorCode::ResourceLimit);
    res.err = "error: RESOURCE_LIMIT: out of memory\n";
  } catch (const std::exception& e) {
    res.exit_code = exit_code_for(ErrorCode::Internal);
    res.err = std::string("error: INTERNAL: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace skewcalc
