#include <doctest.h>

#include <filesystem>

#include "skewcalc/commands.hpp"
#include "skewcalc/document.hpp"
#include "skewcalc/families.hpp"
#include "test_support.hpp"

using namespace skewcalc;
using testing_support::fixture_path;

namespace {

std::vector<std::string> fixture_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(SKEWCALC_FIXTURE_DIR))
    if (e.is_regular_file() && e.path().extension() == ".alg") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

SessionConfig config(const std::string& command, const std::string& file = "") {
  SessionConfig c;
  c.command = command;
  if (!file.empty()) c.inputs = {fixture_path(file)};
  return c;
}

Json run_json(SessionConfig c) {
  c.format = OutputFormat::Json;
  const RunResult r = run(c);
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("every fixture round-trips through the printer") {
  const auto files = fixture_files();
  CHECK(files.size() >= 15);
  for (const auto& f : files) {
    CAPTURE(f);
    const Document d1 = parse_document(read_file(fixture_path(f)));
    const std::string text = print_document(d1);
    const Document d2 = parse_document(text);
    CHECK(same_document(d1, d2));
    CHECK(print_document(d2) == text);
  }
}

TEST_CASE("family stanzas equal the programmatic specs") {
  const Document d = parse_document("family quantum_torus n=2 l=3 a12=1;");
  const auto built = d.algebra();
  const auto ref = build_family(quantum_torus_root_spec(2, 3, {{0, 1}, {-1, 0}}));
  CHECK(built->field() == FieldDescriptor::cyclotomic(3));
  CHECK(same_presentation(built->presentation(), ref->presentation()));

  const Document a = parse_document(read_file(fixture_path("a1q.alg")));
  REQUIRE(a.algebra()->presentation().family.has_value());
  CHECK(a.algebra()->presentation().family->id == FamilyId::QuantumWeyl1);
  const auto aref = build_family(quantum_weyl1_spec(Scalar::q(FieldDescriptor::ratfunc())));
  CHECK(a.algebra()->leading(1, 0) == aref->leading(1, 0));
  CHECK(a.algebra()->tail(1, 0) == aref->tail(1, 0));
}

TEST_CASE("syntax errors carry positions") {
  try {
    (void)parse_document(read_file(fixture_path("errors/syntax.alg")));
    FAIL("accepted a malformed rule");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 5);
    CHECK(e.column() == 1);
  }
  try {
    (void)parse_document("algebra A {\n  field rational;\n  gens x, y;\n  rule y*x = x*y + ;\n}\n");
    FAIL("accepted a dangling operator");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 20);
  }
}

TEST_CASE("exit-code contract") {
  struct Case {
    SessionConfig cfg;
    int code;
  };
  std::vector<Case> cases;
  cases.push_back({config("check", "a1q.alg"), 0});
  cases.push_back({config("frobnicate", "a1q.alg"), 1});
  cases.push_back({config("check"), 1});
  cases.push_back({config("check", "does_not_exist.alg"), 1});
  {
    auto c = config("center", "a1q.alg");
    c.max_degree = 0;
    cases.push_back({c, 1});
  }
  {
    auto c = config("certify", "weyl1.alg");
    c.asserts = {"NOT_A_FLAG"};
    cases.push_back({c, 1});
  }
  cases.push_back({config("check", "errors/syntax.alg"), 2});
  cases.push_back({config("check", "errors/char.alg"), 2});
  {
    auto c = config("divisor", "a1q.alg");
    c.from = {"x*"};
    cases.push_back({c, 2});
  }
  cases.push_back({config("check", "errors/inconsistent.alg"), 3});
  cases.push_back({config("check", "errors/field.alg"), 3});
  cases.push_back({config("check", "errors/bad_params.alg"), 3});
  cases.push_back({config("center-torus", "weyl1.alg"), 3});
  cases.push_back({config("nilradical", "weyl1.alg"), 3});
  {
    auto c = config("growth", "poly3.alg");
    c.growth_N = 200;
    cases.push_back({c, 4});
  }
  for (const auto& [cfg, code] : cases) {
    CAPTURE(cfg.command);
    CAPTURE(cfg.inputs.empty() ? std::string("-") : cfg.inputs[0]);
    const RunResult r = run(cfg);
    CHECK(r.exit_code == code);
    if (code != 0) CHECK(r.err.rfind("error: ", 0) == 0);
  }
}

TEST_CASE("reports are byte-identical across runs") {
  std::vector<SessionConfig> cfgs;
  for (const char* f : {"a1q.alg", "minusone.alg", "torus3.alg", "weyl1.alg"}) cfgs.push_back(config("certify", f));
  cfgs.push_back(config("gkdim", "weyl1.alg"));
  cfgs.push_back(config("decompose", "split.alg"));
  cfgs.push_back(config("registry"));
  {
    auto c = config("divisor", "a1q.alg");
    c.from = {"x*y - y*x"};
    c.degree_cap = 3;
    cfgs.push_back(c);
  }
  for (auto c : cfgs) {
    CAPTURE(c.command);
    for (auto fmt : {OutputFormat::Text, OutputFormat::Json}) {
      c.format = fmt;
      const RunResult a = run(c), b = run(c);
      CHECK(a.exit_code == 0);
      CHECK(a.out == b.out);
      CHECK(a.err == b.err);
    }
  }
}

TEST_CASE("JSON schema") {
  auto c = config("divisor", "a1q.alg");
  c.from = {"x*y - y*x"};
  c.degree_cap = 3;
  const Json j = run_json(c);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"format_version", "command", "algebra", "caps", "result", "provenance"});
  CHECK(j["format_version"] == 1);
  CHECK(j["result"]["status"] == "FULL");
  CHECK(j["result"]["rounds"].size() == 2);
  for (const auto& p : j["provenance"]) {
    CHECK(p.contains("claim"));
    CHECK(p.contains("status"));
    CHECK(p.contains("paper_ref"));
  }

  const Json cert = run_json(config("certify", "weyl1.alg"));
  for (const auto& v : cert["result"]["verdicts"]) {
    std::vector<std::string> vk;
    for (const auto& [k, x] : v.items()) vk.push_back(k);
    REQUIRE(vk.size() >= 5);
    CHECK(std::vector<std::string>(vk.begin(), vk.begin() + 5) ==
          std::vector<std::string>{"property", "status", "rule", "paper_ref", "evidence"});
  }
}

TEST_CASE("command examples") {
  auto c = config("center", "minusone.alg");
  c.max_degree = 4;
  const Json center = run_json(c);
  CHECK(center["result"]["basis"] == Json::array({"1", "x^2", "y^2", "x^4", "x^2*y^2", "y^4"}));

  auto g = config("gkdim", "weyl1.alg");
  const Json gk = run_json(g);
  CHECK(gk["result"]["gk"]["snapped"] == 2);
  g.format = OutputFormat::Json;
  CHECK(run(g).out.find("\"estimate\": 2.000000,") != std::string::npos);

  auto m = config("mul", "a1q.alg");
  m.operands = {"y", "x"};
  const Json mul = run_json(m);
  CHECK(mul["result"]["product"] == "1/q*x*y - 1/q");

  const Json tor = run_json(config("center-torus", "torus3.alg"));
  CHECK(tor["result"]["index"] == "9");
}
