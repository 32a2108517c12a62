#include <filesystem>

#include "doctest.h"
#include "resint/scenario.hpp"

using namespace resint;

namespace {

const char* kPlane = R"(
[ring]
vars = x, y

[space]
kind = affine
relations =

[tower bl]
center origin = x, y

[strata plain]
tower = bl

[cycles]
a = x - 1 | dim=1
b = y - 1 | dim=1
)";

Scenario parse(const std::string& text, std::vector<Diagnostic>& diags) { return parse_scenario(text, "t.scn", diags); }

std::vector<Diagnostic> diagnose(const std::string& text) {
  std::vector<Diagnostic> diags;
  Scenario s = parse(text, diags);
  for (auto& d : validate_scenario(s)) diags.push_back(d);
  return diags;
}

bool mentions(const std::vector<Diagnostic>& d, const std::string& needle, int line = -1) {
  for (const auto& x : d) {
    if (x.message.find(needle) != std::string::npos && (line < 0 || x.line == line)) return true;
  }
  return false;
}

std::vector<std::filesystem::path> bundled() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(RESINT_SCENARIO_DIR)) {
    if (e.path().extension() == ".scn") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

RunOptions lenient() {
  RunOptions o;
  o.pairing.allow_nonstandard = true;
  return o;
}

}  // namespace

TEST_CASE("parsing sections and tasks") {
  std::vector<Diagnostic> d;
  Scenario s = parse(std::string(kPlane) + "[tasks]\npair plain a b p=0,0 q=0,1 expect=degree=1\n", d);
  CHECK(d.empty());
  CHECK(s.vars == std::vector<std::string>{"x", "y"});
  REQUIRE(s.towers.size() == 1);
  CHECK(s.towers[0].centers[0].ideal.gens == std::vector<std::string>{"x", "y"});
  REQUIRE(s.cycles.size() == 2);
  CHECK(s.cycles[0].dim == 1);
  REQUIRE(s.tasks.size() == 1);
  CHECK(s.tasks[0].args == std::vector<std::string>{"plain", "a", "b"});
  CHECK(s.tasks[0].options.at("expect") == "degree=1");
  CHECK(s.tasks[0].line == 19);
  CHECK(validate_scenario(s).empty());

  CHECK(mentions(diagnose("[ring]\nvars = x\n[bogus]\n"), "unknown section", 3));
  CHECK(mentions(diagnose("vars = x\n"), "before the first section", 1));
  CHECK(mentions(diagnose("[ring]\nvars = x, x\n"), "declared twice", 2));
}

TEST_CASE("validation diagnostics") {
  auto undeclared = diagnose(std::string(kPlane) + "c = x - w | dim=1\n");
  CHECK(mentions(undeclared, "cycle 'c'", 18));
  CHECK(mentions(undeclared, "w", 18));

  auto thin = diagnose(std::string(kPlane) + "[tower bad]\ncenter line = x\n");
  CHECK(mentions(thin, "center 'line' needs at least two generators", 19));

  auto refs = diagnose(std::string(kPlane) + "[tasks]\npair nowhere a b p=0,0 q=0,1\ncheck a plain\naudit plain a b p=0,0 q=0,1\n");
  CHECK(mentions(refs, "undeclared strata 'nowhere'", 19));
  CHECK(mentions(refs, "needs p=", 20));
  CHECK(mentions(refs, "undeclared family 'a'", 21));

  auto fam = diagnose(std::string(kPlane) + "[families]\nF = x - y | param=x marked=0 dim=1\nG = x - l*y | marked=0,1/2\n");
  CHECK(mentions(fam, "clashes", 19));
  CHECK(mentions(fam, "two marked values", 19));
  CHECK(mentions(fam, "needs dim=", 20));
  CHECK(mentions(diagnose(std::string(kPlane) + "[families]\nH = x - l | marked=0,a dim=1\n"), "not a rational"));
  CHECK(mentions(diagnose(std::string(kPlane) + "[tasks]\ncheck a plain p=0,x\n"), "perversity"));
}

TEST_CASE("empty task list") {
  std::vector<Diagnostic> d;
  Scenario s = parse(kPlane, d);
  RunReport r = run_scenario(s);
  CHECK(r.exit_code == 0);
  CHECK(r.tasks.empty());
  auto j = r.to_json();
  CHECK(j["tasks"].empty());
  CHECK(j["version"] == kReportVersion);
}

TEST_CASE("task statuses and exit codes") {
  std::vector<Diagnostic> d;
  Scenario s = parse(std::string(kPlane) +
                         "[tasks]\n"
                         "pair plain a b p=0,0 q=0,1 expect=degree=1\n"
                         "pair plain a b p=0,0 q=0,1 expect=degree=2\n"
                         "pair plain a b p=1,1 q=0,1\n"
                         "pair plain a a p=0,0 q=0,1\n"
                         "charts bl\n",
                     d);
  REQUIRE(d.empty());
  RunReport r = run_scenario(s);
  REQUIRE(r.tasks.size() == 5);
  CHECK(r.tasks[0].status == "ok");
  CHECK(r.tasks[0].summary == "degree=1");
  CHECK(r.tasks[0].payload["degree"] == 1);
  CHECK(r.tasks[1].status == "error:expectation");
  CHECK(r.tasks[2].status == "error:nonstandard-perversity");
  CHECK(r.tasks[3].status == "error:improper-intersection");
  // Later tasks still run after failures.
  CHECK(r.tasks[4].status == "ok");
  CHECK(r.tasks[4].counters.groebner_calls > 0);
  CHECK(r.exit_code == 1);

  RunOptions strict;
  strict.pairing.strict_complementarity = true;
  Scenario c = parse(std::string(kPlane) + "[tasks]\npair plain a b p=0,0 q=0,0\n", d);
  CHECK(run_scenario(c).tasks[0].status == "ok");
  CHECK(run_scenario(c, strict).tasks[0].status == "error:complementarity");

  Scenario bad = parse(std::string(kPlane) + "[tasks]\npair plain a zz p=0,0 q=0,1\n", d);
  RunReport br = run_scenario(bad);
  CHECK(br.exit_code == 2);
  CHECK(br.tasks.empty());
  CHECK(br.to_json().contains("diagnostics"));
}

TEST_CASE("budget exhaustion") {
  std::vector<Diagnostic> d;
  Scenario s = load_scenario(std::string(RESINT_SCENARIO_DIR) + "/projective_closure.scn", d);
  REQUIRE(d.empty());
  RunOptions tight = lenient();
  tight.budget = 5;
  RunReport r = run_scenario(s, tight);
  CHECK(r.exit_code == 3);
  bool hit = false;
  for (const auto& t : r.tasks) hit = hit || t.status == "error:budget-exceeded";
  CHECK(hit);
  // The default budget is restored afterwards.
  CHECK(default_budget().max_reductions == EngineBudget{}.max_reductions);
}

TEST_CASE("bundled scenarios validate, run and are deterministic") {
  auto files = bundled();
  CHECK(files.size() >= 4);
  for (const auto& f : files) {
    CAPTURE(f.string());
    std::vector<Diagnostic> d;
    Scenario s = load_scenario(f.string(), d);
    CHECK(d.empty());
    CHECK(validate_scenario(s).empty());
    RunReport a = run_scenario(s, lenient());
    for (const auto& t : a.tasks) CHECK_MESSAGE(t.status == "ok", t.name << ": " << t.summary);
    CHECK(a.exit_code == 0);
    RunReport b = run_scenario(s, lenient());
    CHECK(a.to_json(false).dump() == b.to_json(false).dump());
  }
}
