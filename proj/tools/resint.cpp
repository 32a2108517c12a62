#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "resint/scenario.hpp"

using namespace resint;

namespace {

struct Flags {
  std::string file;
  std::string json;
  std::size_t budget = 0;
  bool allow_nonstandard = false;
  bool strict_complementarity = false;
};

int finish(const RunReport& rep, const Flags& f) {
  std::cout << rep.to_text();
  if (!f.json.empty()) {
    std::string text = rep.to_json().dump(2) + "\n";
    if (f.json == "-") {
      std::cout << text;
    } else {
      std::ofstream out(f.json);
      if (!out) {
        std::cerr << "cannot write " << f.json << "\n";
        return 1;
      }
      out << text;
    }
  }
  return rep.exit_code;
}

int run(const Flags& f, const std::optional<std::string>& task) {
  std::vector<Diagnostic> diags;
  Scenario s = load_scenario(f.file, diags);
  if (task) {
    s.tasks.clear();
    s.tasks.push_back(parse_task(*task, 0, diags));
  }
  RunReport rep;
  if (!diags.empty()) {
    rep.scenario = f.file;
    rep.diagnostics = diags;
    rep.exit_code = 2;
    return finish(rep, f);
  }
  RunOptions opt;
  opt.pairing.allow_nonstandard = f.allow_nonstandard;
  opt.pairing.strict_complementarity = f.strict_complementarity;
  if (f.budget > 0) opt.budget = f.budget;
  return finish(run_scenario(s, opt), f);
}

int validate(const Flags& f) {
  std::vector<Diagnostic> diags;
  Scenario s = load_scenario(f.file, diags);
  for (auto& d : validate_scenario(s)) diags.push_back(std::move(d));
  for (const auto& d : diags) std::cout << d.to_string(f.file) << "\n";
  if (diags.empty()) std::cout << f.file << ": ok\n";
  return diags.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersection pairings on singular varieties via resolution towers"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--json", f.json, "Write the JSON report to this path ('-' for stdout)");
  app.add_option("--budget", f.budget, "Reduction steps allowed per Groebner basis computation");
  app.add_flag("--allow-nonstandard-perversity", f.allow_nonstandard, "Accept perversities with p_1 > 0 or jumps");
  app.add_flag("--strict-complementarity", f.strict_complementarity, "Reject pairings with p + q != t");
  app.fallthrough();

  std::string strata, a, b, family, tower, p, q, mode = "strong";
  std::optional<std::string> task;

  auto* run_cmd = app.add_subcommand("run", "Run every task of a scenario");
  run_cmd->add_option("scenario", f.file)->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario without computing");
  validate_cmd->add_option("scenario", f.file)->required();

  auto* stratify_cmd = app.add_subcommand("stratify", "Print one stratification");
  stratify_cmd->add_option("scenario", f.file)->required();
  stratify_cmd->add_option("strata", strata)->required();

  auto* pair_cmd = app.add_subcommand("pair", "Pair two cycles");
  pair_cmd->add_option("scenario", f.file)->required();
  pair_cmd->add_option("strata", strata)->required();
  pair_cmd->add_option("first", a)->required();
  pair_cmd->add_option("second", b)->required();
  pair_cmd->add_option("-p", p, "Perversity of the first cycle")->required();
  pair_cmd->add_option("-q", q, "Perversity of the second cycle")->required();

  auto* audit_cmd = app.add_subcommand("audit", "Audit a family against a cycle");
  audit_cmd->add_option("scenario", f.file)->required();
  audit_cmd->add_option("strata", strata)->required();
  audit_cmd->add_option("family", family)->required();
  audit_cmd->add_option("cycle", b)->required();
  audit_cmd->add_option("-p", p, "Perversity of the family")->required();
  audit_cmd->add_option("-q", q, "Perversity of the cycle")->required();
  audit_cmd->add_option("--mode", mode, "weak or strong")->check(CLI::IsMember({"weak", "strong"}));

  auto* compare_cmd = app.add_subcommand("compare-towers", "Pair two cycles on a tower and on an extension of it");
  compare_cmd->add_option("scenario", f.file)->required();
  compare_cmd->add_option("strata", strata)->required();
  compare_cmd->add_option("tower", tower, "The extended tower")->required();
  compare_cmd->add_option("first", a)->required();
  compare_cmd->add_option("second", b)->required();
  compare_cmd->add_option("-p", p)->required();
  compare_cmd->add_option("-q", q)->required();

  CLI11_PARSE(app, argc, argv);

  if (validate_cmd->parsed()) return validate(f);
  if (stratify_cmd->parsed()) task = "stratify " + strata;
  if (pair_cmd->parsed()) task = "pair " + strata + " " + a + " " + b + " p=" + p + " q=" + q;
  if (audit_cmd->parsed()) task = "audit " + strata + " " + family + " " + b + " p=" + p + " q=" + q + " mode=" + mode;
  if (compare_cmd->parsed()) task = "compare " + strata + " " + tower + " " + a + " " + b + " p=" + p + " q=" + q;
  return run(f, task);
}
