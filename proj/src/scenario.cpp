#include "resint/scenario.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace resint {

const char* const kReportVersion = "1.0";

using nlohmann::ordered_json;

std::string Diagnostic::to_string(const std::string& path) const {
  std::string where = path;
  if (line > 0) where += ":" + std::to_string(line);
  return where + ": " + message;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

GeneratorList generator_list(const std::string& s, int line) {
  GeneratorList g;
  g.line = line;
  if (trim(s).empty()) return g;
  g.gens = split(s, ',');
  return g;
}

bool parse_int(const std::string& s, int& out) {
  try {
    std::size_t used = 0;
    out = std::stoi(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::optional<Scalar> parse_scalar(const std::string& s) {
  try {
    Scalar q(s);
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// "key=value key=value"
std::map<std::string, std::string> options(const std::string& s, int line, std::vector<Diagnostic>& diags) {
  std::map<std::string, std::string> out;
  for (const auto& w : words(s)) {
    auto eq = w.find('=');
    if (eq == std::string::npos || eq == 0) {
      diags.push_back({line, "expected key=value, got '" + w + "'"});
      continue;
    }
    out[w.substr(0, eq)] = w.substr(eq + 1);
  }
  return out;
}

}  // namespace

ScenarioTask parse_task(const std::string& line, int line_no, std::vector<Diagnostic>& diags) {
  ScenarioTask t;
  t.line = line_no;
  t.text = trim(line);
  for (const auto& w : words(line)) {
    auto eq = w.find('=');
    if (t.verb.empty()) {
      t.verb = w;
    } else if (eq != std::string::npos && eq > 0) {
      t.options[w.substr(0, eq)] = w.substr(eq + 1);
    } else {
      t.args.push_back(w);
    }
  }
  if (t.verb.empty()) diags.push_back({line_no, "empty task"});
  return t;
}

Scenario parse_scenario(const std::string& text, const std::string& path, std::vector<Diagnostic>& diags) {
  Scenario s;
  s.path = path;
  std::istringstream in(text);
  std::string raw, section, section_name;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string l = trim(raw.substr(0, raw.find('#')));
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') {
        diags.push_back({line, "unterminated section header"});
        continue;
      }
      auto w = words(l.substr(1, l.size() - 2));
      section = w.empty() ? "" : w[0];
      section_name = w.size() > 1 ? w[1] : "";
      static const std::set<std::string> known = {"ring", "space", "tower", "strata", "cycles", "families", "tasks"};
      if (!known.count(section)) {
        diags.push_back({line, "unknown section '" + section + "'"});
      } else if ((section == "tower" || section == "strata") && (section_name.empty() || w.size() > 2)) {
        diags.push_back({line, "section [" + section + "] needs exactly one name"});
      } else if (section != "tower" && section != "strata" && w.size() > 1) {
        diags.push_back({line, "section [" + section + "] takes no name"});
      }
      if (section == "tower") s.towers.push_back({section_name, {}, line});
      if (section == "strata") s.strata.push_back({section_name, "", {}, {}, {}, line});
      continue;
    }
    if (section.empty()) {
      diags.push_back({line, "content before the first section"});
      continue;
    }
    if (section == "tasks") {
      s.tasks.push_back(parse_task(l, line, diags));
      continue;
    }
    auto eq = l.find('=');
    if (eq == std::string::npos) {
      diags.push_back({line, "expected '=' in [" + section + "]"});
      continue;
    }
    std::string key = trim(l.substr(0, eq)), value = trim(l.substr(eq + 1));
    auto kw = words(key);
    if (section == "ring") {
      if (key == "vars") {
        s.vars = generator_list(value, line).gens;
        s.vars_line = line;
      } else {
        diags.push_back({line, "unknown key '" + key + "' in [ring]"});
      }
    } else if (section == "space") {
      if (key == "kind") {
        s.kind = value;
        if (value != "affine" && value != "projective") diags.push_back({line, "space kind must be affine or projective"});
      } else if (key == "relations" || key == "ideal") {
        s.relations = generator_list(value, line);
      } else {
        diags.push_back({line, "unknown key '" + key + "' in [space]"});
      }
    } else if (section == "tower") {
      if (kw.size() < 2 || kw.size() > 3 || kw[0] != "center" || (kw.size() == 3 && kw[2] != "total")) {
        diags.push_back({line, "expected 'center NAME [total] = generators'"});
        continue;
      }
      if (s.towers.empty()) continue;
      s.towers.back().centers.push_back({kw[1], generator_list(value, line), kw.size() == 3});
    } else if (section == "strata") {
      if (s.strata.empty()) continue;
      ScenarioStrata& st = s.strata.back();
      if (key == "tower") {
        st.tower = value;
      } else if (key == "rules") {
        if (!value.empty()) st.rules = split(value, ',');
      } else if (kw.size() == 2 && kw[0] == "manual") {
        int codim = 0;
        if (!parse_int(kw[1], codim)) {
          diags.push_back({line, "manual level '" + kw[1] + "' is not an integer"});
          continue;
        }
        st.manual.push_back({codim, generator_list(value, line)});
      } else if (kw.size() == 2 && kw[0] == "annotate") {
        st.annotations.push_back({kw[1], generator_list(value, line)});
      } else {
        diags.push_back({line, "unknown key '" + key + "' in [strata]"});
      }
    } else if (section == "cycles" || section == "families") {
      if (kw.size() != 1) {
        diags.push_back({line, "expected 'NAME = generators [| options]'"});
        continue;
      }
      auto bar = value.find('|');
      std::string gens = trim(value.substr(0, bar));
      auto opts = bar == std::string::npos ? std::map<std::string, std::string>{}
                                           : options(value.substr(bar + 1), line, diags);
      auto int_opt = [&](const std::string& k, int& out) {
        auto it = opts.find(k);
        if (it == opts.end()) return;
        if (!parse_int(it->second, out)) diags.push_back({line, "option " + k + " must be an integer"});
        opts.erase(it);
      };
      if (section == "cycles") {
        ScenarioCycle c{key, generator_list(gens, line)};
        int_opt("dim", c.dim);
        int_opt("mult", c.mult);
        for (const auto& [k, v] : opts) diags.push_back({line, "unknown cycle option '" + k + "'"});
        s.cycles.push_back(std::move(c));
      } else {
        ScenarioFamily f;
        f.name = key;
        f.ideal = generator_list(gens, line);
        int_opt("dim", f.dim);
        if (auto it = opts.find("param"); it != opts.end()) {
          f.parameter = it->second;
          opts.erase(it);
        }
        if (auto it = opts.find("marked"); it != opts.end()) {
          f.marked = split(it->second, ',');
          opts.erase(it);
        }
        for (const auto& [k, v] : opts) diags.push_back({line, "unknown family option '" + k + "'"});
        s.families.push_back(std::move(f));
      }
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path, std::vector<Diagnostic>& diags) {
  std::ifstream in(path);
  if (!in) {
    diags.push_back({0, "cannot open scenario file"});
    Scenario s;
    s.path = path;
    return s;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path, diags);
}

namespace {

enum class Ref { Tower, Strata, Cycle, Family };

struct TaskShape {
  std::vector<Ref> args;
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

const std::map<std::string, TaskShape>& task_shapes() {
  static const std::map<std::string, TaskShape> shapes = {
      {"charts", {{Ref::Tower}, {}, {}}},
      {"fibers", {{Ref::Tower}, {}, {"step"}}},
      {"stratify", {{Ref::Strata}, {}, {}}},
      {"check", {{Ref::Cycle, Ref::Strata}, {"p"}, {}}},
      {"minimal", {{Ref::Cycle, Ref::Strata}, {}, {}}},
      {"family", {{Ref::Family, Ref::Strata}, {"p"}, {"mode"}}},
      {"transform", {{Ref::Cycle, Ref::Tower}, {}, {}}},
      {"incidence", {{Ref::Cycle, Ref::Tower}, {}, {}}},
      {"pair", {{Ref::Strata, Ref::Cycle, Ref::Cycle}, {"p", "q"}, {}}},
      {"audit", {{Ref::Strata, Ref::Family, Ref::Cycle}, {"p", "q"}, {"mode"}}},
      {"compare", {{Ref::Strata, Ref::Tower, Ref::Cycle, Ref::Cycle}, {"p", "q"}, {}}},
      {"smooth-case", {{Ref::Tower, Ref::Cycle, Ref::Cycle}, {}, {}}},
      {"errors", {{Ref::Tower, Ref::Family}, {"value"}, {}}},
  };
  return shapes;
}

const char* ref_name(Ref r) {
  switch (r) {
    case Ref::Tower: return "tower";
    case Ref::Strata: return "strata";
    case Ref::Cycle: return "cycle";
    case Ref::Family: return "family";
  }
  return "";
}

}  // namespace

std::vector<Diagnostic> validate_scenario(const Scenario& s) {
  std::vector<Diagnostic> d;
  std::optional<Ring> ring;
  if (s.vars.empty()) {
    d.push_back({s.vars_line, "no variables declared in [ring]"});
  } else {
    std::set<std::string> seen;
    bool dup = false;
    for (const auto& v : s.vars) {
      if (!seen.insert(v).second) {
        d.push_back({s.vars_line, "variable '" + v + "' declared twice"});
        dup = true;
      }
    }
    if (!dup) ring = Ring(s.vars);
  }

  auto check_gens = [&](const Ring& r, const GeneratorList& g, const std::string& what) {
    for (const auto& p : g.gens) {
      try {
        parse_polynomial(r, p);
      } catch (const Error& e) {
        d.push_back({g.line, what + ": " + e.what()});
      }
    }
  };

  std::map<std::string, std::set<Ref>> names;
  auto declare = [&](Ref kind, const std::string& name, int line) {
    auto& kinds = names[name];
    bool clash = kinds.count(kind) || (kind == Ref::Cycle && kinds.count(Ref::Family)) ||
                 (kind == Ref::Family && kinds.count(Ref::Cycle));
    if (clash) d.push_back({line, std::string(ref_name(kind)) + " '" + name + "' declared twice"});
    kinds.insert(kind);
  };

  if (ring) check_gens(*ring, s.relations, "space");
  for (const auto& t : s.towers) {
    declare(Ref::Tower, t.name, t.line);
    std::set<std::string> centers;
    for (const auto& c : t.centers) {
      if (!centers.insert(c.name).second) d.push_back({c.ideal.line, "center '" + c.name + "' declared twice"});
      if (c.ideal.gens.size() < 2) {
        d.push_back({c.ideal.line, "center '" + c.name + "' needs at least two generators (a codimension >= 2 regular sequence)"});
      }
      if (ring) check_gens(*ring, c.ideal, "center '" + c.name + "'");
    }
  }
  auto tower_of = [&](const std::string& name) -> const ScenarioTower* {
    for (const auto& t : s.towers) {
      if (t.name == name) return &t;
    }
    return nullptr;
  };
  for (const auto& st : s.strata) {
    declare(Ref::Strata, st.name, st.line);
    const ScenarioTower* t = tower_of(st.tower);
    if (st.tower.empty()) {
      d.push_back({st.line, "strata '" + st.name + "' has no tower"});
    } else if (!t) {
      d.push_back({st.line, "strata '" + st.name + "' references undeclared tower '" + st.tower + "'"});
    }
    for (const auto& r : st.rules) {
      if (!parse_rule(r)) d.push_back({st.line, "unknown rule '" + r + "'"});
    }
    for (const auto& [codim, g] : st.manual) {
      if (ring) check_gens(*ring, g, "manual level");
      if (codim < 1) d.push_back({g.line, "manual level codimension must be positive"});
    }
    for (const auto& [center, g] : st.annotations) {
      if (ring) check_gens(*ring, g, "annotation");
      bool found = false;
      if (t) {
        for (const auto& c : t->centers) found = found || c.name == center;
      }
      if (t && !found) d.push_back({g.line, "annotation references unknown center '" + center + "'"});
    }
  }
  for (const auto& c : s.cycles) {
    declare(Ref::Cycle, c.name, c.ideal.line);
    if (c.ideal.gens.empty()) d.push_back({c.ideal.line, "cycle '" + c.name + "' has no generators"});
    if (ring) check_gens(*ring, c.ideal, "cycle '" + c.name + "'");
  }
  for (const auto& f : s.families) {
    declare(Ref::Family, f.name, f.ideal.line);
    if (f.dim < 0) d.push_back({f.ideal.line, "family '" + f.name + "' needs dim="});
    if (f.marked.size() < 2) d.push_back({f.ideal.line, "family '" + f.name + "' needs at least two marked values"});
    for (const auto& m : f.marked) {
      if (!parse_scalar(m)) d.push_back({f.ideal.line, "marked value '" + m + "' is not a rational number"});
    }
    if (ring) {
      if (ring->index_of(f.parameter)) {
        d.push_back({f.ideal.line, "family parameter '" + f.parameter + "' clashes with a ring variable"});
      } else {
        check_gens(ring->extended({f.parameter}), f.ideal, "family '" + f.name + "'");
      }
    }
  }

  for (const auto& t : s.tasks) {
    auto it = task_shapes().find(t.verb);
    if (it == task_shapes().end()) {
      d.push_back({t.line, "unknown task '" + t.verb + "'"});
      continue;
    }
    const TaskShape& shape = it->second;
    if (t.args.size() != shape.args.size()) {
      d.push_back({t.line, "task '" + t.verb + "' takes " + std::to_string(shape.args.size()) + " arguments"});
      continue;
    }
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      auto n = names.find(t.args[i]);
      if (n == names.end() || !n->second.count(shape.args[i])) {
        d.push_back({t.line, "task '" + t.verb + "' references undeclared " + ref_name(shape.args[i]) + " '" + t.args[i] + "'"});
      }
    }
    std::set<std::string> allowed(shape.required.begin(), shape.required.end());
    allowed.insert(shape.optional.begin(), shape.optional.end());
    allowed.insert({"expect", "name"});
    for (const auto& r : shape.required) {
      if (!t.options.count(r)) d.push_back({t.line, "task '" + t.verb + "' needs " + r + "="});
    }
    for (const auto& [k, v] : t.options) {
      if (!allowed.count(k)) {
        d.push_back({t.line, "task '" + t.verb + "' has unknown option '" + k + "'"});
      } else if (k == "p" || k == "q") {
        try {
          Perversity::parse(v);
        } catch (const Error& e) {
          d.push_back({t.line, e.what()});
        }
      } else if (k == "mode" && v != "weak" && v != "strong") {
        d.push_back({t.line, "mode must be weak or strong"});
      } else if (k == "value" && !parse_scalar(v)) {
        d.push_back({t.line, "value '" + v + "' is not a rational number"});
      } else if (k == "step") {
        int step = 0;
        if (!parse_int(v, step) || step < 0) d.push_back({t.line, "step must be a non-negative integer"});
      }
    }
  }
  return d;
}

namespace {

ordered_json gens_json(const Ideal& i) {
  ordered_json a = ordered_json::array();
  for (const auto& g : i.generators()) a.push_back(g.to_string());
  return a;
}

ordered_json ideal_json(const Ideal& i) { return gens_json(i.reduced()); }

ordered_json counters_json(const EngineCounters& c) {
  return {{"reductions", c.reductions}, {"groebner_calls", c.groebner_calls}, {"spairs", c.spairs}};
}

ordered_json dim_json(const std::optional<int>& d) { return d ? ordered_json(*d) : ordered_json(nullptr); }

ordered_json levels_json(const std::vector<LevelCheck>& levels) {
  ordered_json a = ordered_json::array();
  for (const auto& l : levels) {
    a.push_back({{"level", l.level}, {"dim", dim_json(l.dim)}, {"bound", l.bound}, {"pass", l.pass}});
  }
  return a;
}

ordered_json perversity_json(const PerversityReport& r) {
  return {{"r", r.r},
          {"perversity", r.perversity.to_string()},
          {"pass", r.pass},
          {"nonstandard", r.nonstandard},
          {"levels", levels_json(r.levels)}};
}

ordered_json family_json(const FamilyReport& f) {
  ordered_json marked = ordered_json::array();
  for (const auto& [v, rep] : f.marked) marked.push_back({{"value", scalar_to_string(v)}, {"check", perversity_json(rep)}});
  ordered_json special = ordered_json::array();
  for (const auto& sf : f.special) {
    special.push_back({{"locus", sf.locus.to_string()}, {"pass", sf.pass}, {"levels", levels_json(sf.levels)}});
  }
  return {{"mode", f.mode == FamilyMode::Weak ? "weak" : "strong"},
          {"pass", f.pass},
          {"marked", marked},
          {"generic", levels_json(f.generic)},
          {"special", special}};
}

ordered_json zero_cycle_json(const ZeroCycle& z) {
  ordered_json pts = ordered_json::array();
  for (const auto& p : z.points) {
    pts.push_back({{"point", p.label}, {"key", p.key}, {"mult", p.mult}, {"residue_degree", p.point.residue_degree}});
  }
  return {{"degree", z.degree()}, {"points", pts}};
}

ordered_json pairing_json(const PairingReport& r) {
  ordered_json charts = ordered_json::array();
  for (const auto& c : r.upstairs.charts) charts.push_back({{"chart", c.chart}, {"ideal", ideal_json(c.ideal)}});
  ordered_json up = zero_cycle_json(r.upstairs.cycle);
  up["charts"] = charts;
  return {{"first", perversity_json(r.first)},
          {"second", perversity_json(r.second)},
          {"complementary", r.complementary},
          {"hypotheses", r.hypotheses},
          {"warnings", r.warnings},
          {"upstairs", up},
          {"pushed", zero_cycle_json(r.pushed)},
          {"degree", r.degree}};
}

ordered_json error_term_json(const ErrorTerm& e) {
  ordered_json comps = ordered_json::array();
  for (const auto& c : e.components) {
    comps.push_back({{"chart", c.chart},
                     {"ideal", ideal_json(c.ideal)},
                     {"dim", c.dim},
                     {"mult", c.mult},
                     {"image", ideal_json(c.image)},
                     {"over_singular_locus", c.over_singular_locus}});
  }
  return {{"value", scalar_to_string(e.value)},
          {"support_only", e.support_only},
          {"over_singular_locus", e.over_singular_locus()},
          {"components", comps}};
}

class Context {
 public:
  Context(const Scenario& s, const RunOptions& opt) : sc_(s), opt_(opt), ring_(s.vars) {}

  const Ring& ring() const { return ring_; }
  const RunOptions& options() const { return opt_; }

  Ideal ideal(const GeneratorList& g) const { return Ideal::parse(ring_, g.gens); }

  const Space& space() {
    if (!space_) {
      Ideal rel = ideal(sc_.relations);
      space_ = sc_.kind == "projective" ? Space::projective(ring_, rel) : Space::affine(ring_, rel);
    }
    return *space_;
  }

  const ScenarioTower& tower_spec(const std::string& name) const {
    for (const auto& t : sc_.towers) {
      if (t.name == name) return t;
    }
    throw Error(ErrorKind::Validation, "undeclared tower '" + name + "'");
  }

  const Tower& tower(const std::string& name) {
    auto it = towers_.find(name);
    if (it != towers_.end()) return it->second;
    std::vector<CenterSpec> specs;
    for (const auto& c : tower_spec(name).centers) {
      specs.push_back({c.name, ideal(c.ideal), c.total ? CenterSpec::Mode::Total : CenterSpec::Mode::Proper});
    }
    return towers_.emplace(name, Tower::build(space(), specs)).first->second;
  }

  const ScenarioStrata& strata_spec(const std::string& name) const {
    for (const auto& s : sc_.strata) {
      if (s.name == name) return s;
    }
    throw Error(ErrorKind::Validation, "undeclared strata '" + name + "'");
  }

  const Stratification& strata(const std::string& name) {
    auto it = strata_.find(name);
    if (it != strata_.end()) return it->second;
    const ScenarioStrata& spec = strata_spec(name);
    StrataConfig cfg;
    for (const auto& r : spec.rules) cfg.rules.insert(*parse_rule(r));
    for (const auto& [codim, g] : spec.manual) cfg.manual.push_back({codim, ideal(g)});
    for (const auto& [center, g] : spec.annotations) cfg.annotations.push_back({center, ideal(g)});
    return strata_.emplace(name, assemble_stratification(tower(spec.tower), cfg)).first->second;
  }

  const Cycle& cycle(const std::string& name) {
    auto it = cycles_.find(name);
    if (it != cycles_.end()) return it->second;
    for (const auto& c : sc_.cycles) {
      if (c.name == name) return cycles_.emplace(name, make_cycle(space(), c.name, ideal(c.ideal), c.mult, c.dim)).first->second;
    }
    throw Error(ErrorKind::Validation, "undeclared cycle '" + name + "'");
  }

  const CycleFamily& family(const std::string& name) {
    auto it = families_.find(name);
    if (it != families_.end()) return it->second;
    for (const auto& f : sc_.families) {
      if (f.name != name) continue;
      std::vector<Scalar> marked;
      for (const auto& m : f.marked) marked.push_back(*parse_scalar(m));
      return families_.emplace(name, make_family(space(), f.name, f.parameter, f.ideal.gens, marked, f.dim)).first->second;
    }
    throw Error(ErrorKind::Validation, "undeclared family '" + name + "'");
  }

 private:
  const Scenario& sc_;
  RunOptions opt_;
  Ring ring_;
  std::optional<Space> space_;
  std::map<std::string, Tower> towers_;
  std::map<std::string, Stratification> strata_;
  std::map<std::string, Cycle> cycles_;
  std::map<std::string, CycleFamily> families_;
};

FamilyMode mode_of(const ScenarioTask& t) {
  auto it = t.options.find("mode");
  return it != t.options.end() && it->second == "weak" ? FamilyMode::Weak : FamilyMode::Strong;
}

Perversity perversity_of(const ScenarioTask& t, const std::string& key) { return Perversity::parse(t.options.at(key)); }

std::string pass_word(bool b) { return b ? "pass" : "fail"; }

using Runner = std::function<void(Context&, const ScenarioTask&, TaskResult&)>;

void run_charts(Context& cx, const ScenarioTask& t, TaskResult& r) {
  const Tower& tw = cx.tower(t.args[0]);
  ordered_json levels = ordered_json::array();
  bool top_smooth = true;
  for (std::size_t n = 0; n < tw.levels().size(); ++n) {
    ordered_json charts = ordered_json::array();
    for (const auto& c : tw.levels()[n]) {
      Ideal sing = singular_locus(c.chart);
      bool smooth = sing.is_trivial();
      if (n + 1 == tw.levels().size()) top_smooth = top_smooth && smooth;
      charts.push_back({{"label", c.label},
                        {"vars", c.ring().names()},
                        {"relations", gens_json(c.relations())},
                        {"smooth", smooth},
                        {"singular_locus", ideal_json(sing)}});
    }
    levels.push_back({{"level", n}, {"charts", charts}});
  }
  r.payload = {{"levels", levels}, {"top_charts", tw.top().size()}, {"top_smooth", top_smooth}};
  r.summary = "charts=" + std::to_string(tw.top().size()) + (top_smooth ? "/smooth" : "/singular");
}

void run_fibers(Context& cx, const ScenarioTask& t, TaskResult& r) {
  const Tower& tw = cx.tower(t.args[0]);
  int step = 0;
  if (auto it = t.options.find("step"); it != t.options.end()) step = std::stoi(it->second);
  if (static_cast<std::size_t>(step) >= tw.size()) throw Error(ErrorKind::Validation, "tower has no step " + std::to_string(step));
  ConicFibers f = conic_fibers(tw, static_cast<std::size_t>(step));
  ordered_json loci = ordered_json::array();
  for (const auto& l : f.degenerate_loci) loci.push_back(ideal_json(l));
  ordered_json points = ordered_json::array();
  std::size_t reducible = 0;
  for (const auto& p : f.points) {
    ordered_json factors = ordered_json::array();
    for (const auto& fa : p.factors) factors.push_back({{"factor", fa.poly.to_string()}, {"multiplicity", fa.multiplicity}});
    points.push_back({{"point", p.label}, {"chart", p.chart}, {"residue_degree", p.residue_degree},
                      {"factors", factors}, {"reducible", p.reducible()}});
    if (p.reducible()) ++reducible;
  }
  ordered_json charts = ordered_json::array();
  for (std::size_t k = 0; k < f.charts.size(); ++k) {
    charts.push_back({{"chart", f.charts[k]}, {"rank_locus", ideal_json(f.rank_loci[k])}});
  }
  r.payload = {{"step", step},
               {"conic_charts", charts},
               {"generic_irreducible", f.generic_irreducible},
               {"degenerate_loci", loci},
               {"points", points}};
  r.summary = std::string(f.generic_irreducible ? "generic=irreducible" : "generic=reducible") + "/reducible=" +
              std::to_string(reducible);
}

void run_stratify(Context& cx, const ScenarioTask& t, TaskResult& r) {
  const Stratification& s = cx.strata(t.args[0]);
  ordered_json rules = ordered_json::array();
  for (Rule ru : s.rules()) rules.push_back(rule_name(ru));
  ordered_json pieces = ordered_json::array();
  for (const auto& p : s.pieces()) {
    pieces.push_back({{"codim", p.codim}, {"ideal", ideal_json(p.ideal)}, {"rule", rule_name(p.rule)}, {"source", p.source}});
  }
  ordered_json levels = ordered_json::array();
  for (int i = 1; i <= s.dimension(); ++i) {
    Ideal l = s.level(i);
    levels.push_back({{"level", i}, {"ideal", ideal_json(l)}, {"dim", dim_json(s.space().dimension_of(l))}});
  }
  r.payload = {{"tower", cx.strata_spec(t.args[0]).tower},
               {"rules", rules},
               {"pieces", pieces},
               {"levels", levels},
               {"warnings", s.warnings()}};
  r.summary = "pieces=" + std::to_string(s.pieces().size());
}

void run_check(Context& cx, const ScenarioTask& t, TaskResult& r) {
  PerversityReport rep = perversity_check(cx.cycle(t.args[0]), cx.strata(t.args[1]), perversity_of(t, "p"));
  if (rep.nonstandard && !cx.options().pairing.allow_nonstandard) {
    throw Error(ErrorKind::NonstandardPerversity,
                "perversity " + rep.perversity.to_string() + " is not standard; pass --allow-nonstandard-perversity");
  }
  r.payload = perversity_json(rep);
  r.summary = pass_word(rep.pass);
}

void run_minimal(Context& cx, const ScenarioTask& t, TaskResult& r) {
  auto p = minimal_perversity(cx.cycle(t.args[0]), cx.strata(t.args[1]));
  r.payload = {{"perversity", p ? ordered_json(p->to_string()) : ordered_json(nullptr)}};
  r.summary = p ? p->to_string() : "none";
}

void run_family(Context& cx, const ScenarioTask& t, TaskResult& r) {
  Perversity p = perversity_of(t, "p");
  if (!p.is_standard() && !cx.options().pairing.allow_nonstandard) {
    throw Error(ErrorKind::NonstandardPerversity,
                "perversity " + p.to_string() + " is not standard; pass --allow-nonstandard-perversity");
  }
  FamilyReport f = family_perversity_check(cx.space(), cx.family(t.args[0]), cx.strata(t.args[1]), p, mode_of(t));
  r.payload = family_json(f);
  r.summary = pass_word(f.pass);
}

void run_transform(Context& cx, const ScenarioTask& t, TaskResult& r) {
  const Tower& tw = cx.tower(t.args[1]);
  TopCycle tc = transform_cycle(tw, cx.cycle(t.args[0]));
  ordered_json comps = ordered_json::array();
  for (const auto& c : tc.components) {
    ordered_json charts = ordered_json::array();
    for (std::size_t k = 0; k < c.charts.size(); ++k) {
      charts.push_back({{"chart", tw.top()[k].label}, {"ideal", ideal_json(c.charts[k])}});
    }
    comps.push_back({{"dim", c.dim}, {"mult", c.mult}, {"charts", charts}});
  }
  r.payload = {{"cycle", tc.name}, {"components", comps}};
  r.summary = "components=" + std::to_string(tc.components.size());
}

void run_incidence(Context& cx, const ScenarioTask& t, TaskResult& r) {
  const Space& sp = cx.space();
  const Cycle& c = cx.cycle(t.args[0]);
  const ScenarioTower& spec = cx.tower_spec(t.args[1]);
  std::vector<Ideal> parts;
  for (const auto& comp : c.components) parts.push_back(comp.ideal);
  Ideal support = sp.union_of(parts);
  ordered_json out = ordered_json::array();
  std::vector<std::string> tokens;
  for (const auto& center : spec.centers) {
    Ideal meet = sp.normalize(support + cx.ideal(center.ideal));
    auto dim = sp.dimension_of(meet);
    ordered_json points = ordered_json::array();
    if (dim && *dim == 0) {
      if (sp.is_projective()) {
        for (const auto& p : projective_points(meet)) points.push_back(p.to_string());
      } else {
        for (const auto& p : zero_dim_decompose(sp.to_chart(meet, 0), sp.charts()[0].label)) points.push_back(p.point.to_string());
      }
    }
    out.push_back({{"center", center.name}, {"ideal", ideal_json(meet)}, {"dim", dim_json(dim)}, {"points", points}});
    tokens.push_back(!dim ? "0" : *dim == 0 ? std::to_string(points.size()) : "dim" + std::to_string(*dim));
  }
  r.payload = {{"cycle", c.name}, {"incidences", out}};
  std::string s;
  for (std::size_t i = 0; i < tokens.size(); ++i) s += (i ? "," : "") + tokens[i];
  r.summary = "points=" + s;
}

void run_pair(Context& cx, const ScenarioTask& t, TaskResult& r) {
  const ScenarioStrata& spec = cx.strata_spec(t.args[0]);
  PairingReport rep = pair(cx.tower(spec.tower), cx.strata(t.args[0]), cx.cycle(t.args[1]), cx.cycle(t.args[2]),
                           perversity_of(t, "p"), perversity_of(t, "q"), cx.options().pairing);
  r.payload = pairing_json(rep);
  r.summary = "degree=" + std::to_string(rep.degree);
}

void run_audit(Context& cx, const ScenarioTask& t, TaskResult& r) {
  const ScenarioStrata& spec = cx.strata_spec(t.args[0]);
  AuditReport a = audit_well_definedness(cx.tower(spec.tower), cx.strata(t.args[0]), cx.family(t.args[1]),
                                         cx.cycle(t.args[2]), perversity_of(t, "p"), perversity_of(t, "q"), mode_of(t),
                                         cx.options().pairing);
  ordered_json values = ordered_json::array();
  for (const auto& v : a.values) values.push_back(scalar_to_string(v));
  ordered_json pairs = ordered_json::array();
  for (const auto& p : a.pairs) pairs.push_back(p ? pairing_json(*p) : ordered_json(nullptr));
  ordered_json errors = ordered_json::array();
  for (const auto& e : a.errors) errors.push_back(error_term_json(e));
  ordered_json degrees = ordered_json::array();
  for (const auto& p : a.pairs) degrees.push_back(p ? ordered_json(p->degree) : ordered_json(nullptr));
  r.payload = {{"verdict", verdict_name(a.verdict)},
               {"values", values},
               {"degrees", degrees},
               {"point_level", a.same_points ? "same" : "moved"},
               {"family", family_json(a.family)},
               {"second", perversity_json(a.second)},
               {"pairs", pairs},
               {"errors", errors},
               {"hypotheses", a.hypotheses},
               {"notes", a.notes}};
  r.summary = verdict_name(a.verdict);
}

void run_compare(Context& cx, const ScenarioTask& t, TaskResult& r) {
  const ScenarioStrata& spec = cx.strata_spec(t.args[0]);
  TowerComparison c = compare_towers(cx.tower(spec.tower), cx.tower(t.args[1]), cx.strata(t.args[0]), cx.cycle(t.args[2]),
                                     cx.cycle(t.args[3]), perversity_of(t, "p"), perversity_of(t, "q"), cx.options().pairing);
  r.payload = {{"first", pairing_json(c.first)},
               {"second", pairing_json(c.second)},
               {"equal_degree", c.equal_degree},
               {"equal_points", c.equal_points}};
  r.summary = c.equal() ? "equal" : "different";
}

void run_smooth_case(Context& cx, const ScenarioTask& t, TaskResult& r) {
  SmoothCaseReport s = smooth_case_check(cx.tower(t.args[0]), cx.cycle(t.args[1]), cx.cycle(t.args[2]));
  r.payload = {{"codim", s.codim},
               {"p", s.p},
               {"q", s.q},
               {"hypothesis", s.hypothesis},
               {"pushed_degree", s.pushed_degree},
               {"direct_degree", s.direct_degree},
               {"agree", s.agree()}};
  r.summary = std::string(s.agree() ? "agree" : "disagree") + (s.hypothesis ? "" : "/outside-hypothesis");
}

void run_errors(Context& cx, const ScenarioTask& t, TaskResult& r) {
  ErrorTerm e = error_terms(cx.tower(t.args[0]), cx.family(t.args[1]), *parse_scalar(t.options.at("value")));
  r.payload = error_term_json(e);
  r.summary = e.components.empty() ? "empty" : "components=" + std::to_string(e.components.size());
}

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m = {
      {"charts", run_charts},   {"fibers", run_fibers},       {"stratify", run_stratify},
      {"check", run_check},     {"minimal", run_minimal},     {"family", run_family},
      {"transform", run_transform}, {"incidence", run_incidence}, {"pair", run_pair},
      {"audit", run_audit},     {"compare", run_compare},     {"smooth-case", run_smooth_case},
      {"errors", run_errors},
  };
  return m;
}

std::string task_name(const ScenarioTask& t) {
  if (auto it = t.options.find("name"); it != t.options.end()) return it->second;
  std::string n = t.verb;
  for (const auto& a : t.args) n += " " + a;
  return n;
}

std::string base_name(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace

RunReport run_scenario(const Scenario& s, const RunOptions& opt) {
  RunReport rep;
  rep.scenario = base_name(s.path);
  rep.diagnostics = validate_scenario(s);
  if (!rep.diagnostics.empty()) {
    rep.exit_code = 2;
    return rep;
  }
  EngineBudget saved = default_budget();
  if (opt.budget) {
    EngineBudget b = saved;
    b.max_reductions = *opt.budget;
    set_default_budget(b);
  }
  Context cx(s, opt);
  bool budget_hit = false, failed = false;
  for (const auto& t : s.tasks) {
    TaskResult r;
    r.name = task_name(t);
    reset_engine_counters();
    auto start = std::chrono::steady_clock::now();
    try {
      runners().at(t.verb)(cx, t, r);
      r.status = "ok";
    } catch (const Error& e) {
      r.status = std::string("error:") + kind_name(e.kind());
      r.payload = {{"message", e.what()}};
      r.summary = e.what();
    }
    r.counters = engine_counters();
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    auto expect = t.options.find("expect");
    if (r.status == "ok" && expect != t.options.end() && expect->second != r.summary) {
      r.status = "error:expectation";
      r.payload["expected"] = expect->second;
    }
    if (r.status == "error:budget-exceeded") budget_hit = true;
    if (r.status != "ok") failed = true;
    // Audits other than CONSISTENT fail the run unless the scenario states the verdict.
    if (t.verb == "audit" && r.status == "ok" && r.summary != "CONSISTENT" && expect == t.options.end()) failed = true;
    rep.tasks.push_back(std::move(r));
  }
  set_default_budget(saved);
  rep.exit_code = budget_hit ? 3 : failed ? 1 : 0;
  return rep;
}

ordered_json RunReport::to_json(bool with_timing) const {
  ordered_json tasks_json = ordered_json::array();
  for (const auto& t : tasks) {
    ordered_json j = {{"name", t.name},
                      {"status", t.status},
                      {"summary", t.summary},
                      {"payload", t.payload},
                      {"counters", counters_json(t.counters)}};
    if (with_timing) j["timing_ms"] = t.timing_ms;
    tasks_json.push_back(std::move(j));
  }
  ordered_json out = {{"scenario", scenario}, {"version", kReportVersion}, {"tasks", tasks_json}};
  if (!diagnostics.empty()) {
    ordered_json d = ordered_json::array();
    for (const auto& x : diagnostics) d.push_back({{"line", x.line}, {"message", x.message}});
    out["diagnostics"] = d;
  }
  out["exit_code"] = exit_code;
  return out;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "scenario " << scenario << "\n";
  for (const auto& d : diagnostics) os << d.to_string(scenario) << "\n";
  for (const auto& t : tasks) {
    os << (t.status == "ok" ? "  ok     " : "  FAILED ") << t.name << ": " << t.summary;
    if (t.status != "ok") os << " [" << t.status << "]";
    os << "\n";
  }
  os << tasks.size() << " task(s), exit " << exit_code << "\n";
  return os.str();
}

}  // namespace resint
