#include "condlog/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "condlog/errors.hpp"
#include "condlog/frame_props.hpp"
#include "condlog/io.hpp"
#include "condlog/kmodel.hpp"
#include "condlog/logic.hpp"
#include "condlog/parser.hpp"
#include "condlog/search.hpp"
#include "condlog/semantics.hpp"

namespace condlog {

namespace {

using nlohmann::json;

struct Common {
  std::string lang = "L";
  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

// What a subcommand produces: an exit code, a JSON document and a text report.
struct Report {
  int code = 0;
  json doc = json::object();
  std::ostringstream text;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--lang", c.lang, "language: L, LE or L=")->capture_default_str();
  sub->add_option("--format", c.format, "output: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "seed for randomized corpora")->capture_default_str();
  sub->add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
}

Language language_of(const Common& c) {
  auto lang = parse_language(c.lang);
  if (!lang) throw InputError("unknown language '" + c.lang + "'");
  return *lang;
}

// A literal, or @path naming a formula file.
std::vector<Formula> read_formulas(const std::vector<std::string>& specs, Language lang) {
  std::vector<Formula> out;
  for (const auto& spec : specs) {
    if (!spec.empty() && spec[0] == '@') {
      auto fs = parse_formula_lines(read_text_file(spec.substr(1)), lang);
      out.insert(out.end(), fs.begin(), fs.end());
    } else {
      out.push_back(parse_formula(spec, lang));
    }
  }
  if (out.empty()) throw InputError("no formula given");
  return out;
}

Model read_model(const std::string& path) { return load_model_text(read_text_file(path)); }

std::vector<std::pair<std::string, std::string>> split_assignments(
    const std::vector<std::string>& specs) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& spec : specs) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("assignment '" + item + "' lacks '='");
      out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
  }
  return out;
}

Variable variable_of(const std::string& name) {
  auto v = parse_variable_name(name);
  if (!v) throw InputError("'" + name + "' is not a variable");
  return *v;
}

Assignment model_assignment(const Frame& frame, const std::vector<std::string>& specs) {
  Assignment g;
  for (const auto& [var, value] : split_assignments(specs)) {
    auto e = frame.element_index(value);
    if (!e) throw InputError("'" + value + "' is not a domain element");
    g[variable_of(var)] = *e;
  }
  return g;
}

KAssignment k_assignment(const std::vector<std::string>& specs) {
  KAssignment g;
  for (const auto& [var, value] : split_assignments(specs)) {
    std::int64_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw InputError("'" + value + "' is not an integer");
    }
    if (k > -1) throw InputError("K elements are negative integers, got " + value);
    g[variable_of(var)] = k;
  }
  return g;
}

std::size_t world_of(const Frame& frame, const std::string& name) {
  auto w = frame.world_index(name);
  if (!w) throw InputError("'" + name + "' is not a world");
  return *w;
}

std::string assignment_text(const Frame& frame, const Assignment& g) {
  std::string s;
  for (const auto& [v, e] : g) {
    if (!s.empty()) s += ", ";
    s += variable_name(v) + "=" + frame.domain_names[e];
  }
  return s.empty() ? "{}" : s;
}

json assignment_json(const Frame& frame, const Assignment& g) {
  json out = json::object();
  for (const auto& [v, e] : g) out[variable_name(v)] = frame.domain_names[e];
  return out;
}

// --- subcommands ------------------------------------------------------------------

struct ParseArgs {
  std::vector<std::string> formulas;
};

void run_parse(const Common& c, const ParseArgs& a, Report& r) {
  const auto fs = read_formulas(a.formulas, language_of(c));
  json items = json::array();
  for (const auto& f : fs) {
    const auto m = metrics(f);
    json vars = json::array();
    for (Variable v : free_variables(f)) vars.push_back(variable_name(v));
    const auto minimal = minimal_language(f);
    items.push_back({{"formula", print_formula(f)},
                     {"size", m.size},
                     {"quantifierRank", m.quantifier_rank},
                     {"freeVariables", vars},
                     {"language", minimal ? std::string(language_name(*minimal)) : "none"}});
    r.text << print_formula(f) << "\n";
  }
  r.doc["formulas"] = items;
}

struct EvalArgs {
  std::string model;
  std::string world;
  std::vector<std::string> formulas;
  std::vector<std::string> assign;
};

void run_eval(const Common& c, const EvalArgs& a, Report& r) {
  const Model m = read_model(a.model);
  const auto fs = read_formulas(a.formulas, language_of(c));
  const std::size_t w = world_of(m.frame, a.world);
  const Assignment g = model_assignment(m.frame, a.assign);
  json results = json::array();
  for (const auto& f : fs) {
    for (Variable v : free_variables(f))
      if (!g.count(v)) throw InputError("free variable " + variable_name(v) + " is unassigned");
    const bool value = eval(m, w, g, f);
    if (!value) r.code = 1;
    results.push_back({{"formula", print_formula(f)}, {"value", value}});
    r.text << (value ? "true" : "false") << "\n";
  }
  r.doc["world"] = a.world;
  r.doc["results"] = results;
}

struct ModelValidArgs {
  std::string model;
  std::vector<std::string> formulas;
};

void run_model_valid(const Common& c, const ModelValidArgs& a, Report& r) {
  const Model m = read_model(a.model);
  const auto fs = read_formulas(a.formulas, language_of(c));
  const auto cex = model_valid(m, fs);
  r.doc["valid"] = !cex.has_value();
  if (!cex) {
    r.text << "valid\n";
    return;
  }
  r.code = 1;
  const std::string formula = print_formula(fs[cex->formula_index]);
  r.doc["counterexample"] = {{"formula", formula},
                             {"world", m.frame.world_names[cex->world]},
                             {"assignment", assignment_json(m.frame, cex->assignment)}};
  r.text << "counterexample: " << formula << " fails at world " << m.frame.world_names[cex->world]
         << " under " << assignment_text(m.frame, cex->assignment) << "\n";
}

struct FrameValidArgs {
  std::string model;
  std::vector<std::string> formulas;
  std::size_t max_bits = 24;
};

void run_frame_valid(const Common& c, const FrameValidArgs& a, Report& r) {
  const Model m = read_model(a.model);
  const auto fs = read_formulas(a.formulas, language_of(c));
  FrameValidOptions options;
  options.max_bits = a.max_bits;
  json results = json::array();
  for (const auto& f : fs) {
    const auto cm = frame_valid(m.frame, f, options);
    json item = {{"formula", print_formula(f)}, {"valid", !cm.has_value()}};
    if (!cm) {
      r.text << print_formula(f) << ": valid\n";
    } else {
      r.code = 1;
      const Model counter{m.frame, cm->interp};
      item["countermodel"] = {{"world", m.frame.world_names[cm->world]},
                              {"assignment", assignment_json(m.frame, cm->assignment)},
                              {"interpretation", model_to_json(counter)["interpretation"]}};
      r.text << print_formula(f) << ": fails at world " << m.frame.world_names[cm->world]
             << " under " << assignment_text(m.frame, cm->assignment) << " with interpretation "
             << model_to_json(counter)["interpretation"].dump() << "\n";
    }
    results.push_back(item);
  }
  r.doc["results"] = results;
}

struct FramePropsArgs {
  std::string model;
  std::vector<std::string> require;
};

void run_frame_props(const Common&, const FramePropsArgs& a, Report& r) {
  const Model m = read_model(a.model);
  FrameReport report = m.frame.kind == FrameKind::Selection ? check_selection_props(m.frame)
                                                              : check_ordering_props(m.frame);
  report.merge(check_domain_props(m.frame));
  json conditions = json::object();
  for (const auto& [cond, ok] : report.verdicts) {
    const std::string name(condition_name(cond));
    json item = {{"holds", ok}};
    r.text << name << ": " << (ok ? "holds" : "fails");
    if (auto it = report.witnesses.find(cond); it != report.witnesses.end()) {
      const std::string w = it->second.describe(m.frame);
      item["witness"] = w;
      r.text << " (" << w << ")";
    }
    r.text << "\n";
    conditions[name] = item;
  }
  r.doc["conditions"] = conditions;
  auto summary = [&](const char* name, const std::optional<bool>& v) {
    if (!v) return;
    r.doc[name] = *v;
    r.text << name << ": " << (*v ? "true" : "false") << "\n";
  };
  summary("weaklyStalnakerian", report.weakly_stalnakerian);
  summary("Stalnakerian", report.stalnakerian);
  summary("Lewisian", report.lewisian);
  for (const auto& name : a.require) {
    if (name == "weaklyStalnakerian" || name == "Stalnakerian" || name == "Lewisian") {
      const auto& v = name == "weaklyStalnakerian" ? report.weakly_stalnakerian
                      : name == "Stalnakerian"     ? report.stalnakerian
                                                   : report.lewisian;
      if (!v) throw InputError(name + " does not apply to this frame kind");
      if (!*v) r.code = 1;
      continue;
    }
    auto cond = parse_condition(name);
    if (!cond) throw InputError("unknown condition '" + name + "'");
    if (!report.verdicts.count(*cond))
      throw InputError(name + " does not apply to this frame kind");
    if (!report.holds(*cond)) r.code = 1;
  }
}

struct ConvertArgs {
  std::string model;
  std::string to;
  std::string out;
};

void run_convert(const Common&, const ConvertArgs& a, Report& r) {
  const Model m = read_model(a.model);
  const Model converted = a.to == "selection" ? ordering_to_selection(m) : selection_to_ordering(m);
  r.doc = model_to_json(converted);
  if (!a.out.empty()) {
    std::ofstream file(a.out);
    if (!file) throw InputError("cannot write " + a.out);
    file << r.doc.dump(2) << "\n";
    r.text << "wrote " << a.out << "\n";
  } else {
    r.text << r.doc.dump(2) << "\n";
  }
}

struct ProveArgs {
  std::string proof;
  bool axiom11_reverse = false;
};

void run_prove(const Common&, const ProveArgs& a, Report& r) {
  const ProofScript proof = load_proof_text(read_text_file(a.proof));
  AxiomOptions options;
  options.axiom11_reverse = a.axiom11_reverse;
  const Verdict v = verify_proof(proof, options);
  r.doc = {{"logic", logic_name(proof.logic)},
           {"lines", proof.lines.size()},
           {"accepted", v.accepted}};
  if (v.accepted) {
    r.text << "accepted: " << proof.lines.size() << " lines in " << logic_name(proof.logic);
    if (!proof.lines.empty()) r.text << ", proves " << print_formula(proof.lines.back().formula);
    r.text << "\n";
  } else {
    r.code = 1;
    r.doc["line"] = v.line;
    r.doc["reason"] = v.reason;
    r.text << "rejected at line " << v.line << ": " << v.reason << "\n";
  }
}

// --- kmodel -----------------------------------------------------------------------

struct KEvalArgs {
  std::string world = "-inf";
  std::vector<std::string> formulas;
  std::vector<std::string> assign;
};

KOptions k_options(const Common& c) {
  if (language_of(c) == Language::LE) throw InputError("K is defined for L and L=");
  return {};
}

void run_k_eval(const Common& c, const KEvalArgs& a, Report& r) {
  const auto fs = read_formulas(a.formulas, language_of(c));
  const auto w = parse_kworld(a.world);
  if (!w) throw InputError("'" + a.world + "' is not a world of K");
  const KAssignment g = k_assignment(a.assign);
  KEngine engine(k_options(c));
  json results = json::array();
  for (const auto& f : fs) {
    const bool value = engine.eval(f, *w, g);
    if (!value) r.code = 1;
    results.push_back({{"formula", print_formula(f)}, {"value", value}});
    r.text << (value ? "true" : "false") << "\n";
  }
  r.doc["world"] = to_string(*w);
  r.doc["results"] = results;
}

void run_k_denote(const Common& c, const KEvalArgs& a, Report& r) {
  const auto fs = read_formulas(a.formulas, language_of(c));
  const KAssignment g = k_assignment(a.assign);
  KEngine engine(k_options(c));
  json results = json::array();
  for (const auto& f : fs) {
    const SymbolicWorldSet s = engine.denote(f, g);
    json intervals = json::array();
    for (const auto& iv : s.intervals()) intervals.push_back({iv.lo, iv.hi});
    results.push_back({{"formula", print_formula(f)},
                       {"minusInf", s.minus_inf()},
                       {"ray", s.ray() ? json(*s.ray()) : json(nullptr)},
                       {"intervals", intervals},
                       {"text", s.describe()}});
    r.text << s.describe() << "\n";
  }
  r.doc["results"] = results;
}

struct KNfArgs {
  std::vector<std::string> formulas;
  std::vector<std::string> named;
};

void run_k_nf(const Common& c, const KNfArgs& a, Report& r) {
  const auto fs = read_formulas(a.formulas, language_of(c));
  json results = json::array();
  for (const auto& f : fs) {
    std::vector<Variable> named;
    if (a.named.empty()) {
      for (Variable v : free_variables(f)) named.push_back(v);
    } else {
      for (const auto& n : a.named) named.push_back(variable_of(n));
    }
    const CountingNormalForm nf = monadic_nf(f, named);
    const Formula rebuilt = rebuild_formula(nf);
    results.push_back({{"formula", print_formula(f)},
                       {"types", nf.types.size()},
                       {"threshold", nf.threshold},
                       {"normalForm", nf.describe()},
                       {"rebuilt", print_formula(rebuilt)}});
    r.text << nf.describe() << "\n";
  }
  r.doc["results"] = results;
}

struct KTruncateArgs {
  std::size_t n = 20;
  std::string out;
};

void run_k_truncate(const Common&, const KTruncateArgs& a, Report& r) {
  if (a.n == 0 || a.n >= kMaxWorlds) throw InputError("truncation size must be in 1..63");
  r.doc = model_to_json(truncate_k(a.n));
  if (!a.out.empty()) {
    std::ofstream file(a.out);
    if (!file) throw InputError("cannot write " + a.out);
    file << r.doc.dump(2) << "\n";
    r.text << "wrote " << a.out << "\n";
  } else {
    r.text << r.doc.dump(2) << "\n";
  }
}

struct KSweepArgs {
  std::size_t max_size = 7;
  std::size_t max_vars = 2;
  bool no_axioms = false;
};

void run_k_sweep(const Common& c, const KSweepArgs& a, Report& r) {
  CemSweepParams p;
  p.max_size = a.max_size;
  p.max_vars = a.max_vars;
  p.identity = language_of(c) == Language::LEq;
  p.axioms = !a.no_axioms;
  p.jobs = c.jobs;
  const CemSweepReport rep = cem_sweep(p);
  json failures = json::array();
  for (const auto& f : rep.failures) failures.push_back({{"formula", f.formula}, {"where", f.where}});
  r.doc = {{"poolSize", rep.pool_size},       {"cemChecked", rep.cem_checked},
           {"axiomChecked", rep.axiom_checked}, {"ruleChecked", rep.rule_checked},
           {"raySplits", rep.ray_splits},       {"failures", failures}};
  r.text << "pool " << rep.pool_size << ", CEM pairs " << rep.cem_checked << ", axiom instances "
         << rep.axiom_checked << ", rule checks " << rep.rule_checked << ", ray splits "
         << rep.ray_splits << "\n";
  const std::size_t shown = std::min<std::size_t>(rep.failures.size(), 20);
  for (std::size_t i = 0; i < shown; ++i)
    r.text << "failure: " << rep.failures[i].formula << ": " << rep.failures[i].where << "\n";
  r.text << rep.failures.size() << " failures\n";
  if (!rep.failures.empty()) r.code = 1;
}

struct KProbeArgs {
  std::size_t truncation = 0;
};

void run_k_probe(const Common&, const KProbeArgs& a, Report& r) {
  const ProbeReport p = a.truncation ? truncation_probe(a.truncation) : induced_selection_probe();
  r.doc = {{"model", a.truncation ? "K_" + std::to_string(a.truncation) : std::string("K")},
           {"fAll", p.f_all.describe()},
           {"fMinusOne", p.f_minus_one.describe()},
           {"uniformityViolated", p.uniformity_violated},
           {"wlaViolated", p.wla_violated}};
  r.text << "f(Z-, -inf) = " << p.f_all.describe() << "\n"
         << "f({-1}, -inf) = " << p.f_minus_one.describe() << "\n"
         << "Uniformity " << (p.uniformity_violated ? "violated" : "holds") << "\n"
         << "WLA " << (p.wla_violated ? "violated" : "holds") << "\n";
}

struct KOracleArgs {
  std::size_t count = 500;
  std::size_t max_size = 9;
  std::int64_t m = 6;
};

void run_k_oracle(const Common& c, const KOracleArgs& a, Report& r) {
  OracleParams p;
  p.count = a.count;
  p.max_size = a.max_size;
  p.m = a.m;
  p.seed = c.seed;
  p.identity = language_of(c) == Language::LEq;
  const OracleReport rep = oracle_agreement(p);
  r.doc = {{"formulas", rep.formulas},           {"checks", rep.checks},
           {"disagreements", rep.disagreements}, {"unstable", rep.unstable},
           {"diagnostics", rep.diagnostics},     {"examples", rep.examples}};
  r.text << rep.formulas << " formulas, " << rep.checks << " checks, " << rep.disagreements
         << " disagreements, " << rep.unstable << " unstable, " << rep.diagnostics
         << " diagnostics\n";
  for (const auto& e : rep.examples) r.text << "disagreement: " << e << "\n";
  if (rep.disagreements || rep.unstable || rep.diagnostics) r.code = 1;
}

// --- search -----------------------------------------------------------------------

struct BoundsArgs {
  std::size_t min_worlds = 1;
  std::size_t max_worlds = 3;
  std::size_t min_domain = 1;
  std::size_t max_domain = 2;
  std::string access = "reflexive";
  bool local_domains = false;
  std::vector<std::string> require;
};

void add_bounds(CLI::App* sub, BoundsArgs& b) {
  sub->add_option("--min-worlds", b.min_worlds)->capture_default_str();
  sub->add_option("--max-worlds", b.max_worlds)->capture_default_str();
  sub->add_option("--min-domain", b.min_domain)->capture_default_str();
  sub->add_option("--max-domain", b.max_domain)->capture_default_str();
  sub->add_option("--access", b.access, "reflexive (R(w) ∋ w) or all")
      ->check(CLI::IsMember({"reflexive", "all"}))
      ->capture_default_str();
  sub->add_flag("--local-domains", b.local_domains, "enumerate local domains d(w) too");
}

EnumerationParams enumeration_params(const BoundsArgs& b) {
  EnumerationParams p;
  p.min_worlds = b.min_worlds;
  p.max_worlds = b.max_worlds;
  p.min_domain = b.min_domain;
  p.max_domain = b.max_domain;
  p.access = b.access == "all" ? AccessPolicy::All : AccessPolicy::Reflexive;
  p.local_domains = b.local_domains;
  for (const auto& name : b.require) {
    const auto conds = expand_property(name);
    p.required.insert(p.required.end(), conds.begin(), conds.end());
  }
  return p;
}

struct FramesArgs {
  BoundsArgs bounds;
  bool list = false;
};

void run_frames(const Common&, const FramesArgs& a, Report& r) {
  json frames = json::array();
  const EnumerationStats stats = enumerate_frames(enumeration_params(a.bounds), [&](const Frame& f) {
    if (a.list) frames.push_back(model_to_json(Model{f, {}}));
    return true;
  });
  r.doc = {{"candidates", stats.candidates}, {"canonical", stats.yielded}};
  if (a.list) r.doc["frames"] = frames;
  r.text << stats.candidates << " candidate frames, " << stats.yielded << " up to isomorphism\n";
  if (a.list)
    for (const auto& f : frames) r.text << f.dump() << "\n";
}

void render_witness(const SearchOutcome& o, Report& r) {
  if (!o.witness) return;
  const auto& w = *o.witness;
  r.doc["witness"] = {{"model", model_to_json(w.model)},
                      {"world", w.model.frame.world_names[w.world]},
                      {"assignment", assignment_json(w.model.frame, w.assignment)}};
  r.doc["replayed"] = o.replayed;
  r.text << "model found at world " << w.model.frame.world_names[w.world]
         << (o.replayed ? " (replayed)" : " (replay failed)") << "\n"
         << model_to_json(w.model).dump() << "\n";
}

struct DsArgs {
  BoundsArgs bounds;
  std::string mode = "weak";
};

void run_ds(const Common&, const DsArgs& a, Report& r) {
  const DsMode mode = a.mode == "weak"           ? DsMode::WeaklyStalnakerian
                      : a.mode == "strengthened" ? DsMode::Strengthened
                                                 : DsMode::Control;
  EnumerationParams p = enumeration_params(a.bounds);
  p.required = ds_conditions(mode);
  const SearchOutcome o = ds_sweep(p);
  r.doc = {{"mode", a.mode},
           {"found", o.found},
           {"structures", o.structures},
           {"interpretations", o.interpretations}};
  r.text << o.structures << " pointed structures, " << o.interpretations << " interpretations\n";
  if (o.found)
    render_witness(o, r);
  else
    r.text << "no model found\n";
  // The weak and strengthened runs expect no model; the control run expects one.
  const bool expected = mode == DsMode::Control ? o.found && o.replayed : !o.found;
  r.code = expected ? 0 : 1;
}

struct CompactnessArgs {
  std::size_t n = 5;
};

void run_compactness(const Common&, const CompactnessArgs& a, Report& r) {
  const SearchOutcome o = compactness_witness(a.n);
  r.doc = {{"n", a.n}, {"found", o.found}, {"structures", o.structures}};
  if (o.found)
    render_witness(o, r);
  else
    r.text << "no model found\n";
  r.code = o.found && o.replayed ? 0 : 1;
}

struct CorrespondenceArgs {
  std::string model;
  BoundsArgs bounds;
  std::size_t max_bits = 24;
};

void run_correspondence(const Common&, const CorrespondenceArgs& a, Report& r) {
  FrameValidOptions options;
  options.max_bits = a.max_bits;
  if (!a.model.empty()) {
    const Model m = read_model(a.model);
    const CorrespondenceResult res = qc2_correspondence_check(m.frame, options);
    r.doc = {{"instanceValid", res.instance_valid},
             {"propertiesHold", res.properties_hold},
             {"agree", res.agree}};
    if (res.failed_instance) r.doc["failedInstance"] = *res.failed_instance;
    r.text << "instances valid: " << (res.instance_valid ? "yes" : "no")
           << "\nweakly Stalnakerian and globally constant: "
           << (res.properties_hold ? "yes" : "no") << "\nagree: " << (res.agree ? "yes" : "no")
           << "\n";
    if (res.failed_instance) r.text << "failed instance: " << *res.failed_instance << "\n";
    r.code = res.agree ? 0 : 1;
    return;
  }
  const CorrespondenceSweep s = correspondence_sweep(enumeration_params(a.bounds), options);
  r.doc = {{"frames", s.frames},
           {"agree", s.agree},
           {"propertiesHold", s.properties_hold},
           {"disagreements", s.disagreements}};
  r.text << s.frames << " frames, " << s.agree << " agree, " << s.properties_hold
         << " weakly Stalnakerian with constant domains\n";
  for (const auto& d : s.disagreements) r.text << "disagreement: " << d << "\n";
  r.code = s.agree == s.frames ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for quantified conditional logic", "condlog"};
  app.require_subcommand(1);
  Common common;
  std::function<void(Report&)> action;
  auto leaf = [&](CLI::App* parent, const char* name, const char* help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub, common);
    return sub;
  };

  ParseArgs parse_args;
  auto* parse = leaf(&app, "parse", "parse and pretty-print formulas");
  parse->add_option("formulas,--formula", parse_args.formulas, "formula or @file")->required();
  parse->callback([&] { action = [&](Report& r) { run_parse(common, parse_args, r); }; });

  EvalArgs eval_args;
  auto* ev = leaf(&app, "eval", "truth of formulas at a world of a finite model");
  ev->add_option("--model", eval_args.model)->required();
  ev->add_option("--world", eval_args.world)->required();
  ev->add_option("--formula", eval_args.formulas, "formula or @file")->required();
  ev->add_option("--assign", eval_args.assign, "x=a, repeatable or comma separated");
  ev->callback([&] { action = [&](Report& r) { run_eval(common, eval_args, r); }; });

  ModelValidArgs mv_args;
  auto* mv = leaf(&app, "model-valid", "truth at every world under every assignment");
  mv->add_option("--model", mv_args.model)->required();
  mv->add_option("--formula", mv_args.formulas, "formula or @file")->required();
  mv->callback([&] { action = [&](Report& r) { run_model_valid(common, mv_args, r); }; });

  FrameValidArgs fv_args;
  auto* fv = leaf(&app, "frame-valid", "truth under every interpretation on the model's frame");
  fv->add_option("--model", fv_args.model)->required();
  fv->add_option("--formula", fv_args.formulas, "formula or @file")->required();
  fv->add_option("--max-bits", fv_args.max_bits, "interpretation bits ceiling")
      ->capture_default_str();
  fv->callback([&] { action = [&](Report& r) { run_frame_valid(common, fv_args, r); }; });

  FramePropsArgs fp_args;
  auto* fp = leaf(&app, "frame-props", "frame conditions with witnesses");
  fp->add_option("--model", fp_args.model)->required();
  fp->add_option("--require", fp_args.require, "exit 1 unless these hold");
  fp->callback([&] { action = [&](Report& r) { run_frame_props(common, fp_args, r); }; });

  ConvertArgs cv_args;
  auto* cv = leaf(&app, "convert", "ordering <-> selection conversion");
  cv->add_option("--model", cv_args.model)->required();
  cv->add_option("--to", cv_args.to)->required()->check(CLI::IsMember({"selection", "ordering"}));
  cv->add_option("--out", cv_args.out, "write the converted model here");
  cv->callback([&] { action = [&](Report& r) { run_convert(common, cv_args, r); }; });

  ProveArgs pv_args;
  auto* pv = leaf(&app, "prove", "check a Hilbert-style proof script");
  pv->add_option("--proof", pv_args.proof)->required();
  pv->add_flag("--axiom11-reverse", pv_args.axiom11_reverse, "read axiom 11 right to left");
  pv->callback([&] { action = [&](Report& r) { run_prove(common, pv_args, r); }; });

  auto* kmodel = app.add_subcommand("kmodel", "the infinite model K");
  kmodel->require_subcommand(1);
  KEvalArgs ke_args;
  auto* ke = leaf(kmodel, "eval", "truth at a world of K");
  ke->add_option("--world", ke_args.world, "-inf or a negative integer")->capture_default_str();
  ke->add_option("--formula", ke_args.formulas, "formula or @file")->required();
  ke->add_option("--assign", ke_args.assign, "x=-3, repeatable or comma separated");
  ke->callback([&] { action = [&](Report& r) { run_k_eval(common, ke_args, r); }; });
  KEvalArgs kd_args;
  auto* kd = leaf(kmodel, "denote", "the set of worlds of K where a formula holds");
  kd->add_option("--formula", kd_args.formulas, "formula or @file")->required();
  kd->add_option("--assign", kd_args.assign, "x=-3, repeatable or comma separated");
  kd->callback([&] { action = [&](Report& r) { run_k_denote(common, kd_args, r); }; });
  KNfArgs kn_args;
  auto* kn = leaf(kmodel, "nf", "counting normal form of a conditional-free formula");
  kn->add_option("--formula", kn_args.formulas, "formula or @file")->required();
  kn->add_option("--named", kn_args.named, "named variables (default: free variables)");
  kn->callback([&] { action = [&](Report& r) { run_k_nf(common, kn_args, r); }; });
  KTruncateArgs kt_args;
  auto* kt = leaf(kmodel, "truncate", "the finite truncation K_n as a model document");
  kt->add_option("--n", kt_args.n)->capture_default_str();
  kt->add_option("--out", kt_args.out);
  kt->callback([&] { action = [&](Report& r) { run_k_truncate(common, kt_args, r); }; });
  KSweepArgs ks_args;
  auto* ks = leaf(kmodel, "cem-sweep", "CEM and axiom instances over the fragment pool");
  ks->add_option("--max-size", ks_args.max_size)->capture_default_str();
  ks->add_option("--max-vars", ks_args.max_vars)->capture_default_str();
  ks->add_flag("--no-axioms", ks_args.no_axioms, "check CEM only");
  ks->callback([&] { action = [&](Report& r) { run_k_sweep(common, ks_args, r); }; });
  KProbeArgs kp_args;
  auto* kp = leaf(kmodel, "probe", "minima under the order at -inf");
  kp->add_option("--truncation", kp_args.truncation, "probe K_n instead of K");
  kp->callback([&] { action = [&](Report& r) { run_k_probe(common, kp_args, r); }; });
  KOracleArgs ko_args;
  auto* ko = leaf(kmodel, "oracle", "compare K with its truncations on a random corpus");
  ko->add_option("--count", ko_args.count)->capture_default_str();
  ko->add_option("--max-size", ko_args.max_size)->capture_default_str();
  ko->add_option("--m", ko_args.m, "values and worlds range over -m..-1")->capture_default_str();
  ko->callback([&] { action = [&](Report& r) { run_k_oracle(common, ko_args, r); }; });

  auto* search = app.add_subcommand("search", "finite model search");
  search->require_subcommand(1);
  FramesArgs sf_args;
  auto* sf = leaf(search, "frames", "selection frames up to isomorphism");
  add_bounds(sf, sf_args.bounds);
  sf->add_option("--require", sf_args.bounds.require, "conditions or weaklyStalnakerian/Stalnakerian");
  sf->add_flag("--list", sf_args.list, "print every frame");
  sf->callback([&] { action = [&](Report& r) { run_frames(common, sf_args, r); }; });
  DsArgs sd_args;
  auto* sd = leaf(search, "ds", "a point satisfying DS");
  add_bounds(sd, sd_args.bounds);
  sd->add_option("--mode", sd_args.mode, "weak, strengthened or control")
      ->check(CLI::IsMember({"weak", "strengthened", "control"}))
      ->capture_default_str();
  sd->callback([&] { action = [&](Report& r) { run_ds(common, sd_args, r); }; });
  CompactnessArgs sc_args;
  auto* sc = leaf(search, "compactness", "a model of the first n members of the family");
  sc->add_option("--n", sc_args.n)->capture_default_str();
  sc->callback([&] { action = [&](Report& r) { run_compactness(common, sc_args, r); }; });

  CorrespondenceArgs co_args;
  co_args.bounds.max_worlds = 2;
  co_args.bounds.access = "all";
  co_args.bounds.local_domains = true;
  auto* co = leaf(&app, "correspondence", "QC2 instance validity against frame conditions");
  co->add_option("--model", co_args.model, "check one frame instead of sweeping");
  add_bounds(co, co_args.bounds);
  co->add_option("--max-bits", co_args.max_bits)->capture_default_str();
  co->callback([&] { action = [&](Report& r) { run_correspondence(common, co_args, r); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report report;
  try {
    if (!action) throw InputError("no command");
    action(report);
  } catch (const KStabilizationError& e) {
    err << "stabilization diagnostic: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (common.format == "json")
    out << report.doc.dump(2) << "\n";
  else
    out << report.text.str();
  return report.code;
}

}  // namespace condlog
