#include "condlog/logic.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "condlog/corpus.hpp"
#include "condlog/errors.hpp"
#include "condlog/parser.hpp"

namespace condlog {

namespace {

// --- pattern matching ------------------------------------------------------------

// Formula metavariables are the 0-ary atoms of a pattern (A, B, C); variable
// metavariables are its variables. Neither binding needs to be injective.
struct Bindings {
  std::map<std::uint32_t, Formula> formulas;
  std::map<std::uint32_t, Variable> vars;

  const Formula& A() const { return formulas.at(0); }
  const Formula& B() const { return formulas.at(1); }
  Variable var(char name) const {
    return vars.at(parse_variable_name(std::string(1, name))->index);
  }
};

bool bind_var(Variable pattern, Variable actual, Bindings& b) {
  auto [it, inserted] = b.vars.emplace(pattern.index, actual);
  return inserted || it->second == actual;
}

// y when f is E(y), or its L= expansion ~forall z ~(y = z) with z != y.
std::optional<Variable> existence_argument(const Formula& f) {
  if (f.kind() == Kind::Existence) return f.var();
  if (f.kind() != Kind::Not || f.sub().kind() != Kind::Forall) return std::nullopt;
  const Formula& q = f.sub();
  if (q.body().kind() != Kind::Not || q.body().sub().kind() != Kind::Equals) return std::nullopt;
  const auto eq = q.body().sub().vars();
  if (eq[1] != q.var() || eq[0] == q.var()) return std::nullopt;
  return eq[0];
}

bool match(const Formula& p, const Formula& f, Bindings& b) {
  switch (p.kind()) {
    case Kind::Bottom: return f.kind() == Kind::Bottom;
    case Kind::Atom: {
      if (p.predicate().arity == 0) {
        auto [it, inserted] = b.formulas.emplace(p.predicate().index, f);
        return inserted || it->second == f;
      }
      if (f.kind() != Kind::Atom || f.predicate() != p.predicate()) return false;
      for (std::size_t i = 0; i < p.vars().size(); ++i)
        if (!bind_var(p.vars()[i], f.vars()[i], b)) return false;
      return true;
    }
    case Kind::Equals:
      return f.kind() == Kind::Equals && bind_var(p.vars()[0], f.vars()[0], b) &&
             bind_var(p.vars()[1], f.vars()[1], b);
    case Kind::Existence: {
      auto y = existence_argument(f);
      return y && bind_var(p.var(), *y, b);
    }
    case Kind::Not: return f.kind() == Kind::Not && match(p.sub(), f.sub(), b);
    case Kind::Implies:
    case Kind::Cond:
      return f.kind() == p.kind() && match(p.left(), f.left(), b) && match(p.right(), f.right(), b);
    case Kind::Forall:
      return f.kind() == Kind::Forall && bind_var(p.var(), f.var(), b) &&
             match(p.body(), f.body(), b);
  }
  return false;
}

Formula instantiate(const Formula& p, const Bindings& b, Language lang) {
  auto v = [&](Variable x) { return b.vars.at(x.index); };
  switch (p.kind()) {
    case Kind::Bottom: return p;
    case Kind::Atom: {
      if (p.predicate().arity == 0) return b.formulas.at(p.predicate().index);
      std::vector<Variable> args;
      for (Variable x : p.vars()) args.push_back(v(x));
      return Formula::atom(p.predicate(), args);
    }
    case Kind::Equals: return Formula::equals(v(p.vars()[0]), v(p.vars()[1]));
    case Kind::Existence: {
      const Variable y = v(p.var());
      if (lang != Language::LEq) return Formula::existence(y);
      const Variable z = fresh_variable({y});
      return exists(z, Formula::equals(y, z));
    }
    case Kind::Not: return Formula::negation(instantiate(p.sub(), b, lang));
    case Kind::Implies:
      return Formula::implies(instantiate(p.left(), b, lang), instantiate(p.right(), b, lang));
    case Kind::Cond:
      return Formula::cond(instantiate(p.left(), b, lang), instantiate(p.right(), b, lang));
    case Kind::Forall: return Formula::forall(v(p.var()), instantiate(p.body(), b, lang));
  }
  return p;
}

// --- tautologies ---------------------------------------------------------------------

void collect_prop_atoms(const Formula& f, std::map<Formula, std::size_t>& atoms) {
  switch (f.kind()) {
    case Kind::Bottom: return;
    case Kind::Not: collect_prop_atoms(f.sub(), atoms); return;
    case Kind::Implies:
      collect_prop_atoms(f.left(), atoms);
      collect_prop_atoms(f.right(), atoms);
      return;
    default: atoms.emplace(f, atoms.size()); return;
  }
}

bool prop_eval(const Formula& f, const std::map<Formula, std::size_t>& atoms, std::uint64_t row) {
  switch (f.kind()) {
    case Kind::Bottom: return false;
    case Kind::Not: return !prop_eval(f.sub(), atoms, row);
    case Kind::Implies: return !prop_eval(f.left(), atoms, row) || prop_eval(f.right(), atoms, row);
    default: return (row >> atoms.at(f)) & 1u;
  }
}

// --- axiom 11 --------------------------------------------------------------------

// b arises from a by replacing zero or more free occurrences of `from` by
// `to`, none of them inside either argument of a conditional.
bool replaces_outside_conditionals(const Formula& a, const Formula& b, Variable from, Variable to,
                                   std::vector<Variable>& bound, bool in_cond) {
  if (a.kind() != b.kind()) return false;
  auto is_bound = [&](Variable v) { return std::find(bound.begin(), bound.end(), v) != bound.end(); };
  switch (a.kind()) {
    case Kind::Bottom: return true;
    case Kind::Atom:
      if (a.predicate() != b.predicate()) return false;
      [[fallthrough]];
    case Kind::Equals:
    case Kind::Existence:
      for (std::size_t i = 0; i < a.vars().size(); ++i) {
        if (a.vars()[i] == b.vars()[i]) continue;
        const bool ok = a.vars()[i] == from && b.vars()[i] == to && !is_bound(from) &&
                        !is_bound(to) && !in_cond;
        if (!ok) return false;
      }
      return true;
    case Kind::Not: return replaces_outside_conditionals(a.sub(), b.sub(), from, to, bound, in_cond);
    case Kind::Implies:
    case Kind::Cond: {
      const bool inner = in_cond || a.kind() == Kind::Cond;
      return replaces_outside_conditionals(a.left(), b.left(), from, to, bound, inner) &&
             replaces_outside_conditionals(a.right(), b.right(), from, to, bound, inner);
    }
    case Kind::Forall: {
      if (a.var() != b.var()) return false;
      bound.push_back(a.var());
      const bool r = replaces_outside_conditionals(a.body(), b.body(), from, to, bound, in_cond);
      bound.pop_back();
      return r;
    }
  }
  return false;
}

// --- schema table ------------------------------------------------------------------

using SideCondition = std::function<bool(const Bindings&, const AxiomOptions&)>;

struct Schema {
  const char* id;
  const char* pattern;  // nullptr for the tautology schemas
  SideCondition side;
};

bool substitution_of(const Formula& body, Variable x, Variable y, const Formula& result) {
  return alpha_equivalent(substitute(body, x, y), result);
}

const std::vector<Schema>& schemas() {
  static const std::vector<Schema> table = {
      {"1", nullptr, {}},
      {"2", "box (A -> B) -> (box A -> box B)", {}},
      {"3", "box (A -> B) -> (A > B)", {}},
      {"4", "dia A -> ((A > B) -> ~(A > ~B))", {}},
      {"5", "(A > (B | C)) -> ((A > B) | (A > C))", {}},
      {"6", "(A > B) -> (A -> B)", {}},
      {"7", "((A > B) & (B > A)) -> ((A > C) -> (B > C))", {}},
      {"8", "(forall x. A) -> ((exists u. box u = y) -> B)",
       [](const Bindings& b, const AxiomOptions&) {
         return b.var('u') != b.var('y') && substitution_of(b.A(), b.var('x'), b.var('y'), b.B());
       }},
      {"9", "(forall x. ((exists y. box y = x) -> A)) -> forall x. A",
       [](const Bindings& b, const AxiomOptions&) { return b.var('x') != b.var('y'); }},
      {"10", "x = x", {}},
      {"11", "x = y -> (A -> B)",
       [](const Bindings& b, const AxiomOptions& o) {
         Variable s = b.var('x');
         Variable t = b.var('y');
         if (o.axiom11_reverse) std::swap(s, t);
         std::vector<Variable> bound;
         return replaces_outside_conditionals(b.A(), b.B(), s, t, bound, false);
       }},
      {"12", "dia x = y -> box x = y", {}},
      {"18", nullptr, {}},
      {"19", "A > A", {}},
      {"20", "((A > B) & (B > A) & (A > C)) -> (B > C)", {}},
      {"21", "(A > B) -> (A -> B)", {}},
      {"22", "(A > B) | (A > ~B)", {}},
      {"23", "(forall x. A) -> B",
       [](const Bindings& b, const AxiomOptions&) {
         const Variable x = b.var('x');
         std::set<Variable> candidates = free_variables(b.B());
         candidates.insert(x);
         return std::any_of(candidates.begin(), candidates.end(),
                            [&](Variable y) { return substitution_of(b.A(), x, y, b.B()); });
       }},
      {"23v", "((forall x. A) & E(y)) -> B",
       [](const Bindings& b, const AxiomOptions&) {
         return substitution_of(b.A(), b.var('x'), b.var('y'), b.B());
       }},
      {"24", "(forall x. (A > B)) -> (A > forall x. B)",
       [](const Bindings& b, const AxiomOptions&) { return !occurs_free(b.var('x'), b.A()); }},
      {"28", "x = x", {}},
      {"29", "x = y -> (A <-> B)",
       [](const Bindings& b, const AxiomOptions&) {
         return substitution_of(b.A(), b.var('x'), b.var('y'), b.B());
       }},
      {"30", "~x = y -> box ~x = y", {}},
      {"31c", "E(x) -> box E(x)", {}},
      {"32c", "~E(x) -> box ~E(x)", {}},
  };
  return table;
}

const Schema& find_schema(std::string_view id) {
  for (const Schema& s : schemas())
    if (id == s.id) return s;
  throw InputError("unknown axiom schema '" + std::string(id) + "'");
}

const Formula& schema_pattern(const Schema& s) {
  static std::map<std::string, Formula> cache = [] {
    std::map<std::string, Formula> out;
    for (const Schema& sc : schemas())
      if (sc.pattern) out.emplace(sc.id, parse_pattern(sc.pattern));
    return out;
  }();
  return cache.at(s.id);
}

// --- rule helpers ------------------------------------------------------------------

// Every way of reading f as a1 > (a2 > ... > (an > body)), n >= 0.
std::vector<std::pair<std::vector<Formula>, Formula>> spine_splits(const Formula& f) {
  std::vector<std::pair<std::vector<Formula>, Formula>> out;
  std::vector<Formula> ants;
  Formula cur = f;
  out.emplace_back(ants, cur);
  while (cur.kind() == Kind::Cond) {
    ants.push_back(cur.left());
    cur = cur.right();
    out.emplace_back(ants, cur);
  }
  return out;
}

// The body left after peeling the given antecedents off f.
std::optional<Formula> strip_antecedents(const Formula& f, const std::vector<Formula>& ants) {
  Formula cur = f;
  for (const Formula& a : ants) {
    if (cur.kind() != Kind::Cond || cur.left() != a) return std::nullopt;
    cur = cur.right();
  }
  return cur;
}

bool free_in_any(Variable v, const std::vector<Formula>& fs) {
  return std::any_of(fs.begin(), fs.end(), [&](const Formula& f) { return occurs_free(v, f); });
}

// Every reading of f as a left-associated conjunction c1 & ... & cn, n >= 1.
std::vector<std::vector<Formula>> conjunction_chains(const Formula& f) {
  std::vector<std::vector<Formula>> out{{f}};
  if (f.kind() == Kind::Not && f.sub().kind() == Kind::Implies &&
      f.sub().right().kind() == Kind::Not) {
    for (auto chain : conjunction_chains(f.sub().left())) {
      chain.push_back(f.sub().right().sub());
      out.push_back(std::move(chain));
    }
  }
  return out;
}

Formula conj_chain(const std::vector<Formula>& parts) {
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = conj(out, parts[i]);
  return out;
}

bool rule_mp(std::span<const Formula> p, const Formula& c) {
  if (p.size() != 2) return false;
  auto one = [&](const Formula& a, const Formula& imp) {
    return imp.kind() == Kind::Implies && imp.left() == a && imp.right() == c;
  };
  return one(p[0], p[1]) || one(p[1], p[0]);
}

bool rule_14(std::span<const Formula> p, const Formula& c) {
  return p.size() == 1 && c.kind() == Kind::Cond && c.right() == p[0];
}

bool rule_15(std::span<const Formula> p, const Formula& c) {
  if (p.size() != 1 || c.kind() != Kind::Implies || c.right().kind() != Kind::Forall) return false;
  const Formula& q = c.right();
  return p[0] == Formula::implies(c.left(), q.body()) && !occurs_free(q.var(), c.left());
}

bool rule_16(std::span<const Formula> p, const Formula& c) {
  if (p.size() != 1) return false;
  for (const auto& [ants, body] : spine_splits(c)) {
    if (body.kind() != Kind::Forall) continue;
    if (free_in_any(body.var(), ants)) continue;
    if (p[0] == cond_chain(ants, body.body())) return true;
  }
  return false;
}

bool rule_17(std::span<const Formula> p, const Formula& c) {
  if (p.size() != 1) return false;
  for (const auto& [ants, body] : spine_splits(c)) {
    if (body.kind() != Kind::Not) continue;
    const Formula& phi = body.sub();
    auto inner = strip_antecedents(p[0], ants);
    if (!inner || inner->kind() != Kind::Cond || inner->left() != phi) continue;
    const Formula& neq = inner->right();
    if (neq.kind() != Kind::Not || neq.sub().kind() != Kind::Equals) continue;
    const Variable x = neq.sub().vars()[1];
    if (!free_in_any(x, ants) && !occurs_free(x, phi)) return true;
  }
  return false;
}

bool rule_26(std::span<const Formula> p, const Formula& c) {
  if (p.size() != 1 || c.kind() != Kind::Implies || c.right().kind() != Kind::Cond) return false;
  const Formula& phi = c.right().left();
  const Formula& chi = c.right().right();
  for (const auto& chain : conjunction_chains(c.left())) {
    std::vector<Formula> psis;
    bool ok = true;
    for (const Formula& part : chain) {
      if (part.kind() != Kind::Cond || part.left() != phi) {
        ok = false;
        break;
      }
      psis.push_back(part.right());
    }
    if (ok && p[0] == Formula::implies(conj_chain(psis), chi)) return true;
  }
  return false;
}

bool rule_27(std::span<const Formula> p, const Formula& c) {
  if (p.size() != 1 || c.kind() != Kind::Implies || c.right().kind() != Kind::Forall) return false;
  if (p[0].kind() != Kind::Implies || p[0].left() != c.left()) return false;
  const Formula& psi = c.left();
  const Formula& all = c.right();
  const Formula& instance = p[0].right();
  std::set<Variable> candidates = free_variables(instance);
  candidates.insert(all.var());
  std::set<Variable> used = all_variables(p[0]);
  for (Variable v : all_variables(c)) used.insert(v);
  candidates.insert(fresh_variable(used));
  for (Variable y : candidates) {
    if (occurs_free(y, psi) || occurs_free(y, all)) continue;
    if (substitution_of(all.body(), all.var(), y, instance)) return true;
  }
  return false;
}

bool rule_27v(std::span<const Formula> p, const Formula& c) {
  if (p.size() != 1 || c.kind() != Kind::Implies || p[0].kind() != Kind::Implies) return false;
  if (p[0].left() != c.left()) return false;
  const Formula& psi = c.left();
  for (const auto& [ants, body] : spine_splits(c.right())) {
    if (body.kind() != Kind::Forall) continue;
    auto inner = strip_antecedents(p[0].right(), ants);
    if (!inner || inner->kind() != Kind::Implies) continue;
    auto y = existence_argument(inner->left());
    if (!y) continue;
    if (free_in_any(*y, ants) || occurs_free(*y, psi) || occurs_free(*y, body)) continue;
    if (substitution_of(body.body(), body.var(), *y, inner->right())) return true;
  }
  return false;
}

using RuleCheck = bool (*)(std::span<const Formula>, const Formula&);

const std::map<std::string, RuleCheck, std::less<>>& rules() {
  static const std::map<std::string, RuleCheck, std::less<>> table = {
      {"13", rule_mp}, {"14", rule_14}, {"15", rule_15}, {"16", rule_16},  {"17", rule_17},
      {"25", rule_mp}, {"26", rule_26}, {"27", rule_27}, {"27v", rule_27v},
  };
  return table;
}

std::vector<std::string> ids(std::initializer_list<const char*> list) {
  return {list.begin(), list.end()};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

// --- public API ----------------------------------------------------------------------

std::string_view logic_name(Logic logic) {
  switch (logic) {
    case Logic::QST: return "QST";
    case Logic::QC2: return "QC2";
    case Logic::QC2Eq: return "QC2=";
    case Logic::QC2vE: return "QC2vE";
    case Logic::QC2vEq: return "QC2v=";
    case Logic::QC2cE: return "QC2cE";
    case Logic::QC2cEq: return "QC2c=";
  }
  return "?";
}

std::optional<Logic> parse_logic(std::string_view name) {
  for (Logic l : {Logic::QST, Logic::QC2, Logic::QC2Eq, Logic::QC2vE, Logic::QC2vEq,
                  Logic::QC2cE, Logic::QC2cEq})
    if (logic_name(l) == name) return l;
  return std::nullopt;
}

Language logic_language(Logic logic) {
  switch (logic) {
    case Logic::QC2: return Language::L;
    case Logic::QC2vE:
    case Logic::QC2cE: return Language::LE;
    default: return Language::LEq;
  }
}

const std::vector<std::string>& logic_axioms(Logic logic) {
  static const auto qst = ids({"1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12"});
  static const auto qc2 = ids({"18", "19", "20", "21", "22", "23", "24"});
  static const auto identity = ids({"28", "29", "30"});
  static const auto qc2_eq = concat(qc2, identity);
  static const auto qc2_ve = ids({"18", "19", "20", "21", "22", "23v", "24"});
  static const auto qc2_ce = concat(qc2_ve, ids({"31c", "32c"}));
  static const auto qc2_veq = concat(qc2_ve, identity);
  static const auto qc2_ceq = concat(qc2_ce, identity);
  switch (logic) {
    case Logic::QST: return qst;
    case Logic::QC2: return qc2;
    case Logic::QC2Eq: return qc2_eq;
    case Logic::QC2vE: return qc2_ve;
    case Logic::QC2vEq: return qc2_veq;
    case Logic::QC2cE: return qc2_ce;
    case Logic::QC2cEq: return qc2_ceq;
  }
  return qc2;
}

const std::vector<std::string>& logic_rules(Logic logic) {
  static const auto qst = ids({"13", "14", "15", "16", "17"});
  static const auto qc2 = ids({"25", "26", "27"});
  static const auto variable = ids({"25", "26", "27v"});
  switch (logic) {
    case Logic::QST: return qst;
    case Logic::QC2:
    case Logic::QC2Eq: return qc2;
    default: return variable;
  }
}

const std::vector<std::string>& all_schema_ids() {
  static const std::vector<std::string> out = [] {
    std::vector<std::string> v;
    for (const Schema& s : schemas()) v.emplace_back(s.id);
    return v;
  }();
  return out;
}

const std::vector<std::string>& all_rule_ids() {
  static const auto out = ids({"13", "14", "15", "16", "17", "25", "26", "27", "27v"});
  return out;
}

bool is_tautology(const Formula& f) {
  std::map<Formula, std::size_t> atoms;
  collect_prop_atoms(f, atoms);
  if (atoms.size() > 24)
    throw ResourceLimit("tautology check over more than 24 propositional atoms");
  const std::uint64_t rows = std::uint64_t{1} << atoms.size();
  for (std::uint64_t r = 0; r < rows; ++r)
    if (!prop_eval(f, atoms, r)) return false;
  return true;
}

bool is_axiom_instance(std::string_view schema, const Formula& f, const AxiomOptions& options) {
  const Schema& s = find_schema(schema);
  if (!s.pattern) return is_tautology(f);
  Bindings b;
  if (!match(schema_pattern(s), f, b)) return false;
  return !s.side || s.side(b, options);
}

bool check_rule(std::string_view rule, std::span<const Formula> premises,
                const Formula& conclusion) {
  auto it = rules().find(rule);
  if (it == rules().end()) throw InputError("unknown rule '" + std::string(rule) + "'");
  return it->second(premises, conclusion);
}

Verdict verify_proof(const ProofScript& proof, const AxiomOptions& options) {
  const Language lang = logic_language(proof.logic);
  const auto& axioms = logic_axioms(proof.logic);
  const auto& rule_ids = logic_rules(proof.logic);
  const std::string logic(logic_name(proof.logic));
  for (std::size_t i = 0; i < proof.lines.size(); ++i) {
    const std::size_t number = i + 1;
    const ProofLine& line = proof.lines[i];
    auto reject = [&](std::string reason) { return Verdict{false, number, std::move(reason)}; };
    if (!fits_language(line.formula, lang))
      return reject("formula is outside the language of " + logic);
    const std::string& id = line.just.id;
    if (line.just.axiom) {
      if (std::find(axioms.begin(), axioms.end(), id) == axioms.end())
        return reject("axiom " + id + " is not part of " + logic);
      if (!is_axiom_instance(id, line.formula, options))
        return reject("not an instance of axiom " + id);
      continue;
    }
    if (std::find(rule_ids.begin(), rule_ids.end(), id) == rule_ids.end())
      return reject("rule " + id + " is not part of " + logic);
    std::vector<Formula> premises;
    for (std::size_t k : line.just.premises) {
      if (k == 0 || k >= number) return reject("premise " + std::to_string(k) + " is not an earlier line");
      premises.push_back(proof.lines[k - 1].formula);
    }
    if (!check_rule(id, premises, line.formula))
      return reject("does not follow by rule " + id + " from the cited lines");
  }
  return {};
}

// --- random instances -------------------------------------------------------------

Formula random_axiom_instance(std::string_view schema, std::mt19937_64& rng, Language lang) {
  const Schema& s = find_schema(schema);
  RandomFormulaParams params;
  params.max_size = 4;
  params.num_vars = 3;
  params.predicates = {predicate_f(), Predicate{6, 1}, Predicate{0, 0}};
  params.equality = lang == Language::LEq;
  params.existence = lang == Language::LE;
  auto formula = [&] { return random_formula(rng, params); };
  auto var = [&] {
    return Variable{static_cast<std::uint32_t>(std::uniform_int_distribution<int>(0, 3)(rng))};
  };
  const std::string id(schema);

  if (!s.pattern) {
    static const char* templates[] = {
        "A -> A", "A -> (B -> A)", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))",
        "(~A -> ~B) -> (B -> A)", "A | ~A", "~~A -> A", "(A & B) -> (B & A)"};
    const auto t = std::uniform_int_distribution<std::size_t>(0, std::size(templates) - 1)(rng);
    Bindings b;
    for (std::uint32_t k = 0; k < 3; ++k) b.formulas.emplace(k, formula());
    return instantiate(parse_pattern(templates[t]), b, lang);
  }

  Bindings b;
  for (std::uint32_t k = 0; k < 3; ++k) b.formulas.emplace(k, formula());
  for (std::uint32_t k = 0; k < 6; ++k) b.vars.emplace(k, var());
  const Variable x = b.vars.at(0);
  Variable& y = b.vars.at(1);
  Variable& u = b.vars.at(3);

  if (id == "8") {
    while (u == y) u = var();
    b.formulas[1] = substitute(b.A(), x, y);
  } else if (id == "9") {
    while (y == x) y = var();
  } else if (id == "23" || id == "23v" || id == "29") {
    b.formulas[1] = substitute(b.A(), x, y);
  } else if (id == "24") {
    if (occurs_free(x, b.A())) {
      Variable other = var();
      while (other == x) other = var();
      b.formulas[0] = substitute(b.A(), x, other);
    }
  } else if (id == "11") {
    // Replace a random selection of the eligible occurrences.
    const Variable from = x;
    const Variable to = y;
    std::function<Formula(const Formula&, std::vector<Variable>&, bool)> mutate =
        [&](const Formula& f, std::vector<Variable>& bound, bool in_cond) -> Formula {
      auto is_bound = [&](Variable v) {
        return std::find(bound.begin(), bound.end(), v) != bound.end();
      };
      auto swap_args = [&](std::span<const Variable> args) {
        std::vector<Variable> out(args.begin(), args.end());
        for (Variable& v : out)
          if (v == from && !in_cond && !is_bound(from) && !is_bound(to) && (rng() & 1u)) v = to;
        return out;
      };
      switch (f.kind()) {
        case Kind::Atom: return Formula::atom(f.predicate(), swap_args(f.vars()));
        case Kind::Equals: {
          auto v = swap_args(f.vars());
          return Formula::equals(v[0], v[1]);
        }
        case Kind::Existence: return Formula::existence(swap_args(f.vars())[0]);
        case Kind::Not: return Formula::negation(mutate(f.sub(), bound, in_cond));
        case Kind::Implies: {
          Formula l = mutate(f.left(), bound, in_cond);
          return Formula::implies(l, mutate(f.right(), bound, in_cond));
        }
        case Kind::Cond: {
          Formula l = mutate(f.left(), bound, true);
          return Formula::cond(l, mutate(f.right(), bound, true));
        }
        case Kind::Forall: {
          bound.push_back(f.var());
          Formula body = mutate(f.body(), bound, in_cond);
          bound.pop_back();
          return Formula::forall(f.var(), body);
        }
        default: return f;
      }
    };
    std::vector<Variable> bound;
    b.formulas[1] = mutate(b.A(), bound, false);
  }
  return instantiate(schema_pattern(s), b, lang);
}

}  // namespace condlog
