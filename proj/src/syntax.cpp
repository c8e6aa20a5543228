#include "condlog/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <map>
#include <stdexcept>

namespace condlog {

namespace {

constexpr std::string_view kVariableLetters = "xyzuvw";

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t node_hash(const Kind kind, const Predicate& pred,
                      const std::vector<Variable>& vars, const Formula* lhs,
                      const Formula* rhs) {
  std::size_t h = static_cast<std::size_t>(kind) * 0x100000001b3ULL;
  h = mix(h, pred.index);
  h = mix(h, pred.arity);
  for (Variable v : vars) h = mix(h, v.index + 17);
  if (lhs) h = mix(h, lhs->hash());
  if (rhs) h = mix(h, rhs->hash());
  return h;
}

}  // namespace

std::string_view language_name(Language lang) {
  switch (lang) {
    case Language::L: return "L";
    case Language::LE: return "LE";
    case Language::LEq: return "L=";
  }
  return "?";
}

std::optional<Language> parse_language(std::string_view text) {
  if (text == "L") return Language::L;
  if (text == "LE" || text == "L_E") return Language::LE;
  if (text == "L=" || text == "L_=" || text == "LEq") return Language::LEq;
  return std::nullopt;
}

// --- Formula ---------------------------------------------------------------

Formula::Formula() {
  static const std::shared_ptr<const Node> bottom_node = [] {
    Node n;
    n.kind = Kind::Bottom;
    n.hash = node_hash(Kind::Bottom, {}, {}, nullptr, nullptr);
    return std::make_shared<const Node>(std::move(n));
  }();
  node_ = bottom_node;
}

Formula Formula::make(Node node) {
  const bool unary = node.kind == Kind::Not || node.kind == Kind::Forall;
  const bool binary = node.kind == Kind::Implies || node.kind == Kind::Cond;
  node.hash = node_hash(node.kind, node.pred, node.vars,
                        (unary || binary) ? &node.lhs : nullptr,
                        binary ? &node.rhs : nullptr);
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::bottom() { return Formula(); }

Formula Formula::atom(Predicate pred, std::vector<Variable> args) {
  if (args.size() != pred.arity)
    throw std::invalid_argument("atom argument count differs from arity of " +
                                predicate_name(pred));
  Node n;
  n.kind = Kind::Atom;
  n.pred = pred;
  n.vars = std::move(args);
  return make(std::move(n));
}

Formula Formula::equals(Variable lhs, Variable rhs) {
  Node n;
  n.kind = Kind::Equals;
  n.vars = {lhs, rhs};
  return make(std::move(n));
}

Formula Formula::existence(Variable var) {
  Node n;
  n.kind = Kind::Existence;
  n.vars = {var};
  return make(std::move(n));
}

Formula Formula::negation(Formula sub) {
  Node n;
  n.kind = Kind::Not;
  n.lhs = std::move(sub);
  return make(std::move(n));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  Node n;
  n.kind = Kind::Implies;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return make(std::move(n));
}

Formula Formula::cond(Formula lhs, Formula rhs) {
  Node n;
  n.kind = Kind::Cond;
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return make(std::move(n));
}

Formula Formula::forall(Variable var, Formula body) {
  Node n;
  n.kind = Kind::Forall;
  n.vars = {var};
  n.lhs = std::move(body);
  return make(std::move(n));
}

Kind Formula::kind() const { return node_->kind; }
const Predicate& Formula::predicate() const { return node_->pred; }
std::span<const Variable> Formula::vars() const { return node_->vars; }
const Formula& Formula::left() const { return node_->lhs; }
const Formula& Formula::right() const { return node_->rhs; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Bottom: return true;
    case Kind::Atom:
      return a.predicate() == b.predicate() && a.node_->vars == b.node_->vars;
    case Kind::Equals:
    case Kind::Existence: return a.node_->vars == b.node_->vars;
    case Kind::Not: return a.sub() == b.sub();
    case Kind::Forall: return a.var() == b.var() && a.body() == b.body();
    case Kind::Implies:
    case Kind::Cond: return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Kind::Bottom: return std::strong_ordering::equal;
    case Kind::Atom:
      if (auto c = a.predicate() <=> b.predicate(); c != 0) return c;
      return a.node_->vars <=> b.node_->vars;
    case Kind::Equals:
    case Kind::Existence: return a.node_->vars <=> b.node_->vars;
    case Kind::Not: return a.sub() <=> b.sub();
    case Kind::Forall:
      if (auto c = a.var() <=> b.var(); c != 0) return c;
      return a.body() <=> b.body();
    case Kind::Implies:
    case Kind::Cond:
      if (auto c = a.left() <=> b.left(); c != 0) return c;
      return a.right() <=> b.right();
  }
  return std::strong_ordering::equal;
}

// --- derived connectives -----------------------------------------------------

Formula top() { return Formula::negation(Formula::bottom()); }

Formula conj(Formula a, Formula b) {
  return Formula::negation(
      Formula::implies(std::move(a), Formula::negation(std::move(b))));
}

Formula disj(Formula a, Formula b) {
  return Formula::implies(Formula::negation(std::move(a)), std::move(b));
}

Formula iff(Formula a, Formula b) {
  return conj(Formula::implies(a, b), Formula::implies(b, a));
}

Formula exists(Variable var, Formula body) {
  return Formula::negation(
      Formula::forall(var, Formula::negation(std::move(body))));
}

Formula box(Formula a) {
  return Formula::cond(Formula::negation(std::move(a)), Formula::bottom());
}

Formula dia(Formula a) {
  return Formula::negation(Formula::cond(std::move(a), Formula::bottom()));
}

Formula not_equals(Variable lhs, Variable rhs) {
  return Formula::negation(Formula::equals(lhs, rhs));
}

Formula cond_chain(std::span<const Formula> antecedents, Formula body) {
  Formula out = std::move(body);
  for (auto it = antecedents.rbegin(); it != antecedents.rend(); ++it)
    out = Formula::cond(*it, std::move(out));
  return out;
}

// --- names -------------------------------------------------------------------

std::string variable_name(Variable v) {
  std::string out(1, kVariableLetters[v.index % kVariableLetters.size()]);
  if (auto n = v.index / kVariableLetters.size(); n != 0)
    out += std::to_string(n);
  return out;
}

std::string predicate_name(Predicate p) {
  std::string out(1, static_cast<char>('A' + p.index % 26));
  if (auto n = p.index / 26; n != 0) out += std::to_string(n);
  return out;
}

namespace {

std::optional<std::uint32_t> parse_suffix(std::string_view digits) {
  if (digits.empty()) return 0u;
  std::uint32_t n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  if (n > 10'000'000u) return std::nullopt;
  return n;
}

}  // namespace

std::optional<Variable> parse_variable_name(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto pos = kVariableLetters.find(text[0]);
  if (pos == std::string_view::npos) return std::nullopt;
  auto n = parse_suffix(text.substr(1));
  if (!n) return std::nullopt;
  return Variable{static_cast<std::uint32_t>(*n * kVariableLetters.size() + pos)};
}

std::optional<std::uint32_t> parse_predicate_index(std::string_view text) {
  if (text.empty() || text[0] < 'A' || text[0] > 'Z') return std::nullopt;
  auto n = parse_suffix(text.substr(1));
  if (!n) return std::nullopt;
  return *n * 26 + static_cast<std::uint32_t>(text[0] - 'A');
}

Predicate predicate_f() { return Predicate{5, 1}; }

// --- variables -----------------------------------------------------------------

namespace {

void collect_free(const Formula& f, std::vector<Variable>& bound,
                  std::set<Variable>& out) {
  auto add = [&](Variable v) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
  };
  switch (f.kind()) {
    case Kind::Bottom: return;
    case Kind::Atom:
    case Kind::Equals:
    case Kind::Existence:
      for (Variable v : f.vars()) add(v);
      return;
    case Kind::Not: collect_free(f.sub(), bound, out); return;
    case Kind::Implies:
    case Kind::Cond:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case Kind::Forall:
      bound.push_back(f.var());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

void collect_all(const Formula& f, std::set<Variable>& out) {
  for (Variable v : f.vars()) out.insert(v);
  switch (f.kind()) {
    case Kind::Not:
    case Kind::Forall: collect_all(f.sub(), out); break;
    case Kind::Implies:
    case Kind::Cond:
      collect_all(f.left(), out);
      collect_all(f.right(), out);
      break;
    default: break;
  }
}

}  // namespace

std::set<Variable> free_variables(const Formula& f) {
  std::set<Variable> out;
  std::vector<Variable> bound;
  collect_free(f, bound, out);
  return out;
}

std::set<Variable> all_variables(const Formula& f) {
  std::set<Variable> out;
  collect_all(f, out);
  return out;
}

std::set<Predicate> predicates_of(const Formula& f) {
  std::set<Predicate> out;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    switch (g.kind()) {
      case Kind::Atom: out.insert(g.predicate()); break;
      case Kind::Not:
      case Kind::Forall: self(self, g.sub()); break;
      case Kind::Implies:
      case Kind::Cond:
        self(self, g.left());
        self(self, g.right());
        break;
      default: break;
    }
  };
  walk(walk, f);
  return out;
}

bool occurs_free(Variable v, const Formula& f) {
  switch (f.kind()) {
    case Kind::Bottom: return false;
    case Kind::Atom:
    case Kind::Equals:
    case Kind::Existence:
      return std::find(f.vars().begin(), f.vars().end(), v) != f.vars().end();
    case Kind::Not: return occurs_free(v, f.sub());
    case Kind::Implies:
    case Kind::Cond: return occurs_free(v, f.left()) || occurs_free(v, f.right());
    case Kind::Forall: return f.var() != v && occurs_free(v, f.body());
  }
  return false;
}

Variable fresh_variable(const std::set<Variable>& used) {
  std::uint32_t i = 0;
  for (Variable v : used) {
    if (v.index != i) break;
    ++i;
  }
  return Variable{i};
}

// --- substitution --------------------------------------------------------------

namespace {

class Substituter {
 public:
  explicit Substituter(std::set<Variable> used) : used_(std::move(used)) {}

  Formula apply(const Formula& f, const std::map<Variable, Variable>& map) {
    if (map.empty()) return f;
    switch (f.kind()) {
      case Kind::Bottom: return f;
      case Kind::Atom: return Formula::atom(f.predicate(), rename(f.vars(), map));
      case Kind::Equals: {
        auto v = rename(f.vars(), map);
        return Formula::equals(v[0], v[1]);
      }
      case Kind::Existence: return Formula::existence(rename(f.vars(), map)[0]);
      case Kind::Not: return Formula::negation(apply(f.sub(), map));
      case Kind::Implies:
        return Formula::implies(apply(f.left(), map), apply(f.right(), map));
      case Kind::Cond:
        return Formula::cond(apply(f.left(), map), apply(f.right(), map));
      case Kind::Forall: return apply_forall(f, map);
    }
    return f;
  }

 private:
  static std::vector<Variable> rename(std::span<const Variable> vars,
                                      const std::map<Variable, Variable>& map) {
    std::vector<Variable> out(vars.begin(), vars.end());
    for (Variable& v : out)
      if (auto it = map.find(v); it != map.end()) v = it->second;
    return out;
  }

  Formula apply_forall(const Formula& f, const std::map<Variable, Variable>& map) {
    Variable bound = f.var();
    std::map<Variable, Variable> inner;
    for (const auto& [from, to] : map)
      if (from != bound && occurs_free(from, f.body())) inner.emplace(from, to);
    if (inner.empty()) return f;

    bool captures = false;
    for (const auto& [from, to] : inner) captures |= (to == bound);
    Formula body = f.body();
    if (captures) {
      Variable renamed = fresh_variable(used_);
      used_.insert(renamed);
      body = apply(body, {{bound, renamed}});
      bound = renamed;
    }
    return Formula::forall(bound, apply(body, inner));
  }

  std::set<Variable> used_;
};

}  // namespace

Formula substitute(const Formula& f,
                   std::span<const std::pair<Variable, Variable>> targets) {
  std::map<Variable, Variable> map;
  std::set<Variable> used = all_variables(f);
  for (const auto& [from, to] : targets) {
    if (!map.emplace(from, to).second)
      throw std::invalid_argument("substitution targets must be distinct");
    used.insert(from);
    used.insert(to);
  }
  for (auto it = map.begin(); it != map.end();) {
    it = (it->first == it->second) ? map.erase(it) : std::next(it);
  }
  return Substituter(std::move(used)).apply(f, map);
}

Formula substitute(const Formula& f, Variable replaced, Variable replacement) {
  const std::pair<Variable, Variable> t{replaced, replacement};
  return substitute(f, std::span(&t, 1));
}

// --- α-equivalence -------------------------------------------------------------

namespace {

// Position of v in the binder stack counted from the innermost binder, or -1.
int binder_depth(const std::vector<Variable>& stack, Variable v) {
  for (std::size_t i = stack.size(); i-- > 0;)
    if (stack[i] == v) return static_cast<int>(stack.size() - 1 - i);
  return -1;
}

bool same_occurrence(const std::vector<Variable>& sa, Variable a,
                     const std::vector<Variable>& sb, Variable b) {
  int da = binder_depth(sa, a);
  int db = binder_depth(sb, b);
  if (da != db) return false;
  return da >= 0 || a == b;
}

bool alpha_eq(const Formula& a, std::vector<Variable>& sa, const Formula& b,
              std::vector<Variable>& sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Bottom: return true;
    case Kind::Atom:
      if (a.predicate() != b.predicate()) return false;
      [[fallthrough]];
    case Kind::Equals:
    case Kind::Existence:
      for (std::size_t i = 0; i < a.vars().size(); ++i)
        if (!same_occurrence(sa, a.vars()[i], sb, b.vars()[i])) return false;
      return true;
    case Kind::Not: return alpha_eq(a.sub(), sa, b.sub(), sb);
    case Kind::Implies:
    case Kind::Cond:
      return alpha_eq(a.left(), sa, b.left(), sb) &&
             alpha_eq(a.right(), sa, b.right(), sb);
    case Kind::Forall: {
      sa.push_back(a.var());
      sb.push_back(b.var());
      bool r = alpha_eq(a.body(), sa, b.body(), sb);
      sa.pop_back();
      sb.pop_back();
      return r;
    }
  }
  return false;
}

}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  if (a == b) return true;
  std::vector<Variable> sa, sb;
  return alpha_eq(a, sa, b, sb);
}

// --- structural utilities ------------------------------------------------------

Formula material_reduct(const Formula& f) {
  switch (f.kind()) {
    case Kind::Not: {
      Formula s = material_reduct(f.sub());
      return s.same_node(f.sub()) ? f : Formula::negation(std::move(s));
    }
    case Kind::Forall: {
      Formula s = material_reduct(f.body());
      return s.same_node(f.body()) ? f : Formula::forall(f.var(), std::move(s));
    }
    case Kind::Implies: {
      Formula l = material_reduct(f.left());
      Formula r = material_reduct(f.right());
      if (l.same_node(f.left()) && r.same_node(f.right())) return f;
      return Formula::implies(std::move(l), std::move(r));
    }
    case Kind::Cond:
      return Formula::implies(material_reduct(f.left()), material_reduct(f.right()));
    default: return f;
  }
}

FormulaMetrics metrics(const Formula& f) {
  switch (f.kind()) {
    case Kind::Not: {
      auto m = metrics(f.sub());
      return {m.size + 1, m.quantifier_rank};
    }
    case Kind::Forall: {
      auto m = metrics(f.body());
      return {m.size + 1, m.quantifier_rank + 1};
    }
    case Kind::Implies:
    case Kind::Cond: {
      auto l = metrics(f.left());
      auto r = metrics(f.right());
      return {l.size + r.size + 1, std::max(l.quantifier_rank, r.quantifier_rank)};
    }
    default: return {1, 0};
  }
}

bool is_conditional_free(const Formula& f) {
  switch (f.kind()) {
    case Kind::Cond: return false;
    case Kind::Not:
    case Kind::Forall: return is_conditional_free(f.sub());
    case Kind::Implies:
      return is_conditional_free(f.left()) && is_conditional_free(f.right());
    default: return true;
  }
}

bool has_quantifier(const Formula& f) {
  switch (f.kind()) {
    case Kind::Forall: return true;
    case Kind::Not: return has_quantifier(f.sub());
    case Kind::Implies:
    case Kind::Cond: return has_quantifier(f.left()) || has_quantifier(f.right());
    default: return false;
  }
}

std::optional<Language> minimal_language(const Formula& f) {
  bool has_e = false;
  bool has_eq = false;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    switch (g.kind()) {
      case Kind::Existence: has_e = true; break;
      case Kind::Equals: has_eq = true; break;
      case Kind::Not:
      case Kind::Forall: self(self, g.sub()); break;
      case Kind::Implies:
      case Kind::Cond:
        self(self, g.left());
        self(self, g.right());
        break;
      default: break;
    }
  };
  walk(walk, f);
  if (has_e && has_eq) return std::nullopt;
  if (has_e) return Language::LE;
  if (has_eq) return Language::LEq;
  return Language::L;
}

bool fits_language(const Formula& f, Language lang) {
  auto min = minimal_language(f);
  if (!min) return false;
  return *min == Language::L || *min == lang;
}

Formula build_ds() {
  const Variable x{0};
  const Variable y{1};
  const Predicate F = predicate_f();
  auto Fx = Formula::atom(F, {x});
  auto Fy = Formula::atom(F, {y});
  Formula nonempty = exists(x, top());
  Formula possible = Formula::forall(x, dia(Fx));
  Formula descent = Formula::forall(
      x, exists(y, Formula::cond(disj(Fx, Fy), Formula::negation(Fx))));
  return conj(conj(nonempty, possible), descent);
}

}  // namespace condlog
