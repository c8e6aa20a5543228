#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace condlog {

/// Individual variable. Index i renders as one of x,y,z,u,v,w followed by
/// i/6 when that is nonzero (x, y, ..., w, x1, y1, ...).
struct Variable {
  std::uint32_t index = 0;
  auto operator<=>(const Variable&) const = default;
};

/// n-place predicate; (index, arity) is the identity.
struct Predicate {
  std::uint32_t index = 0;
  std::uint32_t arity = 0;
  auto operator<=>(const Predicate&) const = default;
};

enum class Language { L, LE, LEq };

std::string_view language_name(Language lang);
std::optional<Language> parse_language(std::string_view text);

enum class Kind : std::uint8_t {
  Bottom,
  Atom,
  Equals,
  Existence,
  Not,
  Implies,
  Cond,
  Forall
};

class Formula {
 public:
  Formula();  // ⊥

  static Formula bottom();
  static Formula atom(Predicate pred, std::vector<Variable> args);
  static Formula equals(Variable lhs, Variable rhs);
  static Formula existence(Variable var);
  static Formula negation(Formula sub);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula cond(Formula lhs, Formula rhs);
  static Formula forall(Variable var, Formula body);

  Kind kind() const;
  const Predicate& predicate() const;
  /// Atom arguments; [x, y] for Equals; [x] for Existence and Forall.
  std::span<const Variable> vars() const;
  /// Bound variable of Forall, argument of Existence.
  Variable var() const { return vars()[0]; }
  /// Operand of Not, body of Forall, left operand of binary nodes.
  const Formula& left() const;
  const Formula& right() const;
  const Formula& sub() const { return left(); }
  const Formula& body() const { return left(); }

  std::size_t hash() const;
  bool same_node(const Formula& other) const { return node_ == other.node_; }

  /// Structural (syntactic) identity.
  friend bool operator==(const Formula& a, const Formula& b);
  /// Total structural order, used for sets of formulas.
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Derived connectives. All of them expand to core nodes.
Formula top();
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula exists(Variable var, Formula body);
Formula box(Formula a);
Formula dia(Formula a);
Formula not_equals(Variable lhs, Variable rhs);
/// Right-nested conditional a1 > (a2 > (... > body)).
Formula cond_chain(std::span<const Formula> antecedents, Formula body);

std::string variable_name(Variable v);
std::string predicate_name(Predicate p);
std::optional<Variable> parse_variable_name(std::string_view text);
/// Arity is not part of the name; the caller supplies it.
std::optional<std::uint32_t> parse_predicate_index(std::string_view text);

/// The conventional unary F used by DS and the model K.
Predicate predicate_f();

std::set<Variable> free_variables(const Formula& f);
/// Every variable occurring anywhere, bound or free.
std::set<Variable> all_variables(const Formula& f);
std::set<Predicate> predicates_of(const Formula& f);
bool occurs_free(Variable v, const Formula& f);

/// Smallest variable index not contained in `used`.
Variable fresh_variable(const std::set<Variable>& used);

/// Simultaneous capture-avoiding substitution φ[y1..yn / x1..xn].
/// `targets` holds (replaced x_i, replacement y_i) with distinct x_i.
Formula substitute(const Formula& f,
                   std::span<const std::pair<Variable, Variable>> targets);
Formula substitute(const Formula& f, Variable replaced, Variable replacement);

bool alpha_equivalent(const Formula& a, const Formula& b);

/// Every > rewritten to ⊃.
Formula material_reduct(const Formula& f);

struct FormulaMetrics {
  std::size_t size = 0;
  std::size_t quantifier_rank = 0;
};
FormulaMetrics metrics(const Formula& f);

bool is_conditional_free(const Formula& f);
bool has_quantifier(const Formula& f);

/// Smallest language containing the formula (L ⊂ LE, L ⊂ LEq; a formula
/// with both E and = fits neither and yields nullopt).
std::optional<Language> minimal_language(const Formula& f);
bool fits_language(const Formula& f, Language lang);

/// ∃x⊤ ∧ ∀x◇F(x) ∧ ∀x∃y((F(x)∨F(y)) > ¬F(x)).
Formula build_ds();

// ---------------------------------------------------------------------------

struct Formula::Node {
  Kind kind = Kind::Bottom;
  Predicate pred{};
  std::vector<Variable> vars;
  Formula lhs{std::shared_ptr<const Node>{}};
  Formula rhs{std::shared_ptr<const Node>{}};
  std::size_t hash = 0;
};

}  // namespace condlog
