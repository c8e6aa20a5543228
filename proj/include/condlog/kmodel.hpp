#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "condlog/frame.hpp"
#include "condlog/syntax.hpp"

namespace condlog {

/// A world of K: a negative integer or -inf.
struct KWorld {
  bool minus_inf = false;
  std::int64_t k = -1;

  static KWorld at(std::int64_t k) { return {false, k}; }
  static KWorld origin() { return {true, 0}; }
  auto operator<=>(const KWorld&) const = default;
};

std::string to_string(KWorld w);
/// "-inf" or a negative integer.
std::optional<KWorld> parse_kworld(std::string_view text);

using KAssignment = std::map<Variable, std::int64_t>;

/// Subset of Z^- ∪ {-inf}: an optional ray {k : k <= ray} plus finitely many
/// closed intervals above it. Always canonical, so == is set equality.
class SymbolicWorldSet {
 public:
  struct Interval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    auto operator<=>(const Interval&) const = default;
  };

  SymbolicWorldSet() = default;
  static SymbolicWorldSet empty() { return {}; }
  static SymbolicWorldSet all_integers();
  static SymbolicWorldSet everything();
  static SymbolicWorldSet interval(std::int64_t lo, std::int64_t hi);
  static SymbolicWorldSet ray_to(std::int64_t b);
  static SymbolicWorldSet origin_only();
  /// Any pieces; the result is canonicalised.
  static SymbolicWorldSet make(bool minus_inf, std::optional<std::int64_t> ray,
                               std::vector<Interval> intervals);

  bool minus_inf() const { return minus_inf_; }
  const std::optional<std::int64_t>& ray() const { return ray_; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  bool contains(KWorld w) const;
  bool contains(std::int64_t k) const { return contains(KWorld::at(k)); }
  bool empty_set() const { return !minus_inf_ && !ray_ && intervals_.empty(); }
  bool integers_empty() const { return !ray_ && intervals_.empty(); }
  bool is_everything() const;
  /// Least integer element; none when empty or when a ray is present.
  std::optional<std::int64_t> least_integer() const;

  SymbolicWorldSet complement() const;
  SymbolicWorldSet unite(const SymbolicWorldSet& other) const;
  SymbolicWorldSet intersect(const SymbolicWorldSet& other) const;
  SymbolicWorldSet minus(const SymbolicWorldSet& other) const;

  std::string describe() const;
  friend bool operator==(const SymbolicWorldSet&, const SymbolicWorldSet&) = default;

 private:
  bool minus_inf_ = false;
  std::optional<std::int64_t> ray_;
  std::vector<Interval> intervals_;
};

/// The ordering clause at -inf, where <= is the integer order with -inf least.
bool cond_at_origin(const SymbolicWorldSet& a, const SymbolicWorldSet& b);

/// A test-set quantifier at -inf whose deep block was not constant.
class KStabilizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- counting normal forms -----------------------------------------------------------

/// Count constraint lo <= n <= hi, with hi absent meaning unbounded.
struct CountRange {
  std::uint32_t lo = 0;
  std::optional<std::uint32_t> hi;
  auto operator<=>(const CountRange&) const = default;
};

/// A complete type over the named variables. With identity, `classes[i]`
/// is the equality class of named variable i (restricted growth string),
/// `colour` is F per class and the counts range over unnamed elements.
/// Without identity every variable is its own class and the counts are
/// taken over the whole domain.
struct NfType {
  std::vector<std::uint32_t> classes;
  std::vector<bool> colour;
  CountRange f;
  CountRange not_f;
  auto operator<=>(const NfType&) const = default;
};

struct CountingNormalForm {
  std::vector<Variable> named;
  bool identity = false;
  /// Counts at or above this are indistinguishable for the formula.
  std::uint32_t threshold = 1;
  std::vector<NfType> types;

  std::string describe() const;
};

/// Quantifier elimination for the monadic F-fragment (with = when the
/// formula has it). E counts as true; conditionals are rejected.
CountingNormalForm monadic_nf(const Formula& f, const std::vector<Variable>& named);

/// A formula over F and = equivalent to the normal form.
Formula rebuild_formula(const CountingNormalForm& nf);

// --- the model K ---------------------------------------------------------------------

struct KOptions {
  /// Treat atoms of predicates other than F as false instead of rejecting them.
  bool other_predicates_empty = false;
};

struct KStats {
  std::size_t denote_calls = 0;
  std::size_t memo_hits = 0;
  std::size_t type_evaluations = 0;
};

/// Truth and denotation in K. Results are memoised per engine; an engine is
/// not safe to share between threads.
class KEngine {
 public:
  explicit KEngine(KOptions options = {});
  ~KEngine();
  KEngine(const KEngine&) = delete;
  KEngine& operator=(const KEngine&) = delete;

  SymbolicWorldSet denote(const Formula& f, const KAssignment& g);
  bool eval(const Formula& f, KWorld w, const KAssignment& g);
  const KStats& stats() const { return stats_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  KStats stats_;
  friend struct Impl;
};

SymbolicWorldSet denote_k(const Formula& f, const KAssignment& g, const KOptions& options = {});
bool eval_k(const Formula& f, KWorld w, const KAssignment& g, const KOptions& options = {});

/// K_n: worlds -1..-n and -inf, domain -1..-n. World i (and element i) is
/// -(i+1); world n is -inf.
Model truncate_k(std::size_t n);
std::size_t truncation_world(std::size_t n, KWorld w);
/// Maps values -1..-n to element indices.
Assignment truncation_assignment(std::size_t n, const KAssignment& g);

struct ProbeReport {
  SymbolicWorldSet f_all;       // min of Z^- under <=_{-inf}
  SymbolicWorldSet f_minus_one;  // min of {-1}
  bool uniformity_violated = false;
  bool wla_violated = false;
};

ProbeReport induced_selection_probe();
/// The same two propositions in K_n, through the finite order-minimum.
ProbeReport truncation_probe(std::size_t n);

struct CemSweepParams {
  std::size_t max_size = 7;
  std::size_t max_vars = 2;
  bool identity = false;
  /// Also check instances of 19, 20, 21, 23, 24 and rule 26 built from the pool.
  bool axioms = true;
  std::size_t jobs = 1;
};

struct CemFailure {
  std::string formula;
  std::string where;
};

struct CemSweepReport {
  std::size_t pool_size = 0;
  std::size_t cem_checked = 0;
  std::size_t axiom_checked = 0;
  std::size_t rule_checked = 0;
  /// Pairs whose antecedent set has a ray both inside and outside the consequent.
  std::size_t ray_splits = 0;
  std::vector<CemFailure> failures;
};

/// Pairs (φ, ψ) of fragment formulas with size(φ) + size(ψ) <= max_size,
/// under the assignment x_i -> -(i+1).
CemSweepReport cem_sweep(const CemSweepParams& params);

struct OracleParams {
  std::size_t count = 500;
  std::size_t max_size = 9;
  std::size_t num_vars = 2;
  /// Assignments range over -m..-1 and integer worlds over -1..-m.
  std::int64_t m = 6;
  bool identity = false;
  std::uint64_t seed = 1;
};

struct OracleReport {
  std::size_t formulas = 0;
  std::size_t checks = 0;        // (formula, assignment, world) triples
  std::size_t disagreements = 0;  // eval_k differs from K_n
  std::size_t unstable = 0;       // K_n, K_{n+1}, K_{n+2} differ
  std::size_t diagnostics = 0;    // stabilisation assertion failures
  std::vector<std::string> examples;
};

/// Compares eval_k with evaluation in K_n, n = m + size + 2, over random
/// F-fragment formulas, every assignment into -m..-1 and every world
/// -inf, -1..-m.
OracleReport oracle_agreement(const OracleParams& params);

}  // namespace condlog
