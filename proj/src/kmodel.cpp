#include "condlog/kmodel.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <sstream>

#include "condlog/errors.hpp"
#include "condlog/parser.hpp"

namespace condlog {

namespace {

// Lower end of a ray, as an interval endpoint.
constexpr std::int64_t kRayLow = std::numeric_limits<std::int64_t>::min() / 4;

using Segments = std::vector<SymbolicWorldSet::Interval>;

Segments segments_of(const SymbolicWorldSet& s) {
  Segments out;
  if (s.ray()) out.push_back({kRayLow, *s.ray()});
  out.insert(out.end(), s.intervals().begin(), s.intervals().end());
  return out;
}

}  // namespace

// --- worlds --------------------------------------------------------------------------

std::string to_string(KWorld w) { return w.minus_inf ? "-inf" : std::to_string(w.k); }

std::optional<KWorld> parse_kworld(std::string_view text) {
  if (text == "-inf" || text == "-infinity") return KWorld::origin();
  std::int64_t k = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc() || ptr != text.data() + text.size() || k > -1) return std::nullopt;
  return KWorld::at(k);
}

// --- symbolic world sets -----------------------------------------------------------

SymbolicWorldSet SymbolicWorldSet::all_integers() { return make(false, -1, {}); }
SymbolicWorldSet SymbolicWorldSet::everything() { return make(true, -1, {}); }
SymbolicWorldSet SymbolicWorldSet::interval(std::int64_t lo, std::int64_t hi) {
  return make(false, std::nullopt, {{lo, hi}});
}
SymbolicWorldSet SymbolicWorldSet::ray_to(std::int64_t b) { return make(false, b, {}); }
SymbolicWorldSet SymbolicWorldSet::origin_only() { return make(true, std::nullopt, {}); }

SymbolicWorldSet SymbolicWorldSet::make(bool minus_inf, std::optional<std::int64_t> ray,
                                        std::vector<Interval> intervals) {
  Segments segs;
  if (ray) segs.push_back({kRayLow, std::min<std::int64_t>(*ray, -1)});
  for (Interval iv : intervals) {
    iv.hi = std::min<std::int64_t>(iv.hi, -1);
    iv.lo = std::max(iv.lo, kRayLow);
    if (iv.lo <= iv.hi) segs.push_back(iv);
  }
  std::sort(segs.begin(), segs.end());
  Segments merged;
  for (const Interval& iv : segs) {
    if (!merged.empty() && iv.lo <= merged.back().hi + 1)
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  SymbolicWorldSet out;
  out.minus_inf_ = minus_inf;
  std::size_t first = 0;
  if (!merged.empty() && merged.front().lo == kRayLow) {
    out.ray_ = merged.front().hi;
    first = 1;
  }
  out.intervals_.assign(merged.begin() + static_cast<std::ptrdiff_t>(first), merged.end());
  return out;
}

bool SymbolicWorldSet::contains(KWorld w) const {
  if (w.minus_inf) return minus_inf_;
  if (ray_ && w.k <= *ray_) return true;
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return iv.lo <= w.k && w.k <= iv.hi; });
}

bool SymbolicWorldSet::is_everything() const {
  return minus_inf_ && ray_ && *ray_ == -1 && intervals_.empty();
}

std::optional<std::int64_t> SymbolicWorldSet::least_integer() const {
  if (ray_ || intervals_.empty()) return std::nullopt;
  return intervals_.front().lo;
}

SymbolicWorldSet SymbolicWorldSet::complement() const {
  std::vector<Interval> gaps;
  std::int64_t next = kRayLow;
  for (const Interval& iv : segments_of(*this)) {
    if (iv.lo > next) gaps.push_back({next, iv.lo - 1});
    next = iv.hi + 1;
  }
  if (next <= -1) gaps.push_back({next, -1});
  return make(!minus_inf_, std::nullopt, std::move(gaps));
}

SymbolicWorldSet SymbolicWorldSet::unite(const SymbolicWorldSet& other) const {
  Segments segs = segments_of(*this);
  Segments more = segments_of(other);
  segs.insert(segs.end(), more.begin(), more.end());
  return make(minus_inf_ || other.minus_inf_, std::nullopt, std::move(segs));
}

SymbolicWorldSet SymbolicWorldSet::intersect(const SymbolicWorldSet& other) const {
  return complement().unite(other.complement()).complement();
}

SymbolicWorldSet SymbolicWorldSet::minus(const SymbolicWorldSet& other) const {
  return intersect(other.complement());
}

std::string SymbolicWorldSet::describe() const {
  std::vector<std::string> parts;
  if (minus_inf_) parts.push_back("-inf");
  if (ray_) parts.push_back("(..," + std::to_string(*ray_) + "]");
  for (const Interval& iv : intervals_)
    parts.push_back(iv.lo == iv.hi ? std::to_string(iv.lo)
                                   : "[" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "]");
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + "}";
}

bool cond_at_origin(const SymbolicWorldSet& a, const SymbolicWorldSet& b) {
  if (a.minus_inf()) return b.minus_inf();
  if (a.integers_empty()) return true;
  if (auto m = a.least_integer()) return b.contains(*m);
  return !a.minus(b).ray().has_value();
}

// --- finite monadic structures ------------------------------------------------------

namespace {

bool is_f(const Predicate& p) { return p == predicate_f(); }

// A >-free reading of a formula (conditionals as material implication) over
// one unary predicate, compiled for repeated evaluation on small structures.
class Compiled {
 public:
  enum class Op : std::uint8_t { False, True, FAtom, Eq, Not, Imp, Forall };

  Compiled(const Formula& f, bool other_predicates_empty, const std::vector<Variable>& extra = {}) {
    for (Variable v : all_variables(f)) slots_.emplace(v, slots_.size());
    for (Variable v : extra) slots_.emplace(v, slots_.size());
    root_ = add(f, other_predicates_empty);
  }

  std::size_t slot(Variable v) const { return slots_.at(v); }
  std::size_t num_slots() const { return slots_.size(); }

  // colour[e] = F(e); env holds an element per slot (unused slots 0).
  bool evaluate(const std::vector<bool>& colour, std::vector<std::size_t> env) const {
    const std::size_t m = colour.size();
    std::size_t states = 1;
    bool memo_ok = m > 0;
    for (std::size_t i = 0; i < slots_.size() && memo_ok; ++i) {
      states *= m;
      memo_ok = states <= (std::size_t{1} << 22) / std::max<std::size_t>(1, nodes_.size());
    }
    Run run{*this, colour, std::move(env), m, {}};
    if (memo_ok) run.memo.assign(nodes_.size() * states, -1);
    return run.eval(root_);
  }

 private:
  struct Node {
    Op op = Op::False;
    std::size_t a = 0, b = 0;  // children
    std::size_t s0 = 0, s1 = 0;  // variable slots
  };

  struct Run {
    const Compiled& c;
    const std::vector<bool>& colour;
    std::vector<std::size_t> env;
    std::size_t m;
    std::vector<std::int8_t> memo;

    bool eval(std::size_t i) {
      const Node& n = c.nodes_[i];
      switch (n.op) {
        case Op::False: return false;
        case Op::True: return true;
        case Op::FAtom: return colour[env[n.s0]];
        case Op::Eq: return env[n.s0] == env[n.s1];
        case Op::Not: return !eval(n.a);
        case Op::Imp: return !eval(n.a) || eval(n.b);
        case Op::Forall: break;
      }
      std::size_t key = 0;
      if (!memo.empty()) {
        std::size_t code = 0;
        for (std::size_t s = env.size(); s-- > 0;) code = code * m + env[s];
        key = i * (memo.size() / c.nodes_.size()) + code;
        if (memo[key] >= 0) return memo[key] != 0;
      }
      const std::size_t saved = env[n.s0];
      bool result = true;
      for (std::size_t e = 0; e < m && result; ++e) {
        env[n.s0] = e;
        result = eval(n.a);
      }
      env[n.s0] = saved;
      if (!memo.empty()) memo[key] = result ? 1 : 0;
      return result;
    }
  };

  std::size_t add(const Formula& f, bool other_empty) {
    Node n;
    switch (f.kind()) {
      case Kind::Bottom: n.op = Op::False; break;
      case Kind::Atom:
        if (is_f(f.predicate())) {
          n.op = Op::FAtom;
          n.s0 = slots_.at(f.vars()[0]);
        } else if (other_empty) {
          n.op = Op::False;
        } else {
          throw InputError("K interprets only the unary predicate F; found " + print_formula(f));
        }
        break;
      case Kind::Equals:
        n.op = Op::Eq;
        n.s0 = slots_.at(f.vars()[0]);
        n.s1 = slots_.at(f.vars()[1]);
        break;
      case Kind::Existence: n.op = Op::True; break;
      case Kind::Not:
        n.op = Op::Not;
        n.a = add(f.sub(), other_empty);
        break;
      case Kind::Implies:
      case Kind::Cond:
        n.op = Op::Imp;
        n.a = add(f.left(), other_empty);
        n.b = add(f.right(), other_empty);
        break;
      case Kind::Forall:
        n.op = Op::Forall;
        n.s0 = slots_.at(f.var());
        n.a = add(f.body(), other_empty);
        break;
    }
    nodes_.push_back(n);
    return nodes_.size() - 1;
  }

  std::map<Variable, std::size_t> slots_;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

bool has_equality(const Formula& f) {
  switch (f.kind()) {
    case Kind::Equals: return true;
    case Kind::Not:
    case Kind::Forall: return has_equality(f.sub());
    case Kind::Implies:
    case Kind::Cond: return has_equality(f.left()) || has_equality(f.right());
    default: return false;
  }
}

// A point type: counts are exact values in 0..cap, cap meaning "cap or more".
struct PointType {
  std::vector<std::uint32_t> classes;
  std::vector<bool> colour;
  std::uint32_t f = 0;
  std::uint32_t not_f = 0;

  std::vector<std::uint32_t> key() const {
    std::vector<std::uint32_t> k = classes;
    for (bool c : colour) k.push_back(c ? 1 : 0);
    k.push_back(f);
    k.push_back(not_f);
    return k;
  }
};

// The smallest structure realising a point type, with the element of each
// named variable.
bool evaluate_type(const Compiled& c, const std::vector<Variable>& named, const PointType& t,
                   bool identity) {
  std::vector<bool> colour;
  std::vector<std::size_t> env(c.num_slots(), 0);
  if (identity) {
    colour = t.colour;
  } else {
    for (std::size_t i = 0; i < named.size(); ++i) colour.push_back(t.colour[i]);
  }
  for (std::size_t i = 0; i < named.size(); ++i) env[c.slot(named[i])] = t.classes[i];
  for (std::uint32_t i = 0; i < t.f; ++i) colour.push_back(true);
  for (std::uint32_t i = 0; i < t.not_f; ++i) colour.push_back(false);
  return c.evaluate(colour, std::move(env));
}

void for_each_partition(std::size_t n, const std::function<void(std::vector<std::uint32_t>&)>& fn) {
  std::vector<std::uint32_t> rgs(n, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t used) {
    if (i == n) {
      fn(rgs);
      return;
    }
    for (std::uint32_t c = 0; c <= used && c < n; ++c) {
      rgs[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
}

std::uint32_t num_classes(const std::vector<std::uint32_t>& rgs) {
  std::uint32_t k = 0;
  for (auto c : rgs) k = std::max(k, c + 1);
  return k;
}

std::vector<PointType> all_point_types(std::size_t n, bool identity, std::uint32_t cap) {
  std::vector<PointType> out;
  if (identity) {
    for_each_partition(n, [&](std::vector<std::uint32_t>& rgs) {
      const std::uint32_t k = num_classes(rgs);
      for (std::uint64_t col = 0; col < (std::uint64_t{1} << k); ++col)
        for (std::uint32_t f = 0; f <= cap; ++f)
          for (std::uint32_t nf = 0; nf <= cap; ++nf) {
            if (cap > 0 && k + f + nf == 0) continue;  // empty domain
            PointType t{rgs, {}, f, nf};
            for (std::uint32_t i = 0; i < k; ++i) t.colour.push_back((col >> i) & 1u);
            out.push_back(std::move(t));
          }
    });
    return out;
  }
  std::vector<std::uint32_t> ids(n);
  for (std::uint32_t i = 0; i < n; ++i) ids[i] = i;
  for (std::uint64_t col = 0; col < (std::uint64_t{1} << n); ++col)
    for (std::uint32_t f = 0; f <= 1; ++f)
      for (std::uint32_t nf = 0; nf <= 1; ++nf) {
        PointType t{ids, {}, f, nf};
        bool any_f = false, any_not_f = false;
        for (std::uint32_t i = 0; i < n; ++i) {
          t.colour.push_back((col >> i) & 1u);
          (t.colour.back() ? any_f : any_not_f) = true;
        }
        if ((any_f && !f) || (any_not_f && !nf) || (!f && !nf)) continue;
        out.push_back(std::move(t));
      }
  return out;
}

CountRange point_range(std::uint32_t v, std::uint32_t cap) {
  return v >= cap ? CountRange{v, std::nullopt} : CountRange{v, v};
}

// Merges point ranges that form a contiguous run.
std::vector<CountRange> merge_ranges(std::vector<CountRange> rs) {
  std::sort(rs.begin(), rs.end());
  std::vector<CountRange> out;
  for (const CountRange& r : rs) {
    if (!out.empty() && out.back().hi && *out.back().hi + 1 == r.lo)
      out.back().hi = r.hi;
    else
      out.push_back(r);
  }
  return out;
}

std::string range_text(const char* what, const CountRange& r, std::uint32_t /*cap*/) {
  if (!r.hi) return r.lo == 0 ? "" : std::string(what) + " >= " + std::to_string(r.lo);
  if (r.lo == *r.hi) return std::string(what) + " = " + std::to_string(r.lo);
  return std::string(what) + " in [" + std::to_string(r.lo) + "," + std::to_string(*r.hi) + "]";
}

}  // namespace

// --- counting normal forms -----------------------------------------------------------

CountingNormalForm monadic_nf(const Formula& f, const std::vector<Variable>& named) {
  if (!is_conditional_free(f)) throw InputError("monadic_nf expects a >-free formula");
  for (const Predicate& p : predicates_of(f))
    if (!is_f(p)) throw InputError("monadic_nf expects F as the only predicate");
  for (Variable v : free_variables(f))
    if (std::find(named.begin(), named.end(), v) == named.end())
      throw InputError("free variable " + variable_name(v) + " is not named");

  CountingNormalForm nf;
  nf.named = named;
  nf.identity = has_equality(f);
  nf.threshold = nf.identity ? static_cast<std::uint32_t>(metrics(f).quantifier_rank) : 1;

  const Compiled compiled(f, false, named);
  const Compiled* c = &compiled;

  std::vector<PointType> truths;
  for (const PointType& t : all_point_types(named.size(), nf.identity, nf.threshold))
    if (evaluate_type(*c, named, t, nf.identity)) truths.push_back(t);

  const std::uint32_t cap = nf.threshold;
  const std::uint32_t count_cap = nf.identity ? cap : 1;
  // Merge the ~F counts, then the F counts.
  std::map<std::tuple<std::vector<std::uint32_t>, std::vector<bool>, CountRange>,
           std::vector<CountRange>>
      by_f;
  for (const PointType& t : truths)
    by_f[{t.classes, t.colour, point_range(t.f, count_cap)}].push_back(
        point_range(t.not_f, count_cap));
  std::map<std::tuple<std::vector<std::uint32_t>, std::vector<bool>, CountRange>,
           std::vector<CountRange>>
      by_not_f;
  for (auto& [k, ranges] : by_f)
    for (const CountRange& r : merge_ranges(ranges))
      by_not_f[{std::get<0>(k), std::get<1>(k), r}].push_back(std::get<2>(k));
  for (auto& [k, ranges] : by_not_f)
    for (const CountRange& r : merge_ranges(ranges))
      nf.types.push_back({std::get<0>(k), std::get<1>(k), r, std::get<2>(k)});
  std::sort(nf.types.begin(), nf.types.end());
  return nf;
}

std::string CountingNormalForm::describe() const {
  if (types.empty()) return "bot";
  std::ostringstream os;
  const char* f_name = identity ? "#F(unnamed)" : "#F";
  const char* nf_name = identity ? "#~F(unnamed)" : "#~F";
  for (std::size_t t = 0; t < types.size(); ++t) {
    const NfType& ty = types[t];
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < named.size(); ++i)
      for (std::size_t j = i + 1; j < named.size() && identity; ++j)
        parts.push_back(variable_name(named[i]) + (ty.classes[i] == ty.classes[j] ? " = " : " != ") +
                        variable_name(named[j]));
    for (std::size_t i = 0; i < named.size(); ++i)
      parts.push_back(std::string(ty.colour[ty.classes[i]] ? "" : "~") + "F(" +
                      variable_name(named[i]) + ")");
    for (auto s : {range_text(f_name, ty.f, threshold), range_text(nf_name, ty.not_f, threshold)})
      if (!s.empty()) parts.push_back(s);
    if (parts.empty()) parts.push_back("top");
    if (t) os << "\n";
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " & " : "") << parts[i];
  }
  return os.str();
}

namespace {

Formula big_conj(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = conj(out, parts[i]);
  return out;
}

Formula literal(Variable v, bool positive) {
  Formula a = Formula::atom(predicate_f(), {v});
  return positive ? a : Formula::negation(a);
}

// At least j elements of the given colour outside the named ones.
Formula at_least(std::uint32_t j, bool positive, const std::vector<Variable>& named,
                 bool identity) {
  if (j == 0) return top();
  std::set<Variable> used(named.begin(), named.end());
  std::vector<Variable> zs;
  for (std::uint32_t i = 0; i < j; ++i) {
    zs.push_back(fresh_variable(used));
    used.insert(zs.back());
  }
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    parts.push_back(literal(zs[i], positive));
    if (!identity) continue;
    for (std::size_t k = 0; k < i; ++k) parts.push_back(not_equals(zs[k], zs[i]));
    for (Variable v : named) parts.push_back(not_equals(zs[i], v));
  }
  Formula body = big_conj(parts);
  for (std::size_t i = zs.size(); i-- > 0;) body = exists(zs[i], body);
  return body;
}

Formula range_formula(const CountRange& r, bool positive, const std::vector<Variable>& named,
                      bool identity) {
  std::vector<Formula> parts;
  if (r.lo > 0) parts.push_back(at_least(r.lo, positive, named, identity));
  if (r.hi) parts.push_back(Formula::negation(at_least(*r.hi + 1, positive, named, identity)));
  return big_conj(parts);
}

}  // namespace

Formula rebuild_formula(const CountingNormalForm& nf) {
  std::optional<Formula> out;
  for (const NfType& t : nf.types) {
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < nf.named.size(); ++i) {
      if (nf.identity)
        for (std::size_t j = i + 1; j < nf.named.size(); ++j)
          parts.push_back(t.classes[i] == t.classes[j]
                              ? Formula::equals(nf.named[i], nf.named[j])
                              : not_equals(nf.named[i], nf.named[j]));
      parts.push_back(literal(nf.named[i], t.colour[t.classes[i]]));
    }
    parts.push_back(range_formula(t.f, true, nf.named, nf.identity));
    parts.push_back(range_formula(t.not_f, false, nf.named, nf.identity));
    std::vector<Formula> kept;
    for (const Formula& p : parts)
      if (!(p == top())) kept.push_back(p);
    Formula type = big_conj(kept);
    out = out ? disj(*out, type) : type;
  }
  return out ? *out : Formula::bottom();
}

// --- the engine ----------------------------------------------------------------------

namespace {

struct ValuesKey {
  Formula f;
  std::vector<std::int64_t> values;
  bool operator==(const ValuesKey&) const = default;
};

struct TypeKey {
  Formula f;
  std::vector<std::uint32_t> type;
  bool operator==(const TypeKey&) const = default;
};

template <class V>
std::size_t hash_with(const Formula& f, const std::vector<V>& values) {
  std::size_t h = f.hash();
  for (V v : values) h ^= std::hash<V>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

struct ValuesKeyHash {
  std::size_t operator()(const ValuesKey& k) const { return hash_with(k.f, k.values); }
};
struct TypeKeyHash {
  std::size_t operator()(const TypeKey& k) const { return hash_with(k.f, k.type); }
};

}  // namespace

struct KEngine::Impl {
  KEngine& owner;
  KOptions options;
  std::unordered_map<Formula, std::vector<Variable>, FormulaHash> free_vars;
  std::unordered_map<Formula, std::shared_ptr<Compiled>, FormulaHash> compiled;
  std::unordered_map<Formula, std::pair<bool, std::uint32_t>, FormulaHash> shape;  // identity, cap
  std::unordered_map<ValuesKey, SymbolicWorldSet, ValuesKeyHash> memo;
  std::unordered_map<TypeKey, bool, TypeKeyHash> type_truth;

  const std::vector<Variable>& fv(const Formula& f) {
    auto it = free_vars.find(f);
    if (it != free_vars.end()) return it->second;
    auto s = free_variables(f);
    return free_vars.emplace(f, std::vector<Variable>(s.begin(), s.end())).first->second;
  }

  SymbolicWorldSet denote(const Formula& f, KAssignment& g) {
    switch (f.kind()) {
      case Kind::Bottom: return {};
      case Kind::Atom:
        if (is_f(f.predicate())) return SymbolicWorldSet::interval(g.at(f.vars()[0]), -1);
        if (options.other_predicates_empty) return {};
        throw InputError("K interprets only the unary predicate F; found " + print_formula(f));
      case Kind::Equals:
        return g.at(f.vars()[0]) == g.at(f.vars()[1]) ? SymbolicWorldSet::everything()
                                                       : SymbolicWorldSet{};
      case Kind::Existence: return SymbolicWorldSet::everything();
      case Kind::Not: return denote(f.sub(), g).complement();
      case Kind::Implies: return denote(f.left(), g).complement().unite(denote(f.right(), g));
      case Kind::Cond: {
        const SymbolicWorldSet a = denote(f.left(), g);
        const SymbolicWorldSet b = denote(f.right(), g);
        const SymbolicWorldSet material = a.complement().unite(b);
        return SymbolicWorldSet::make(cond_at_origin(a, b), material.ray(), material.intervals());
      }
      case Kind::Forall: return denote_forall(f, g);
    }
    return {};
  }

  SymbolicWorldSet denote_forall(const Formula& f, KAssignment& g) {
    ++owner.stats_.denote_calls;
    const auto& named = fv(f);
    ValuesKey key{f, {}};
    for (Variable v : named) key.values.push_back(g.at(v));
    if (auto it = memo.find(key); it != memo.end()) {
      ++owner.stats_.memo_hits;
      return it->second;
    }
    const SymbolicWorldSet integers = integer_part(f, named, key.values);
    const bool origin = origin_bit(f, g, key.values);
    SymbolicWorldSet out = SymbolicWorldSet::make(origin, integers.ray(), integers.intervals());
    memo.emplace(std::move(key), out);
    return out;
  }

  // Truth of the material reduct at world k, for every k, by scanning the
  // worlds where the type of k can change.
  SymbolicWorldSet integer_part(const Formula& f, const std::vector<Variable>& named,
                                const std::vector<std::int64_t>& values) {
    auto [identity, cap] = shape_of(f);
    std::int64_t lowest = -1;
    for (auto v : values) lowest = std::min(lowest, v);
    std::vector<std::int64_t> distinct(values);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const std::int64_t bottom =
        lowest - static_cast<std::int64_t>(cap) - static_cast<std::int64_t>(distinct.size()) - 3;
    std::vector<SymbolicWorldSet::Interval> pieces;
    bool last = false;
    for (std::int64_t k = -1; k >= bottom; --k) {
      last = world_truth(f, named, values, distinct, identity, cap, k);
      if (last) pieces.push_back({k, k});
    }
    return SymbolicWorldSet::make(false, last ? std::optional<std::int64_t>(bottom) : std::nullopt,
                                  std::move(pieces));
  }

  bool world_truth(const Formula& f, const std::vector<Variable>& named,
                   const std::vector<std::int64_t>& values,
                   const std::vector<std::int64_t>& distinct, bool identity, std::uint32_t cap,
                   std::int64_t k) {
    PointType t;
    if (identity) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        std::size_t j = 0;
        while (j < i && values[j] != values[i]) ++j;
        if (j < i) {
          t.classes.push_back(t.classes[j]);
        } else {
          t.classes.push_back(static_cast<std::uint32_t>(t.colour.size()));
          t.colour.push_back(values[i] <= k);
        }
      }
      const auto above = static_cast<std::int64_t>(
          std::count_if(distinct.begin(), distinct.end(), [&](std::int64_t v) { return v > k; }));
      const std::int64_t unnamed_not_f = (-k - 1) - above;
      t.f = cap;
      t.not_f = static_cast<std::uint32_t>(std::min<std::int64_t>(cap, unnamed_not_f));
    } else {
      for (std::size_t i = 0; i < values.size(); ++i) {
        t.classes.push_back(static_cast<std::uint32_t>(i));
        t.colour.push_back(values[i] <= k);
      }
      t.f = 1;
      t.not_f = k <= -2 ? 1 : 0;
    }
    TypeKey key{f, t.key()};
    if (auto it = type_truth.find(key); it != type_truth.end()) return it->second;
    ++owner.stats_.type_evaluations;
    const bool r = evaluate_type(compiled_of(f), named, t, identity);
    type_truth.emplace(std::move(key), r);
    return r;
  }

  bool origin_bit(const Formula& f, KAssignment& g, const std::vector<std::int64_t>& values) {
    const Variable x = f.var();
    const auto size = static_cast<std::int64_t>(metrics(f).size);
    std::int64_t lowest = -1;
    for (auto v : values) lowest = std::min(lowest, v);
    const std::int64_t deep = lowest - size - 2;

    const std::optional<std::int64_t> saved =
        g.count(x) ? std::optional<std::int64_t>(g.at(x)) : std::nullopt;
    auto body_at = [&](std::int64_t a) {
      g[x] = a;
      return denote(f.body(), g).minus_inf();
    };
    auto restore = [&] {
      if (saved)
        g[x] = *saved;
      else
        g.erase(x);
    };

    const bool deep_value = body_at(deep);
    for (std::int64_t a = deep - 1; a >= deep - size; --a) {
      if (body_at(a) != deep_value) {
        restore();
        throw KStabilizationError("quantifier test set did not stabilise for " +
                                  print_formula(f));
      }
    }
    bool result = deep_value;
    std::vector<std::int64_t> centres(values);
    centres.push_back(-1);
    for (std::int64_t c : centres) {
      for (std::int64_t d = -(size + 1); d <= size + 1 && result; ++d) {
        const std::int64_t a = c + d;
        if (a <= -1) result = body_at(a);
      }
    }
    restore();
    return result;
  }

  std::pair<bool, std::uint32_t> shape_of(const Formula& f) {
    auto it = shape.find(f);
    if (it != shape.end()) return it->second;
    const bool identity = has_equality(f);
    const auto cap = identity ? static_cast<std::uint32_t>(metrics(f).quantifier_rank) : 1u;
    return shape.emplace(f, std::make_pair(identity, cap)).first->second;
  }

  const Compiled& compiled_of(const Formula& f) {
    auto it = compiled.find(f);
    if (it != compiled.end()) return *it->second;
    auto c = std::make_shared<Compiled>(material_reduct(f), options.other_predicates_empty);
    return *compiled.emplace(f, std::move(c)).first->second;
  }
};

KEngine::KEngine(KOptions options) : impl_(std::make_unique<Impl>(Impl{*this, options, {}, {}, {}, {}, {}})) {}
KEngine::~KEngine() = default;

SymbolicWorldSet KEngine::denote(const Formula& f, const KAssignment& g) {
  for (Variable v : free_variables(f)) {
    auto it = g.find(v);
    if (it == g.end()) throw InputError("assignment does not cover " + variable_name(v));
    if (it->second > -1)
      throw InputError("K assigns negative integers; " + variable_name(v) + " = " +
                       std::to_string(it->second));
  }
  KAssignment local = g;
  return impl_->denote(f, local);
}

bool KEngine::eval(const Formula& f, KWorld w, const KAssignment& g) {
  if (!w.minus_inf && w.k > -1) throw InputError("worlds of K are negative integers or -inf");
  return denote(f, g).contains(w);
}

SymbolicWorldSet denote_k(const Formula& f, const KAssignment& g, const KOptions& options) {
  KEngine engine(options);
  return engine.denote(f, g);
}

bool eval_k(const Formula& f, KWorld w, const KAssignment& g, const KOptions& options) {
  KEngine engine(options);
  return engine.eval(f, w, g);
}

// --- truncations ----------------------------------------------------------------------

Model truncate_k(std::size_t n) {
  if (n == 0) throw InputError("truncation size must be at least 1");
  if (n + 1 > kMaxWorlds) throw ResourceLimit("truncations are limited to 63 integer worlds");
  Model m;
  Frame& f = m.frame;
  f.kind = FrameKind::Ordering;
  for (std::size_t i = 0; i < n; ++i) {
    f.world_names.push_back(std::to_string(-static_cast<std::int64_t>(i) - 1));
    f.domain_names.push_back(f.world_names.back());
  }
  f.world_names.push_back("-inf");
  const std::size_t origin = n;
  f.access.assign(n + 1, 0);
  f.local.assign(n + 1, f.all_elements());
  f.below.assign(n + 1, std::vector<WorldSet>(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    f.access[i] = bit(i);
    f.below[i][i] = bit(i);
  }
  f.access[origin] = f.all_worlds();
  // Integer -(i+1) lies below -(j+1) iff i >= j; -inf lies below everything.
  for (std::size_t y = 0; y <= n; ++y)
    for (std::size_t x = 0; x <= n; ++x)
      if (x == origin || (y != origin && x >= y)) f.below[origin][y] |= bit(x);
  const Predicate pf = predicate_f();
  m.interp.ext[pf].assign(n, 0);
  // F(-(e+1)) holds at world -(k+1) iff e >= k.
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t k = 0; k <= e; ++k) m.interp.ext[pf][e] |= bit(k);
  return m;
}

std::size_t truncation_world(std::size_t n, KWorld w) {
  if (w.minus_inf) return n;
  if (w.k < -static_cast<std::int64_t>(n) || w.k > -1)
    throw InputError("world " + to_string(w) + " is outside K_" + std::to_string(n));
  return static_cast<std::size_t>(-w.k - 1);
}

Assignment truncation_assignment(std::size_t n, const KAssignment& g) {
  Assignment out;
  for (const auto& [v, value] : g) {
    if (value < -static_cast<std::int64_t>(n) || value > -1)
      throw InputError("value " + std::to_string(value) + " is outside K_" + std::to_string(n));
    out[v] = static_cast<std::size_t>(-value - 1);
  }
  return out;
}

// --- selection probe -----------------------------------------------------------------

namespace {

// min under <= of an integer set; a ray has no minimum.
SymbolicWorldSet order_minimum(const SymbolicWorldSet& s) {
  if (s.minus_inf()) return SymbolicWorldSet::origin_only();
  if (auto m = s.least_integer()) return SymbolicWorldSet::interval(*m, *m);
  return {};
}

ProbeReport probe_from(const SymbolicWorldSet& p, const SymbolicWorldSet& fp,
                       const SymbolicWorldSet& q, const SymbolicWorldSet& fq) {
  ProbeReport r{fp, fq};
  const bool fp_in_q = fp.minus(q).empty_set();
  const bool fq_in_p = fq.minus(p).empty_set();
  r.uniformity_violated = fp_in_q && fq_in_p && !(fp == fq);
  r.wla_violated = (fp.empty_set() && !p.intersect(fq).empty_set()) ||
                   (fq.empty_set() && !q.intersect(fp).empty_set());
  return r;
}

}  // namespace

ProbeReport induced_selection_probe() {
  const auto p = SymbolicWorldSet::all_integers();
  const auto q = SymbolicWorldSet::interval(-1, -1);
  return probe_from(p, order_minimum(p), q, order_minimum(q));
}

ProbeReport truncation_probe(std::size_t n) {
  const Model m = truncate_k(n);
  const WorldSet integers = full_set(n);
  const WorldSet minus_one = bit(0);
  auto to_symbolic = [&](WorldSet s) {
    std::vector<SymbolicWorldSet::Interval> out;
    for (std::size_t i = 0; i < n; ++i)
      if (contains(s, i)) out.push_back({-static_cast<std::int64_t>(i) - 1, -static_cast<std::int64_t>(i) - 1});
    return SymbolicWorldSet::make(contains(s, n), std::nullopt, std::move(out));
  };
  return probe_from(to_symbolic(integers), to_symbolic(m.frame.order_min(integers, n)),
                    to_symbolic(minus_one), to_symbolic(m.frame.order_min(minus_one, n)));
}

}  // namespace condlog
