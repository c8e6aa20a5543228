#include "condlog/semantics.hpp"

#include <algorithm>
#include <set>

namespace condlog {

namespace {

constexpr std::size_t kUnbound = static_cast<std::size_t>(-1);

class Evaluator {
 public:
  explicit Evaluator(const Model& model) : model_(model), frame_(model.frame) {
    const std::size_t d = frame_.domain_size();
    outside_.assign(d, 0);
    for (std::size_t w = 0; w < frame_.num_worlds(); ++w)
      for (std::size_t a = 0; a < d; ++a)
        if (!contains(frame_.local[w], a)) outside_[a] |= bit(w);
    all_ = frame_.all_worlds();
  }

  WorldSet run(const Formula& f, std::vector<std::size_t>& env) const {
    switch (f.kind()) {
      case Kind::Bottom: return 0;
      case Kind::Atom: {
        std::size_t tuple = 0;
        std::size_t scale = 1;
        for (Variable v : f.vars()) {
          tuple += value(env, v) * scale;
          scale *= frame_.domain_size();
        }
        return model_.interp.worlds_of(f.predicate(), tuple);
      }
      case Kind::Equals:
        return value(env, f.vars()[0]) == value(env, f.vars()[1]) ? all_ : 0;
      case Kind::Existence: return all_ & ~outside_[value(env, f.var())];
      case Kind::Not: return all_ & ~run(f.sub(), env);
      case Kind::Implies: return all_ & (~run(f.left(), env) | run(f.right(), env));
      case Kind::Cond: return conditional(run(f.left(), env), run(f.right(), env));
      case Kind::Forall: {
        const std::size_t slot = f.var().index;
        const std::size_t saved = env[slot];
        WorldSet result = all_;
        for (std::size_t a = 0; a < frame_.domain_size() && result; ++a) {
          env[slot] = a;
          result &= run(f.body(), env) | outside_[a];
        }
        env[slot] = saved;
        return result;
      }
    }
    return 0;
  }

 private:
  std::size_t value(const std::vector<std::size_t>& env, Variable v) const {
    const std::size_t a = env[v.index];
    if (a == kUnbound)
      throw InputError("assignment does not cover variable " + variable_name(v));
    return a;
  }

  WorldSet conditional(WorldSet a, WorldSet b) const {
    WorldSet out = 0;
    for (std::size_t w = 0; w < frame_.num_worlds(); ++w) {
      bool holds = false;
      switch (frame_.kind) {
        case FrameKind::Selection: holds = subset_of(frame_.select(a, w), b); break;
        case FrameKind::QuasiSelection: holds = subset_of(frame_.order_min(a, w), b); break;
        case FrameKind::Ordering: {
          const WorldSet candidates = a & frame_.access[w];
          holds = candidates == 0;
          for (WorldSet rest = candidates; rest && !holds; rest &= rest - 1) {
            const auto x = static_cast<std::size_t>(std::countr_zero(rest));
            holds = subset_of(frame_.below[w][x] & a, b);
          }
          break;
        }
      }
      if (holds) out |= bit(w);
    }
    return out;
  }

  const Model& model_;
  const Frame& frame_;
  std::vector<WorldSet> outside_;
  WorldSet all_ = 0;
};

std::size_t env_size(const Formula& f, const Assignment& g) {
  std::size_t n = 0;
  for (Variable v : all_variables(f)) n = std::max<std::size_t>(n, v.index + 1);
  for (const auto& [v, a] : g) n = std::max<std::size_t>(n, v.index + 1);
  return n;
}

std::vector<std::size_t> make_env(const Model& model, const Formula& f, const Assignment& g) {
  std::vector<std::size_t> env(env_size(f, g), kUnbound);
  for (const auto& [v, a] : g) {
    if (a >= model.frame.domain_size())
      throw InputError("assignment maps " + variable_name(v) + " outside the domain");
    env[v.index] = a;
  }
  for (Variable v : free_variables(f))
    if (env[v.index] == kUnbound)
      throw InputError("assignment does not cover free variable " + variable_name(v));
  return env;
}

// Calls visit(assignment) for every map from `vars` into the domain.
template <class Visit>
bool for_each_assignment(const std::vector<Variable>& vars, std::size_t domain, Visit&& visit) {
  Assignment g;
  std::vector<std::size_t> digits(vars.size(), 0);
  if (domain == 0 && !vars.empty()) return true;
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) g[vars[i]] = digits[i];
    if (!visit(g)) return false;
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == domain) digits[i++] = 0;
    if (i == digits.size()) return true;
  }
}

// Atom tuples reachable under g: free arguments fixed, bound ones ranging over D.
void reachable_tuples(const Formula& f, std::vector<std::size_t>& env, std::size_t domain,
                      std::set<std::pair<Predicate, std::size_t>>& out) {
  switch (f.kind()) {
    case Kind::Atom: {
      std::vector<std::size_t> open;
      std::size_t base = 0;
      std::size_t scale = 1;
      std::vector<std::size_t> scales;
      for (Variable v : f.vars()) {
        if (env[v.index] == kUnbound) {
          open.push_back(scale);
        } else {
          base += env[v.index] * scale;
        }
        scale *= domain;
      }
      std::vector<std::size_t> digits(open.size(), 0);
      while (true) {
        std::size_t t = base;
        for (std::size_t i = 0; i < open.size(); ++i) t += digits[i] * open[i];
        out.emplace(f.predicate(), t);
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == domain) digits[i++] = 0;
        if (i == digits.size()) break;
      }
      return;
    }
    case Kind::Not: reachable_tuples(f.sub(), env, domain, out); return;
    case Kind::Implies:
    case Kind::Cond:
      reachable_tuples(f.left(), env, domain, out);
      reachable_tuples(f.right(), env, domain, out);
      return;
    case Kind::Forall: {
      const std::size_t saved = env[f.var().index];
      env[f.var().index] = kUnbound;
      reachable_tuples(f.body(), env, domain, out);
      env[f.var().index] = saved;
      return;
    }
    default: return;
  }
}

}  // namespace

WorldSet denote(const Model& model, const Formula& f, const Assignment& g) {
  auto env = make_env(model, f, g);
  return Evaluator(model).run(f, env);
}

bool eval(const Model& model, std::size_t world, const Assignment& g, const Formula& f) {
  if (world >= model.frame.num_worlds()) throw InputError("world index out of range");
  return contains(denote(model, f, g), world);
}

std::optional<Counterexample> model_valid(const Model& model, std::span<const Formula> gamma) {
  std::set<Variable> fv;
  for (const Formula& f : gamma)
    for (Variable v : free_variables(f)) fv.insert(v);
  const std::vector<Variable> vars(fv.begin(), fv.end());
  Evaluator ev(model);
  const WorldSet all = model.frame.all_worlds();
  std::optional<Counterexample> found;
  for_each_assignment(vars, model.frame.domain_size(), [&](const Assignment& g) {
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      auto env = make_env(model, gamma[i], g);
      const WorldSet s = ev.run(gamma[i], env);
      if (s != all) {
        const auto w = static_cast<std::size_t>(std::countr_zero(all & ~s));
        found = Counterexample{i, w, g};
        return false;
      }
    }
    return true;
  });
  return found;
}

std::optional<CounterModel> frame_valid(const Frame& frame, const Formula& f,
                                        const FrameValidOptions& options) {
  const std::size_t nw = frame.num_worlds();
  const std::size_t nd = frame.domain_size();
  for (const Predicate& p : predicates_of(f))
    if (p.arity > options.max_arity)
      throw ResourceLimit("predicate arity " + std::to_string(p.arity) +
                          " exceeds the frame-validity ceiling");
  if (nw > options.max_worlds || nd > options.max_domain)
    throw ResourceLimit("frame exceeds the frame-validity ceiling (|W| <= " +
                        std::to_string(options.max_worlds) +
                        ", |D| <= " + std::to_string(options.max_domain) + ")");

  const auto fv = free_variables(f);
  const std::vector<Variable> vars(fv.begin(), fv.end());
  Model model{frame, {}};
  const WorldSet all = frame.all_worlds();
  std::optional<CounterModel> found;

  for_each_assignment(vars, nd, [&](const Assignment& g) {
    auto env = make_env(model, f, g);
    std::set<std::pair<Predicate, std::size_t>> tuples;
    reachable_tuples(f, env, nd, tuples);
    const std::vector<std::pair<Predicate, std::size_t>> slots(tuples.begin(), tuples.end());
    const std::size_t bits = slots.size() * nw;
    if (bits > options.max_bits)
      throw ResourceLimit("frame validity needs " + std::to_string(bits) +
                          " interpretation bits, above the ceiling of " +
                          std::to_string(options.max_bits));
    model.interp.ext.clear();
    for (const auto& [p, t] : slots) model.interp.ext[p].assign(tuple_count(nd, p.arity), 0);
    std::vector<WorldSet*> cells;
    for (const auto& [p, t] : slots) cells.push_back(&model.interp.ext[p][t]);

    Evaluator ev(model);
    const WorldSet mask = full_set(nw);
    const std::uint64_t total = std::uint64_t{1} << bits;
    for (std::uint64_t m = 0; m < total; ++m) {
      for (std::size_t i = 0; i < cells.size(); ++i) *cells[i] = (m >> (i * nw)) & mask;
      const WorldSet s = ev.run(f, env);
      if (s != all) {
        const auto w = static_cast<std::size_t>(std::countr_zero(all & ~s));
        found = CounterModel{model.interp, w, g};
        return false;
      }
    }
    return true;
  });
  return found;
}

}  // namespace condlog
