#include "condlog/corpus.hpp"

namespace condlog {

namespace {

class Generator {
 public:
  Generator(std::mt19937_64& rng, const RandomFormulaParams& p) : rng_(rng), p_(p) {}

  Formula sized(std::size_t size) {
    if (size <= 1) return leaf();
    std::vector<int> choices;
    choices.push_back(0);  // ~
    if (p_.quantifiers) choices.push_back(1);
    if (size >= 3) {
      choices.push_back(2);  // ->
      if (p_.conditionals) choices.push_back(3);
    }
    const int op = choices[pick(choices.size())];
    if (op == 0) return Formula::negation(sized(size - 1));
    if (op == 1) {
      Variable v = var();
      return Formula::forall(v, sized(size - 1));
    }
    const std::size_t left = 1 + pick(size - 2);
    Formula l = sized(left);
    Formula r = sized(size - 1 - left);
    return op == 3 ? Formula::cond(l, r) : Formula::implies(l, r);
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  Variable var() { return Variable{static_cast<std::uint32_t>(pick(p_.num_vars))}; }

  Formula leaf() {
    const std::size_t kinds = p_.predicates.size() + (p_.bottom ? 1 : 0) +
                              (p_.equality ? 1 : 0) + (p_.existence ? 1 : 0);
    std::size_t k = pick(kinds);
    if (k < p_.predicates.size()) {
      const Predicate pred = p_.predicates[k];
      std::vector<Variable> args;
      for (std::uint32_t i = 0; i < pred.arity; ++i) args.push_back(var());
      return Formula::atom(pred, std::move(args));
    }
    k -= p_.predicates.size();
    if (p_.bottom && k-- == 0) return Formula::bottom();
    if (p_.equality && k-- == 0) return Formula::equals(var(), var());
    return Formula::existence(var());
  }

  std::mt19937_64& rng_;
  const RandomFormulaParams& p_;
};

}  // namespace

Formula random_formula(std::mt19937_64& rng, const RandomFormulaParams& params) {
  Generator g(rng, params);
  const std::size_t size =
      std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, params.max_size))(rng);
  return g.sized(size);
}

Variable fragment_variable(std::size_t i) { return Variable{static_cast<std::uint32_t>(6 * i)}; }

std::vector<std::vector<Formula>> enumerate_fragment(std::size_t max_size, std::size_t num_vars,
                                                     bool equality) {
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  if (max_size == 0) return by_size;
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < num_vars; ++i) vars.push_back(fragment_variable(i));
  for (Variable v : vars) by_size[1].push_back(Formula::atom(predicate_f(), {v}));
  by_size[1].push_back(Formula::bottom());
  if (equality)
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (std::size_t j = i; j < vars.size(); ++j)
        by_size[1].push_back(Formula::equals(vars[i], vars[j]));
  for (std::size_t s = 2; s <= max_size; ++s) {
    auto& out = by_size[s];
    for (const Formula& f : by_size[s - 1]) {
      out.push_back(Formula::negation(f));
      for (Variable v : vars) out.push_back(Formula::forall(v, f));
    }
    for (std::size_t l = 1; l + 1 < s; ++l)
      for (const Formula& a : by_size[l])
        for (const Formula& b : by_size[s - 1 - l]) {
          out.push_back(Formula::implies(a, b));
          out.push_back(Formula::cond(a, b));
        }
  }
  return by_size;
}

}  // namespace condlog
