#include <algorithm>
#include <mutex>
#include <thread>

#include "condlog/corpus.hpp"
#include "condlog/errors.hpp"
#include "condlog/kmodel.hpp"
#include "condlog/parser.hpp"

namespace condlog {

namespace {

struct Pool {
  std::vector<Formula> formulas;
  std::vector<std::size_t> sizes;
  std::vector<Variable> vars;
};

class SweepWorker {
 public:
  SweepWorker(const Pool& pool, const CemSweepParams& params, const KAssignment& g)
      : pool_(pool), params_(params), g_(g) {}

  CemSweepReport run(std::size_t part, std::size_t parts) {
    const auto& fs = pool_.formulas;
    const auto& sz = pool_.sizes;
    const std::size_t budget = params_.max_size;
    for (std::size_t i = part; i < fs.size(); i += parts) {
      const Formula& phi = fs[i];
      const SymbolicWorldSet a = engine_.denote(phi, g_);
      if (params_.axioms) {
        check(Formula::cond(phi, phi), "19");
        for (Variable x : pool_.vars)
          for (Variable y : pool_.vars)
            check(Formula::implies(Formula::forall(x, phi), substitute(phi, x, y)), "23");
      }
      for (std::size_t j = 0; j < fs.size() && sz[i] + sz[j] <= budget; ++j) {
        const Formula& psi = fs[j];
        ++report_.cem_checked;
        const SymbolicWorldSet b = engine_.denote(psi, g_);
        if (a.ray() && a.minus(b).ray() && a.intersect(b).ray()) ++report_.ray_splits;
        check(disj(Formula::cond(phi, psi), Formula::cond(phi, Formula::negation(psi))), "CEM");
        if (!params_.axioms) continue;
        check(Formula::implies(Formula::cond(phi, psi), Formula::implies(phi, psi)), "21");
        for (Variable x : pool_.vars)
          if (!occurs_free(x, phi))
            check(Formula::implies(Formula::forall(x, Formula::cond(phi, psi)),
                                   Formula::cond(phi, Formula::forall(x, psi))),
                  "24");
        for (std::size_t k = 0; k < fs.size() && sz[i] + sz[j] + sz[k] <= budget; ++k) {
          const Formula& chi = fs[k];
          check(Formula::implies(conj(conj(Formula::cond(phi, psi), Formula::cond(psi, phi)),
                                      Formula::cond(phi, chi)),
                                 Formula::cond(psi, chi)),
                "20");
        }
        rule_26(i, j);
      }
    }
    report_.pool_size = fs.size();
    return std::move(report_);
  }

 private:
  bool valid(const Formula& f) { return engine_.denote(f, g_).is_everything(); }

  void check(const Formula& f, const char* what) {
    if (std::string_view(what) != "CEM") ++report_.axiom_checked;
    const SymbolicWorldSet s = engine_.denote(f, g_);
    if (s.is_everything()) return;
    report_.failures.push_back({print_formula(f), std::string(what) + " fails on " +
                                                      s.complement().describe()});
  }

  // Premise psi -> chi (i, j) valid under g: the conclusions for small
  // antecedents must be valid too; also the two-premise form.
  void rule_26(std::size_t i, std::size_t j) {
    const auto& fs = pool_.formulas;
    const auto& sz = pool_.sizes;
    const Formula& psi = fs[i];
    const Formula& chi = fs[j];
    if (valid(Formula::implies(psi, chi))) {
      for (std::size_t k = 0; k < fs.size() && sz[k] <= 3; ++k) {
        ++report_.rule_checked;
        const Formula c =
            Formula::implies(Formula::cond(fs[k], psi), Formula::cond(fs[k], chi));
        if (!valid(c)) report_.failures.push_back({print_formula(c), "rule 26 closure (n=1)"});
      }
    }
    for (std::size_t m = 0; m < fs.size() && sz[i] + sz[j] + sz[m] <= params_.max_size; ++m) {
      const Formula& psi2 = fs[m];
      if (!valid(Formula::implies(conj(psi, psi2), chi))) continue;
      for (std::size_t k = 0; k < fs.size() && sz[k] <= 2; ++k) {
        ++report_.rule_checked;
        const Formula c = Formula::implies(
            conj(Formula::cond(fs[k], psi), Formula::cond(fs[k], psi2)), Formula::cond(fs[k], chi));
        if (!valid(c)) report_.failures.push_back({print_formula(c), "rule 26 closure (n=2)"});
      }
    }
  }

  const Pool& pool_;
  const CemSweepParams& params_;
  const KAssignment& g_;
  KEngine engine_;
  CemSweepReport report_;
};

}  // namespace

CemSweepReport cem_sweep(const CemSweepParams& params) {
  if (params.max_size < 2) throw InputError("cem sweep needs max size at least 2");
  Pool pool;
  const auto by_size = enumerate_fragment(params.max_size - 1, params.max_vars, params.identity);
  for (std::size_t s = 1; s < by_size.size(); ++s)
    for (const Formula& f : by_size[s]) {
      pool.formulas.push_back(f);
      pool.sizes.push_back(s);
    }
  KAssignment g;
  for (std::size_t i = 0; i < params.max_vars; ++i) {
    pool.vars.push_back(fragment_variable(i));
    g[fragment_variable(i)] = -static_cast<std::int64_t>(i) - 1;
  }

  const std::size_t parts = std::max<std::size_t>(1, params.jobs);
  std::vector<CemSweepReport> partial(parts);
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t p = 0; p < parts; ++p)
    threads.emplace_back([&, p] {
      try {
        SweepWorker worker(pool, params, g);
        partial[p] = worker.run(p, parts);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);

  CemSweepReport out;
  out.pool_size = pool.formulas.size();
  for (auto& r : partial) {
    out.cem_checked += r.cem_checked;
    out.axiom_checked += r.axiom_checked;
    out.rule_checked += r.rule_checked;
    out.ray_splits += r.ray_splits;
    out.failures.insert(out.failures.end(), r.failures.begin(), r.failures.end());
  }
  return out;
}

}  // namespace condlog
