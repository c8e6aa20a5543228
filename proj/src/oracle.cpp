#include <random>

#include "condlog/corpus.hpp"
#include "condlog/kmodel.hpp"
#include "condlog/parser.hpp"
#include "condlog/semantics.hpp"

namespace condlog {

OracleReport oracle_agreement(const OracleParams& params) {
  std::mt19937_64 rng(params.seed);
  RandomFormulaParams gen;
  gen.max_size = params.max_size;
  gen.num_vars = params.num_vars;
  gen.equality = params.identity;
  std::map<std::size_t, Model> truncations;
  auto truncation = [&](std::size_t n) -> const Model& {
    auto it = truncations.find(n);
    if (it == truncations.end()) it = truncations.emplace(n, truncate_k(n)).first;
    return it->second;
  };

  OracleReport report;
  KEngine engine;
  for (std::size_t i = 0; i < params.count; ++i) {
    const Formula f = random_formula(rng, gen);
    ++report.formulas;
    const auto fv = free_variables(f);
    const std::vector<Variable> vars(fv.begin(), fv.end());
    const auto n = static_cast<std::size_t>(params.m) + metrics(f).size + 2;
    std::vector<std::int64_t> values(vars.size(), -1);
    while (true) {
      KAssignment g;
      for (std::size_t k = 0; k < vars.size(); ++k) g[vars[k]] = values[k];
      std::optional<SymbolicWorldSet> k_set;
      try {
        k_set = engine.denote(f, g);
      } catch (const KStabilizationError&) {
        ++report.diagnostics;
      }
      WorldSet window[3];
      for (std::size_t d = 0; d < 3; ++d)
        window[d] = denote(truncation(n + d), f, truncation_assignment(n + d, g));
      std::vector<KWorld> worlds{KWorld::origin()};
      for (std::int64_t k = -1; k >= -params.m; --k) worlds.push_back(KWorld::at(k));
      for (KWorld w : worlds) {
        ++report.checks;
        bool truth[3];
        for (std::size_t d = 0; d < 3; ++d)
          truth[d] = contains(window[d], truncation_world(n + d, w));
        if (truth[0] != truth[1] || truth[1] != truth[2]) ++report.unstable;
        if (k_set && k_set->contains(w) != truth[0]) {
          ++report.disagreements;
          if (report.examples.size() < 10) {
            std::string text = print_formula(f) + " at " + to_string(w);
            for (const auto& [v, value] : g)
              text += " " + variable_name(v) + "=" + std::to_string(value);
            text += k_set->contains(w) ? ": K true, K_n false" : ": K false, K_n true";
            report.examples.push_back(text);
          }
        }
      }
      std::size_t k = 0;
      while (k < values.size() && --values[k] < -params.m) values[k++] = -1;
      if (k == values.size()) break;
    }
  }
  return report;
}

}  // namespace condlog
