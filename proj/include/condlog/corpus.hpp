#pragma once

#include <random>
#include <vector>

#include "condlog/syntax.hpp"

namespace condlog {

struct RandomFormulaParams {
  std::size_t max_size = 9;
  std::size_t num_vars = 2;  // variables drawn from indices 0..num_vars-1
  std::vector<Predicate> predicates{predicate_f()};
  bool equality = false;
  bool existence = false;
  bool bottom = true;
  bool conditionals = true;
  bool quantifiers = true;
};

/// A formula of uniformly chosen size in [1, max_size], with every node
/// drawn uniformly from the admitted kinds.
Formula random_formula(std::mt19937_64& rng, const RandomFormulaParams& params);

/// All formulas of the F-fragment built from F(x_i), bot (and x_i = x_j
/// for i <= j when `equality`), closed under ~, ->, > and forall x_i, over
/// the variables x_0..x_{num_vars-1}. result[s] holds those of size s.
std::vector<std::vector<Formula>> enumerate_fragment(std::size_t max_size, std::size_t num_vars,
                                                     bool equality);

/// The variable that renders as x_i in the fragment enumeration (x, x1, x2, ...).
Variable fragment_variable(std::size_t i);

}  // namespace condlog
