#pragma once

#include <optional>
#include <span>
#include <vector>

#include "condlog/errors.hpp"
#include "condlog/frame.hpp"
#include "condlog/syntax.hpp"

namespace condlog {

/// [φ]^g over all worlds of the model. E is read through d(w) and = through
/// the assignment, whatever the model kind.
WorldSet denote(const Model& model, const Formula& f, const Assignment& g);

bool eval(const Model& model, std::size_t world, const Assignment& g, const Formula& f);

struct Counterexample {
  std::size_t formula_index = 0;
  std::size_t world = 0;
  Assignment assignment;
};

/// Every world and every assignment of the free variables of `gamma`.
std::optional<Counterexample> model_valid(const Model& model, std::span<const Formula> gamma);

struct FrameValidOptions {
  /// Ceiling on interpretation bits enumerated per assignment.
  std::size_t max_bits = 24;
  std::size_t max_worlds = 5;
  std::size_t max_domain = 3;
  std::size_t max_arity = 2;
};

struct CounterModel {
  Interpretation interp;
  std::size_t world = 0;
  Assignment assignment;
};

/// Enumerates interpretations of the predicates of `f` (only the tuples `f`
/// can reach under each assignment) and all assignments of its free variables.
std::optional<CounterModel> frame_valid(const Frame& frame, const Formula& f,
                                        const FrameValidOptions& options = {});

/// f(P,w) := min_{<=_w}(P). Rejects non-Stalnakerian orders with the failed
/// condition and its witness.
Model ordering_to_selection(const Model& model);

/// <=_w := {(v,u) in R(w) x R(w) : v in f({v,u},w)}. Rejects
/// non-Stalnakerian tables.
Model selection_to_ordering(const Model& model);

}  // namespace condlog
