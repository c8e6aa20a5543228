#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "condlog/frame.hpp"
#include "condlog/semantics.hpp"

namespace condlog {

enum class Condition {
  // selection
  Success,
  WeakCentering,
  StrongCentering,
  LA,
  WLA,
  Uniformity,
  Uniqueness,
  RationalMonotonicity,
  // ordering
  Reflexivity,
  Transitivity,
  StronglyConnected,
  OrderWeakCentering,
  OrderStrongCentering,
  SLA,
  // domains
  GloballyConstant,
  LocallyNonDecreasing,
  LocallyNonIncreasing,
  LocallyConstant,
};

std::string_view condition_name(Condition c);
std::optional<Condition> parse_condition(std::string_view name);

inline constexpr Condition kSelectionConditions[] = {
    Condition::Success,    Condition::WeakCentering, Condition::StrongCentering,
    Condition::LA,         Condition::WLA,           Condition::Uniformity,
    Condition::Uniqueness, Condition::RationalMonotonicity};

inline constexpr Condition kOrderingConditions[] = {
    Condition::Reflexivity,        Condition::Transitivity,
    Condition::StronglyConnected,  Condition::OrderWeakCentering,
    Condition::OrderStrongCentering, Condition::SLA};

inline constexpr Condition kDomainConditions[] = {
    Condition::GloballyConstant, Condition::LocallyNonDecreasing,
    Condition::LocallyNonIncreasing, Condition::LocallyConstant};

/// A violating tuple. Only the fields the condition talks about are set.
struct Witness {
  Condition condition = Condition::Success;
  std::size_t w = 0;
  std::optional<WorldSet> p, q;  // propositions; q doubles as S for SLA
  std::optional<std::size_t> x, y, z;  // worlds
  std::optional<std::size_t> element;

  std::string describe(const Frame& frame) const;
};

struct FrameReport {
  std::map<Condition, bool> verdicts;
  std::map<Condition, Witness> witnesses;
  std::optional<bool> stalnakerian;
  std::optional<bool> weakly_stalnakerian;
  std::optional<bool> lewisian;

  bool holds(Condition c) const;
  void merge(const FrameReport& other);
};

/// Checks one selection condition at world w; row[P] = f(P, w).
std::optional<Witness> check_selection_condition(Condition c, std::size_t num_worlds,
                                                 std::size_t w, WorldSet access_w,
                                                 std::span<const WorldSet> row);

FrameReport check_selection_props(const Frame& frame);
FrameReport check_ordering_props(const Frame& frame);
FrameReport check_domain_props(const Frame& frame);

/// True iff the witness, re-evaluated against the condition's definition,
/// shows a violation.
bool replay_witness(const Frame& frame, const Witness& witness);

struct CorrespondenceResult {
  bool instance_valid = false;
  bool properties_hold = false;
  bool agree = false;
  std::optional<std::string> failed_instance;
};

/// The unary-predicate instance family of axioms 19-24 used to read off the
/// frame conditions, cheapest first.
std::vector<std::pair<std::string, Formula>> correspondence_instances();

CorrespondenceResult qc2_correspondence_check(const Frame& frame,
                                              const FrameValidOptions& options = {});

}  // namespace condlog
