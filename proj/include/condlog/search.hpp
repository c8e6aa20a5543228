#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "condlog/frame.hpp"
#include "condlog/frame_props.hpp"

namespace condlog {

enum class AccessPolicy { Reflexive, All };

struct EnumerationParams {
  std::size_t min_worlds = 1;
  std::size_t max_worlds = 3;
  std::size_t min_domain = 1;
  std::size_t max_domain = 2;
  std::vector<Condition> required;
  AccessPolicy access = AccessPolicy::Reflexive;
  /// Enumerate every d(w) ⊆ D instead of d(w) = D.
  bool local_domains = false;
  /// Ceiling on candidate frames (before symmetry reduction) per size.
  std::uint64_t max_candidates = 50'000'000;
};

/// Condition names plus "weaklyStalnakerian" and "Stalnakerian".
std::vector<Condition> expand_property(std::string_view name);

struct EnumerationStats {
  std::uint64_t candidates = 0;  // frames built before the symmetry filter
  std::uint64_t yielded = 0;     // canonical frames passed to the visitor
};

/// Every selection frame within the bounds satisfying `required`, one per
/// isomorphism class (the lexicographically least encoding under world and
/// domain permutations). The visitor returns false to stop early.
EnumerationStats enumerate_frames(const EnumerationParams& params,
                                  const std::function<bool(const Frame&)>& visit);

struct SearchWitness {
  Model model;
  std::size_t world = 0;
  Assignment assignment;
};

struct SearchOutcome {
  bool found = false;
  std::optional<SearchWitness> witness;
  std::uint64_t structures = 0;       // frames or pointed frames examined
  std::uint64_t interpretations = 0;  // (structure, interpretation) points checked
  bool replayed = false;              // the witness re-evaluated as claimed
};

enum class DsMode {
  WeaklyStalnakerian,  // Success, Weak Centering, Uniformity, Uniqueness
  Strengthened,        // Success, WLA, Rational Monotonicity
  Control,             // Success, Weak Centering, Uniqueness
};

std::vector<Condition> ds_conditions(DsMode mode);

/// Searches for a point satisfying DS. Truth of DS at w depends only on
/// R(w), f(·, w), d(w) and I, so the sweep runs over pointed frames
/// (designated world 0) and every interpretation of F; any witness is
/// completed to a frame meeting the conditions everywhere and replayed.
SearchOutcome ds_sweep(const EnumerationParams& params);

/// Prefix {dia A_i}_{i<n} ∪ {(A_i | A_{i+1}) > ~A_i}_{i<n-1} over 0-ary A_i.
std::vector<Formula> compactness_prefix(std::size_t n);

/// Backtracking search for a Stalnakerian model with at most n+1 worlds in
/// which the whole prefix holds at one world.
SearchOutcome compactness_witness(std::size_t n);

struct CorrespondenceSweep {
  std::uint64_t frames = 0;
  std::uint64_t agree = 0;
  std::uint64_t properties_hold = 0;
  std::vector<std::string> disagreements;
};

CorrespondenceSweep correspondence_sweep(const EnumerationParams& params,
                                         const FrameValidOptions& options = {});

}  // namespace condlog
