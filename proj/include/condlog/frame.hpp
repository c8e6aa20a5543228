#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "condlog/syntax.hpp"

namespace condlog {

using WorldSet = std::uint64_t;
using DomainSet = std::uint64_t;

constexpr std::size_t kMaxWorlds = 64;
constexpr std::size_t kMaxDomain = 64;
/// Dense selection tables hold 2^|W| * |W| entries.
constexpr std::size_t kMaxSelectionWorlds = 16;

inline WorldSet bit(std::size_t i) { return WorldSet{1} << i; }
inline WorldSet full_set(std::size_t n) { return n >= 64 ? ~WorldSet{0} : bit(n) - 1; }
inline bool contains(WorldSet s, std::size_t i) { return (s >> i) & 1u; }
inline int cardinality(WorldSet s) { return std::popcount(s); }
inline bool subset_of(WorldSet a, WorldSet b) { return (a & ~b) == 0; }

enum class FrameKind { Selection, Ordering, QuasiSelection };

enum class SelectionDefault { Empty, Centering };

struct Frame {
  FrameKind kind = FrameKind::Selection;
  std::vector<std::string> world_names;
  std::vector<WorldSet> access;  // R(w)
  std::vector<std::string> domain_names;
  std::vector<DomainSet> local;  // d(w)

  // Selection frames: table[P * |W| + w] = f(P, w).
  std::vector<WorldSet> table;
  SelectionDefault default_rule = SelectionDefault::Empty;

  // Ordering and quasi-selection frames: below[w][x] = {y : y <=_w x}.
  std::vector<std::vector<WorldSet>> below;

  std::size_t num_worlds() const { return world_names.size(); }
  std::size_t domain_size() const { return domain_names.size(); }
  WorldSet all_worlds() const { return full_set(num_worlds()); }
  DomainSet all_elements() const { return full_set(domain_size()); }

  WorldSet select(WorldSet p, std::size_t w) const {
    return table[static_cast<std::size_t>(p) * num_worlds() + w];
  }
  WorldSet& select_ref(WorldSet p, std::size_t w) {
    return table[static_cast<std::size_t>(p) * num_worlds() + w];
  }
  bool precedes(std::size_t w, std::size_t y, std::size_t x) const {
    return contains(below[w][x], y);
  }
  /// min_{<=_w}(S) = {x in S ∩ R(w) : x <=_w y for all y in S ∩ R(w)}.
  WorldSet order_min(WorldSet s, std::size_t w) const;

  std::optional<std::size_t> world_index(std::string_view name) const;
  std::optional<std::size_t> element_index(std::string_view name) const;
};

/// Builds an empty selection table resolved by the default rule.
void fill_default_table(Frame& frame, SelectionDefault rule);

/// I(P, w) stored per tuple: ext[pred][tuple index] = worlds where the tuple
/// is in the extension. Tuple index is sum_i a_i * |D|^i. Predicates absent
/// from the map are empty everywhere.
struct Interpretation {
  std::map<Predicate, std::vector<WorldSet>> ext;

  WorldSet worlds_of(const Predicate& p, std::size_t tuple) const;
  void set(const Predicate& p, std::size_t tuple, std::size_t world, bool value,
           std::size_t domain_size);
};

std::size_t tuple_count(std::size_t domain_size, std::size_t arity);

struct Model {
  Frame frame;
  Interpretation interp;
};

/// Finite-support assignment of domain-element indices.
using Assignment = std::map<Variable, std::size_t>;

}  // namespace condlog
