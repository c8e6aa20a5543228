#include "condlog/frame.hpp"

namespace condlog {

WorldSet Frame::order_min(WorldSet s, std::size_t w) const {
  const WorldSet candidates = s & access[w];
  WorldSet out = 0;
  for (WorldSet rest = candidates; rest; rest &= rest - 1) {
    const auto x = static_cast<std::size_t>(std::countr_zero(rest));
    bool minimal = true;
    for (WorldSet ys = candidates; ys && minimal; ys &= ys - 1) {
      const auto y = static_cast<std::size_t>(std::countr_zero(ys));
      minimal = precedes(w, x, y);
    }
    if (minimal) out |= bit(x);
  }
  return out;
}

std::optional<std::size_t> Frame::world_index(std::string_view name) const {
  for (std::size_t i = 0; i < world_names.size(); ++i)
    if (world_names[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Frame::element_index(std::string_view name) const {
  for (std::size_t i = 0; i < domain_names.size(); ++i)
    if (domain_names[i] == name) return i;
  return std::nullopt;
}

void fill_default_table(Frame& frame, SelectionDefault rule) {
  const std::size_t n = frame.num_worlds();
  frame.default_rule = rule;
  frame.table.assign((std::size_t{1} << n) * n, 0);
  if (rule == SelectionDefault::Empty) return;
  for (WorldSet p = 0; p < (WorldSet{1} << n); ++p)
    for (std::size_t w = 0; w < n; ++w)
      if (contains(p, w)) frame.select_ref(p, w) = bit(w);
}

WorldSet Interpretation::worlds_of(const Predicate& p, std::size_t tuple) const {
  auto it = ext.find(p);
  if (it == ext.end() || tuple >= it->second.size()) return 0;
  return it->second[tuple];
}

void Interpretation::set(const Predicate& p, std::size_t tuple, std::size_t world, bool value,
                         std::size_t domain_size) {
  auto& row = ext[p];
  if (row.empty()) row.assign(tuple_count(domain_size, p.arity), 0);
  if (value)
    row[tuple] |= bit(world);
  else
    row[tuple] &= ~bit(world);
}

std::size_t tuple_count(std::size_t domain_size, std::size_t arity) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) n *= domain_size;
  return n;
}

}  // namespace condlog
