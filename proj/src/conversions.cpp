#include "condlog/frame_props.hpp"
#include "condlog/semantics.hpp"

namespace condlog {

Model ordering_to_selection(const Model& model) {
  const Frame& src = model.frame;
  if (src.kind == FrameKind::Selection) throw InputError("expected an ordering model");
  const FrameReport report = check_ordering_props(src);
  if (!*report.stalnakerian) {
    for (Condition c : kOrderingConditions)
      if (!report.holds(c))
        throw InputError("ordering is not Stalnakerian: " + report.witnesses.at(c).describe(src));
  }
  const std::size_t n = src.num_worlds();
  if (n > kMaxSelectionWorlds) throw ResourceLimit("selection frames are limited to 16 worlds");
  Model out = model;
  Frame& f = out.frame;
  f.kind = FrameKind::Selection;
  f.below.clear();
  f.default_rule = SelectionDefault::Empty;
  f.table.assign((std::size_t{1} << n) * n, 0);
  for (WorldSet p = 0; p < (WorldSet{1} << n); ++p)
    for (std::size_t w = 0; w < n; ++w) f.select_ref(p, w) = src.order_min(p, w);
  return out;
}

Model selection_to_ordering(const Model& model) {
  const Frame& src = model.frame;
  if (src.kind != FrameKind::Selection) throw InputError("expected a selection model");
  const FrameReport report = check_selection_props(src);
  if (!*report.stalnakerian) {
    for (Condition c : {Condition::Success, Condition::WeakCentering, Condition::LA,
                        Condition::Uniformity, Condition::Uniqueness})
      if (!report.holds(c))
        throw InputError("selection table is not Stalnakerian: " +
                         report.witnesses.at(c).describe(src));
  }
  const std::size_t n = src.num_worlds();
  Model out = model;
  Frame& f = out.frame;
  f.kind = FrameKind::Ordering;
  f.table.clear();
  f.below.assign(n, std::vector<WorldSet>(n, 0));
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t u = 0; u < n; ++u) {
      if (!contains(src.access[w], u)) continue;
      for (std::size_t v = 0; v < n; ++v)
        if (contains(src.access[w], v) && contains(src.select(bit(v) | bit(u), w), v))
          f.below[w][u] |= bit(v);
    }
  return out;
}

}  // namespace condlog
