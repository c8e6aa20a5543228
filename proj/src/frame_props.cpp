#include "condlog/frame_props.hpp"

#include <array>
#include <sstream>

#include "condlog/parser.hpp"

namespace condlog {

namespace {

struct NamedCondition {
  Condition c;
  std::string_view name;
};

constexpr std::array<NamedCondition, 18> kNames{{
    {Condition::Success, "Success"},
    {Condition::WeakCentering, "WeakCentering"},
    {Condition::StrongCentering, "StrongCentering"},
    {Condition::LA, "LA"},
    {Condition::WLA, "WLA"},
    {Condition::Uniformity, "Uniformity"},
    {Condition::Uniqueness, "Uniqueness"},
    {Condition::RationalMonotonicity, "RationalMonotonicity"},
    {Condition::Reflexivity, "Reflexivity"},
    {Condition::Transitivity, "Transitivity"},
    {Condition::StronglyConnected, "StronglyConnected"},
    {Condition::OrderWeakCentering, "OrderWeakCentering"},
    {Condition::OrderStrongCentering, "OrderStrongCentering"},
    {Condition::SLA, "SLA"},
    {Condition::GloballyConstant, "GloballyConstant"},
    {Condition::LocallyNonDecreasing, "LocallyNonDecreasing"},
    {Condition::LocallyNonIncreasing, "LocallyNonIncreasing"},
    {Condition::LocallyConstant, "LocallyConstant"},
}};

constexpr std::size_t kMaxPairwiseWorlds = 12;

bool pairwise(Condition c) {
  return c == Condition::WLA || c == Condition::Uniformity ||
         c == Condition::RationalMonotonicity;
}

std::string set_text(const Frame& frame, WorldSet s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < frame.num_worlds(); ++i)
    if (contains(s, i)) {
      if (!first) out += ",";
      out += frame.world_names[i];
      first = false;
    }
  return out + "}";
}

// The violated instance of a selection condition, as a predicate on f(·, w).
template <class F>
bool selection_violated(Condition c, std::size_t w, WorldSet access_w, WorldSet p,
                        WorldSet q, F&& f) {
  const WorldSet fp = f(p);
  switch (c) {
    case Condition::Success: return !subset_of(fp, p);
    case Condition::WeakCentering: return contains(p, w) && !contains(fp, w);
    case Condition::StrongCentering: return contains(p, w) && fp != bit(w);
    case Condition::LA: return fp == 0 && (p & access_w) != 0;
    case Condition::Uniqueness: return cardinality(fp) > 1;
    case Condition::WLA: return fp == 0 && (p & f(q)) != 0;
    case Condition::Uniformity: {
      const WorldSet fq = f(q);
      return subset_of(fp, q) && subset_of(fq, p) && fp != fq;
    }
    case Condition::RationalMonotonicity: {
      const WorldSet fq = f(q);
      return subset_of(p, q) && (fq & p) != 0 && fp != (fq & p);
    }
    default: return false;
  }
}

}  // namespace

std::string_view condition_name(Condition c) {
  for (const auto& n : kNames)
    if (n.c == c) return n.name;
  return "?";
}

std::optional<Condition> parse_condition(std::string_view name) {
  for (const auto& n : kNames)
    if (n.name == name) return n.c;
  return std::nullopt;
}

std::string Witness::describe(const Frame& frame) const {
  std::ostringstream os;
  os << condition_name(condition) << " fails at w=" << frame.world_names[w];
  if (p) os << (condition == Condition::SLA ? " S=" : " P=") << set_text(frame, *p);
  if (q) os << " Q=" << set_text(frame, *q);
  if (x) os << " x=" << frame.world_names[*x];
  if (y) os << " y=" << frame.world_names[*y];
  if (z) os << " z=" << frame.world_names[*z];
  if (element) os << " a=" << frame.domain_names[*element];
  if (p && frame.kind == FrameKind::Selection && !frame.table.empty())
    os << " f(P,w)=" << set_text(frame, frame.select(*p, w));
  return os.str();
}

bool FrameReport::holds(Condition c) const {
  auto it = verdicts.find(c);
  return it != verdicts.end() && it->second;
}

void FrameReport::merge(const FrameReport& other) {
  for (const auto& [c, v] : other.verdicts) verdicts[c] = v;
  for (const auto& [c, v] : other.witnesses) witnesses.insert_or_assign(c, v);
  if (other.stalnakerian) stalnakerian = other.stalnakerian;
  if (other.weakly_stalnakerian) weakly_stalnakerian = other.weakly_stalnakerian;
  if (other.lewisian) lewisian = other.lewisian;
}

std::optional<Witness> check_selection_condition(Condition c, std::size_t num_worlds,
                                                 std::size_t w, WorldSet access_w,
                                                 std::span<const WorldSet> row) {
  if (pairwise(c) && num_worlds > kMaxPairwiseWorlds)
    throw ResourceLimit(std::string(condition_name(c)) + " check is limited to |W| <= " +
                        std::to_string(kMaxPairwiseWorlds));
  const WorldSet subsets = WorldSet{1} << num_worlds;
  auto f = [&](WorldSet s) { return row[s]; };
  for (WorldSet p = 0; p < subsets; ++p) {
    if (!pairwise(c)) {
      if (selection_violated(c, w, access_w, p, 0, f)) return Witness{c, w, p, {}, {}, {}, {}, {}};
      continue;
    }
    for (WorldSet q = 0; q < subsets; ++q)
      if (selection_violated(c, w, access_w, p, q, f)) return Witness{c, w, p, q, {}, {}, {}, {}};
  }
  return std::nullopt;
}

FrameReport check_selection_props(const Frame& frame) {
  if (frame.kind != FrameKind::Selection)
    throw InputError("selection properties need a selection frame");
  const std::size_t n = frame.num_worlds();
  if (n > kMaxSelectionWorlds) throw ResourceLimit("selection frames are limited to 16 worlds");
  FrameReport report;
  std::vector<WorldSet> row(std::size_t{1} << n);
  for (Condition c : kSelectionConditions) report.verdicts[c] = true;
  for (std::size_t w = 0; w < n; ++w) {
    for (WorldSet p = 0; p < row.size(); ++p) row[p] = frame.select(p, w);
    for (Condition c : kSelectionConditions) {
      if (!report.verdicts[c]) continue;
      if (auto wit = check_selection_condition(c, n, w, frame.access[w], row)) {
        report.verdicts[c] = false;
        report.witnesses.insert_or_assign(c, *wit);
      }
    }
  }
  auto h = [&](Condition c) { return report.verdicts[c]; };
  report.weakly_stalnakerian = h(Condition::Success) && h(Condition::WeakCentering) &&
                               h(Condition::Uniformity) && h(Condition::Uniqueness);
  report.stalnakerian = *report.weakly_stalnakerian && h(Condition::LA);
  return report;
}

FrameReport check_ordering_props(const Frame& frame) {
  if (frame.kind == FrameKind::Selection)
    throw InputError("ordering properties need an ordering or quasi-selection frame");
  const std::size_t n = frame.num_worlds();
  FrameReport report;
  for (Condition c : kOrderingConditions) report.verdicts[c] = true;
  auto fail = [&](Witness wit) {
    if (!report.verdicts[wit.condition]) return;
    report.verdicts[wit.condition] = false;
    report.witnesses.insert_or_assign(wit.condition, wit);
  };
  for (std::size_t w = 0; w < n; ++w) {
    const WorldSet rw = frame.access[w];
    auto le = [&](std::size_t a, std::size_t b) { return frame.precedes(w, a, b); };
    if (!contains(rw, w)) fail({Condition::Reflexivity, w});
    for (std::size_t x = 0; x < n; ++x) {
      if (!contains(rw, x)) continue;
      if (!le(w, x)) fail({Condition::OrderWeakCentering, w, {}, {}, x});
      if (le(x, w) && x != w) fail({Condition::OrderStrongCentering, w, {}, {}, x});
      for (std::size_t y = 0; y < n; ++y) {
        if (!contains(rw, y)) continue;
        if (!le(x, y) && !le(y, x)) fail({Condition::StronglyConnected, w, {}, {}, x, y});
        if (!le(x, y)) continue;
        for (std::size_t z = 0; z < n; ++z)
          if (contains(rw, z) && le(y, z) && !le(x, z))
            fail({Condition::Transitivity, w, {}, {}, x, y, z});
      }
    }
    // Largest S ⊆ R(w) in which every member has a distinct predecessor in S;
    // SLA holds at w iff it is empty.
    WorldSet s = rw;
    bool changed = true;
    while (changed) {
      changed = false;
      for (WorldSet rest = s; rest; rest &= rest - 1) {
        const auto x = static_cast<std::size_t>(std::countr_zero(rest));
        if ((frame.below[w][x] & s & ~bit(x)) == 0) {
          s &= ~bit(x);
          changed = true;
        }
      }
    }
    if (s != 0) fail({Condition::SLA, w, s});
  }
  auto h = [&](Condition c) { return report.verdicts[c]; };
  report.lewisian = h(Condition::Reflexivity) && h(Condition::Transitivity) &&
                    h(Condition::StronglyConnected) && h(Condition::OrderWeakCentering) &&
                    h(Condition::OrderStrongCentering);
  report.stalnakerian = *report.lewisian && h(Condition::SLA);
  return report;
}

FrameReport check_domain_props(const Frame& frame) {
  FrameReport report;
  for (Condition c : kDomainConditions) report.verdicts[c] = true;
  auto fail = [&](Witness wit) {
    if (!report.verdicts[wit.condition]) return;
    report.verdicts[wit.condition] = false;
    report.witnesses.insert_or_assign(wit.condition, wit);
  };
  const std::size_t n = frame.num_worlds();
  const DomainSet all = frame.all_elements();
  for (std::size_t w = 0; w < n; ++w) {
    if (frame.local[w] != all) {
      const auto a = static_cast<std::size_t>(std::countr_zero(all & ~frame.local[w]));
      fail({Condition::GloballyConstant, w, {}, {}, {}, {}, {}, a});
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!contains(frame.access[w], v)) continue;
      if (DomainSet lost = frame.local[w] & ~frame.local[v]) {
        const auto a = static_cast<std::size_t>(std::countr_zero(lost));
        fail({Condition::LocallyNonDecreasing, w, {}, {}, v, {}, {}, a});
        fail({Condition::LocallyConstant, w, {}, {}, v, {}, {}, a});
      }
      if (DomainSet gained = frame.local[v] & ~frame.local[w]) {
        const auto a = static_cast<std::size_t>(std::countr_zero(gained));
        fail({Condition::LocallyNonIncreasing, w, {}, {}, v, {}, {}, a});
        fail({Condition::LocallyConstant, w, {}, {}, v, {}, {}, a});
      }
    }
  }
  return report;
}

bool replay_witness(const Frame& frame, const Witness& wit) {
  const std::size_t w = wit.w;
  if (w >= frame.num_worlds()) return false;
  switch (wit.condition) {
    case Condition::Success:
    case Condition::WeakCentering:
    case Condition::StrongCentering:
    case Condition::LA:
    case Condition::Uniqueness:
    case Condition::WLA:
    case Condition::Uniformity:
    case Condition::RationalMonotonicity: {
      if (frame.kind != FrameKind::Selection || !wit.p) return false;
      auto f = [&](WorldSet s) { return frame.select(s, w); };
      return selection_violated(wit.condition, w, frame.access[w], *wit.p, wit.q.value_or(0), f);
    }
    case Condition::Reflexivity: return !contains(frame.access[w], w);
    case Condition::Transitivity:
      return wit.x && wit.y && wit.z && frame.precedes(w, *wit.x, *wit.y) &&
             frame.precedes(w, *wit.y, *wit.z) && !frame.precedes(w, *wit.x, *wit.z);
    case Condition::StronglyConnected:
      return wit.x && wit.y && contains(frame.access[w], *wit.x) &&
             contains(frame.access[w], *wit.y) && !frame.precedes(w, *wit.x, *wit.y) &&
             !frame.precedes(w, *wit.y, *wit.x);
    case Condition::OrderWeakCentering:
      return wit.x && contains(frame.access[w], *wit.x) && !frame.precedes(w, w, *wit.x);
    case Condition::OrderStrongCentering:
      return wit.x && *wit.x != w && frame.precedes(w, *wit.x, w);
    case Condition::SLA: {
      if (!wit.p) return false;
      const WorldSet s = *wit.p;
      if ((s & frame.access[w]) == 0) return false;
      for (WorldSet rest = s & frame.access[w]; rest; rest &= rest - 1) {
        const auto x = static_cast<std::size_t>(std::countr_zero(rest));
        if ((frame.below[w][x] & s & ~bit(x)) == 0) return false;
      }
      return true;
    }
    case Condition::GloballyConstant:
      return wit.element && !contains(frame.local[w], *wit.element);
    case Condition::LocallyNonDecreasing:
      return wit.x && wit.element && contains(frame.access[w], *wit.x) &&
             contains(frame.local[w], *wit.element) && !contains(frame.local[*wit.x], *wit.element);
    case Condition::LocallyNonIncreasing:
      return wit.x && wit.element && contains(frame.access[w], *wit.x) &&
             contains(frame.local[*wit.x], *wit.element) && !contains(frame.local[w], *wit.element);
    case Condition::LocallyConstant:
      return wit.x && wit.element && contains(frame.access[w], *wit.x) &&
             contains(frame.local[w], *wit.element) != contains(frame.local[*wit.x], *wit.element);
  }
  return false;
}

std::vector<std::pair<std::string, Formula>> correspondence_instances() {
  const std::pair<const char*, const char*> texts[] = {
      {"19", "A(x) > A(x)"},
      {"21", "(A(x) > B(x)) -> (A(x) -> B(x))"},
      {"22", "(A(x) > B(x)) | (A(x) > ~B(x))"},
      {"20", "((A(x) > B(x)) & (B(x) > A(x)) & (A(x) > C(x))) -> (B(x) > C(x))"},
      {"23", "(forall x. F(x)) -> F(y)"},
      {"24", "(forall x. (A(y) > B(x))) -> (A(y) > forall x. B(x))"},
  };
  std::vector<std::pair<std::string, Formula>> out;
  for (const auto& [id, text] : texts) out.emplace_back(id, parse_formula(text, Language::L));
  return out;
}

CorrespondenceResult qc2_correspondence_check(const Frame& frame,
                                              const FrameValidOptions& options) {
  static const auto instances = correspondence_instances();
  CorrespondenceResult result;
  result.instance_valid = true;
  for (const auto& [id, f] : instances) {
    if (frame_valid(frame, f, options)) {
      result.instance_valid = false;
      result.failed_instance = id;
      break;
    }
  }
  const FrameReport sel = check_selection_props(frame);
  const FrameReport dom = check_domain_props(frame);
  result.properties_hold = *sel.weakly_stalnakerian && dom.holds(Condition::GloballyConstant);
  result.agree = result.instance_valid == result.properties_hold;
  return result;
}

}  // namespace condlog
