#include "condlog/search.hpp"

#include <algorithm>
#include <numeric>

#include "condlog/errors.hpp"
#include "condlog/parser.hpp"
#include "condlog/semantics.hpp"

namespace condlog {

namespace {

bool is_selection_condition(Condition c) {
  return std::find(std::begin(kSelectionConditions), std::end(kSelectionConditions), c) !=
         std::end(kSelectionConditions);
}

bool is_domain_condition(Condition c) {
  return std::find(std::begin(kDomainConditions), std::end(kDomainConditions), c) !=
         std::end(kDomainConditions);
}

bool required_has(const std::vector<Condition>& req, Condition c) {
  return std::find(req.begin(), req.end(), c) != req.end();
}

// The values f(P, w) may take given only the entry-wise conditions.
std::vector<WorldSet> entry_candidates(const std::vector<Condition>& req, std::size_t w,
                                       WorldSet access_w, WorldSet p) {
  std::vector<WorldSet> out;
  // Enumerate subsets of R(w) in increasing order.
  for (WorldSet s = 0;; s = (s - access_w) & access_w) {
    bool ok = true;
    if (required_has(req, Condition::Success)) ok = ok && subset_of(s, p);
    if (required_has(req, Condition::WeakCentering)) ok = ok && (!contains(p, w) || contains(s, w));
    if (required_has(req, Condition::StrongCentering)) ok = ok && (!contains(p, w) || s == bit(w));
    if (required_has(req, Condition::LA)) ok = ok && ((p & access_w) == 0 || s != 0);
    if (required_has(req, Condition::Uniqueness)) ok = ok && cardinality(s) <= 1;
    if (ok) out.push_back(s);
    if (s == access_w) break;
  }
  return out;
}

// Every row f(·, w) meeting the required selection conditions at w.
std::vector<std::vector<WorldSet>> candidate_rows(const std::vector<Condition>& req,
                                                  std::size_t n, std::size_t w, WorldSet access_w,
                                                  std::uint64_t ceiling) {
  const std::size_t props = std::size_t{1} << n;
  std::vector<std::vector<WorldSet>> choices(props);
  double total = 1;
  for (WorldSet p = 0; p < props; ++p) {
    choices[p] = entry_candidates(req, w, access_w, p);
    total *= static_cast<double>(choices[p].size());
  }
  if (total > static_cast<double>(ceiling))
    throw ResourceLimit("more than " + std::to_string(ceiling) + " candidate selection rows");
  std::vector<std::vector<WorldSet>> rows;
  if (total == 0) return rows;
  std::vector<std::size_t> idx(props, 0);
  std::vector<WorldSet> row(props);
  while (true) {
    for (std::size_t p = 0; p < props; ++p) row[p] = choices[p][idx[p]];
    bool ok = true;
    for (Condition c : req)
      if (is_selection_condition(c) && check_selection_condition(c, n, w, access_w, row)) {
        ok = false;
        break;
      }
    if (ok) rows.push_back(row);
    std::size_t k = 0;
    while (k < props && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == props) break;
  }
  return rows;
}

std::vector<WorldSet> access_options(AccessPolicy policy, std::size_t n, std::size_t w) {
  std::vector<WorldSet> out;
  for (WorldSet s = 0; s < (WorldSet{1} << n); ++s)
    if (policy == AccessPolicy::All || contains(s, w)) out.push_back(s);
  return out;
}

Frame blank_frame(std::size_t n, std::size_t dsize) {
  Frame f;
  f.kind = FrameKind::Selection;
  for (std::size_t i = 0; i < n; ++i) f.world_names.push_back(std::to_string(i + 1));
  for (std::size_t a = 0; a < dsize; ++a)
    f.domain_names.push_back(std::string(1, static_cast<char>('a' + a)));
  f.access.assign(n, 0);
  f.local.assign(n, f.all_elements());
  f.default_rule = SelectionDefault::Empty;
  f.table.assign((std::size_t{1} << n) * n, 0);
  return f;
}

WorldSet permute_set(WorldSet s, const std::vector<std::size_t>& perm) {
  WorldSet out = 0;
  for (WorldSet rest = s; rest; rest &= rest - 1)
    out |= bit(perm[static_cast<std::size_t>(std::countr_zero(rest))]);
  return out;
}

// Symmetry filter over world and domain permutations.
class Canonicaliser {
 public:
  Canonicaliser(std::size_t n, std::size_t dsize) : n_(n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      std::vector<WorldSet> table(std::size_t{1} << n);
      std::vector<std::size_t> inverse(n);
      for (std::size_t i = 0; i < n; ++i) inverse[p[i]] = i;
      for (WorldSet s = 0; s < table.size(); ++s) table[s] = permute_set(s, p);
      world_perms_.push_back({p, inverse, std::move(table)});
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::size_t> q(dsize);
    std::iota(q.begin(), q.end(), 0);
    do {
      std::vector<DomainSet> table(std::size_t{1} << dsize);
      for (DomainSet s = 0; s < table.size(); ++s) table[s] = permute_set(s, q);
      domain_perms_.push_back(std::move(table));
    } while (std::next_permutation(q.begin(), q.end()));
  }

  bool is_canonical(const Frame& f) const {
    const std::vector<std::uint64_t> base = encode(f, world_perms_.front(), domain_perms_.front());
    for (const auto& wp : world_perms_)
      for (const auto& dp : domain_perms_)
        if (encode(f, wp, dp) < base) return false;
    return true;
  }

 private:
  struct WorldPerm {
    std::vector<std::size_t> forward, inverse;
    std::vector<WorldSet> sets;
  };

  std::vector<std::uint64_t> encode(const Frame& f, const WorldPerm& wp,
                                    const std::vector<DomainSet>& dp) const {
    std::vector<std::uint64_t> out;
    const std::size_t props = std::size_t{1} << n_;
    out.reserve(n_ * (props + 2));
    for (std::size_t v = 0; v < n_; ++v) {
      const std::size_t w = wp.inverse[v];
      out.push_back(wp.sets[f.access[w]]);
      out.push_back(dp[f.local[w]]);
      for (WorldSet p2 = 0; p2 < props; ++p2) {
        // p2 = π(P), so P = π⁻¹(p2).
        out.push_back(wp.sets[f.select(permute_set(p2, wp.inverse), w)]);
      }
    }
    return out;
  }

  std::size_t n_;
  std::vector<WorldPerm> world_perms_;
  std::vector<std::vector<DomainSet>> domain_perms_;
};

// The centred row f(P, w) = P ∩ {w}, which meets every selection condition
// when R(w) = {w}.
void centre_world(Frame& f, std::size_t w) {
  f.access[w] = bit(w);
  for (WorldSet p = 0; p < (WorldSet{1} << f.num_worlds()); ++p)
    f.select_ref(p, w) = p & bit(w);
}

}  // namespace

std::vector<Condition> expand_property(std::string_view name) {
  if (name == "weaklyStalnakerian")
    return {Condition::Success, Condition::WeakCentering, Condition::Uniformity,
            Condition::Uniqueness};
  if (name == "Stalnakerian")
    return {Condition::Success, Condition::WeakCentering, Condition::LA, Condition::Uniformity,
            Condition::Uniqueness};
  if (auto c = parse_condition(name)) return {*c};
  throw InputError("unknown frame property '" + std::string(name) + "'");
}

EnumerationStats enumerate_frames(const EnumerationParams& params,
                                  const std::function<bool(const Frame&)>& visit) {
  for (Condition c : params.required)
    if (!is_selection_condition(c) && !is_domain_condition(c))
      throw InputError("enumeration takes selection or domain conditions, not " +
                       std::string(condition_name(c)));
  if (params.max_worlds > 4 || params.max_domain > 3)
    throw ResourceLimit("frame enumeration is limited to 4 worlds and 3 domain elements");
  EnumerationStats stats;
  const bool domain_filter = std::any_of(params.required.begin(), params.required.end(),
                                         [](Condition c) { return is_domain_condition(c); });
  for (std::size_t n = std::max<std::size_t>(1, params.min_worlds); n <= params.max_worlds; ++n) {
    // Rows per world for each choice of R(w).
    std::vector<std::vector<std::pair<WorldSet, std::vector<std::vector<WorldSet>>>>> per_world(n);
    for (std::size_t w = 0; w < n; ++w)
      for (WorldSet r : access_options(params.access, n, w))
        per_world[w].emplace_back(
            r, candidate_rows(params.required, n, w, r, params.max_candidates));
    for (std::size_t dsize = std::max<std::size_t>(1, params.min_domain);
         dsize <= params.max_domain; ++dsize) {
      const std::size_t dchoices = params.local_domains ? (std::size_t{1} << dsize) : 1;
      double total = 1;
      for (std::size_t w = 0; w < n; ++w) {
        double sum = 0;
        for (const auto& [r, rows] : per_world[w]) sum += static_cast<double>(rows.size());
        total *= sum * static_cast<double>(dchoices);
      }
      if (total > static_cast<double>(params.max_candidates))
        throw ResourceLimit("more than " + std::to_string(params.max_candidates) +
                            " candidate frames with " + std::to_string(n) + " worlds");
      const Canonicaliser canon(n, dsize);
      Frame f = blank_frame(n, dsize);
      // Odometer over (R option, row, local domain) per world.
      std::vector<std::size_t> ri(n, 0), rowi(n, 0), di(n, 0);
      auto empty_world = [&](std::size_t w) { return per_world[w][ri[w]].second.empty(); };
      auto advance = [&]() {
        for (std::size_t w = 0; w < n; ++w) {
          if (++di[w] < dchoices) return true;
          di[w] = 0;
          if (++rowi[w] < per_world[w][ri[w]].second.size()) return true;
          rowi[w] = 0;
          if (++ri[w] < per_world[w].size()) return true;
          ri[w] = 0;
        }
        return false;
      };
      bool more = true;
      while (more) {
        bool skip = false;
        for (std::size_t w = 0; w < n && !skip; ++w) skip = empty_world(w);
        if (!skip) {
          for (std::size_t w = 0; w < n; ++w) {
            const auto& [r, rows] = per_world[w][ri[w]];
            f.access[w] = r;
            const auto& row = rows[rowi[w]];
            for (WorldSet p = 0; p < row.size(); ++p) f.select_ref(p, w) = row[p];
            f.local[w] = params.local_domains ? static_cast<DomainSet>(di[w]) : f.all_elements();
          }
          ++stats.candidates;
          bool ok = true;
          if (domain_filter) {
            const FrameReport dr = check_domain_props(f);
            for (Condition c : params.required)
              if (is_domain_condition(c) && !dr.holds(c)) ok = false;
          }
          if (ok && canon.is_canonical(f)) {
            ++stats.yielded;
            if (!visit(f)) return stats;
          }
        }
        more = advance();
      }
    }
  }
  return stats;
}

std::vector<Condition> ds_conditions(DsMode mode) {
  switch (mode) {
    case DsMode::WeaklyStalnakerian: return expand_property("weaklyStalnakerian");
    case DsMode::Strengthened:
      return {Condition::Success, Condition::WLA, Condition::RationalMonotonicity};
    case DsMode::Control:
      return {Condition::Success, Condition::WeakCentering, Condition::Uniqueness};
  }
  return {};
}

SearchOutcome ds_sweep(const EnumerationParams& params) {
  for (Condition c : params.required)
    if (!is_selection_condition(c))
      throw InputError("the DS sweep takes selection conditions only");
  if (params.max_worlds > 4 || params.max_domain > 3)
    throw ResourceLimit("the DS sweep is limited to 4 worlds and 3 domain elements");
  const Formula ds = build_ds();
  const Predicate pf = predicate_f();
  SearchOutcome out;
  for (std::size_t n = std::max<std::size_t>(1, params.min_worlds); n <= params.max_worlds; ++n) {
    for (WorldSet r0 : access_options(params.access, n, 0)) {
      const auto rows = candidate_rows(params.required, n, 0, r0, params.max_candidates);
      for (std::size_t dsize = std::max<std::size_t>(1, params.min_domain);
           dsize <= params.max_domain; ++dsize) {
        Model m;
        m.frame = blank_frame(n, dsize);
        for (std::size_t v = 1; v < n; ++v) centre_world(m.frame, v);
        m.frame.access[0] = r0;
        m.interp.ext[pf].assign(dsize, 0);
        const std::size_t bits = n * dsize;
        for (const auto& row : rows) {
          ++out.structures;
          for (WorldSet p = 0; p < row.size(); ++p) m.frame.select_ref(p, 0) = row[p];
          for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
            ++out.interpretations;
            for (std::size_t a = 0; a < dsize; ++a)
              m.interp.ext[pf][a] = (code >> (a * n)) & full_set(n);
            if (!eval(m, 0, {}, ds)) continue;
            out.found = true;
            out.witness = SearchWitness{m, 0, {}};
            const FrameReport report = check_selection_props(m.frame);
            out.replayed = eval(m, 0, {}, ds) &&
                           std::all_of(params.required.begin(), params.required.end(),
                                       [&](Condition c) { return report.holds(c); });
            return out;
          }
        }
      }
    }
  }
  return out;
}

std::vector<Formula> compactness_prefix(std::size_t n) {
  auto a = [](std::size_t i) {
    return Formula::atom(Predicate{static_cast<std::uint32_t>(26 * i), 0}, {});
  };
  std::vector<Formula> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(dia(a(i)));
  for (std::size_t i = 0; i + 1 < n; ++i)
    out.push_back(Formula::cond(disj(a(i), a(i + 1)), Formula::negation(a(i))));
  return out;
}

SearchOutcome compactness_witness(std::size_t n) {
  if (n == 0) throw InputError("the compactness family starts at n = 1");
  if (n + 1 > kMaxSelectionWorlds) throw ResourceLimit("compactness search is limited to n <= 15");
  const std::vector<Formula> prefix = compactness_prefix(n);
  // Formulas that mention only A_0..A_i, grouped by i.
  std::vector<std::vector<Formula>> due(n);
  for (std::size_t i = 0; i < n; ++i) due[i].push_back(prefix[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) due[i + 1].push_back(prefix[n + i]);

  SearchOutcome out;
  for (std::size_t m = 1; m <= n + 1; ++m) {
    // Every world sees every world; <=_v puts v first, then the rest by index.
    Model ordering;
    Frame& f = ordering.frame;
    f = blank_frame(m, 1);
    f.kind = FrameKind::Ordering;
    f.table.clear();
    f.below.assign(m, std::vector<WorldSet>(m, 0));
    for (std::size_t v = 0; v < m; ++v) {
      f.access[v] = f.all_worlds();
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
          const bool le = x == v || (y != v && x <= y);
          if (le) f.below[v][y] |= bit(x);
        }
    }
    Model model = ordering_to_selection(ordering);
    ++out.structures;
    std::function<bool(std::size_t)> extend = [&](std::size_t i) {
      if (i == n) return true;
      const Predicate ai{static_cast<std::uint32_t>(26 * i), 0};
      for (WorldSet mask = 0; mask < (WorldSet{1} << m); ++mask) {
        ++out.interpretations;
        model.interp.ext[ai] = {mask};
        bool ok = true;
        for (const Formula& g : due[i]) ok = ok && eval(model, 0, {}, g);
        if (ok && extend(i + 1)) return true;
      }
      model.interp.ext.erase(ai);
      return false;
    };
    if (extend(0)) {
      out.found = true;
      const FrameReport report = check_selection_props(model.frame);
      bool all_true = true;
      for (const Formula& g : prefix) all_true = all_true && eval(model, 0, {}, g);
      out.replayed = *report.stalnakerian && all_true;
      out.witness = SearchWitness{std::move(model), 0, {}};
      return out;
    }
  }
  return out;
}

CorrespondenceSweep correspondence_sweep(const EnumerationParams& params,
                                         const FrameValidOptions& options) {
  CorrespondenceSweep out;
  enumerate_frames(params, [&](const Frame& f) {
    ++out.frames;
    const CorrespondenceResult r = qc2_correspondence_check(f, options);
    if (r.properties_hold) ++out.properties_hold;
    if (r.agree) {
      ++out.agree;
    } else if (out.disagreements.size() < 20) {
      std::string text = "frame with " + std::to_string(f.num_worlds()) + " worlds: instances " +
                         (r.instance_valid ? "valid" : "invalid") + ", properties " +
                         (r.properties_hold ? "hold" : "fail");
      out.disagreements.push_back(text);
    }
    return true;
  });
  return out;
}

}  // namespace condlog
