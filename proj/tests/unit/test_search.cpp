#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "condlog/search.hpp"
#include "condlog/semantics.hpp"
#include "helpers.hpp"

using namespace condlog;

namespace {

using Key = std::vector<std::uint64_t>;

std::uint64_t relabel(std::uint64_t s, const std::vector<std::size_t>& perm) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (s >> i & 1) out |= std::uint64_t{1} << perm[i];
  return out;
}

// Least encoding over all renamings of worlds and elements.
Key class_key(const Frame& f) {
  const std::size_t n = f.num_worlds(), d = f.domain_size();
  std::vector<std::size_t> wp(n), dp(d);
  std::iota(wp.begin(), wp.end(), 0);
  Key best;
  do {
    std::iota(dp.begin(), dp.end(), 0);
    do {
      Key k(2 * n + (std::size_t{1} << n) * n);
      for (std::size_t w = 0; w < n; ++w) {
        k[wp[w]] = relabel(f.access[w], wp);
        k[n + wp[w]] = relabel(f.local[w], dp);
        for (WorldSet p = 0; p < (WorldSet{1} << n); ++p)
          k[2 * n + relabel(p, wp) * n + wp[w]] = relabel(f.select(p, w), wp);
      }
      if (best.empty() || k < best) best = k;
    } while (std::next_permutation(dp.begin(), dp.end()));
  } while (std::next_permutation(wp.begin(), wp.end()));
  return best;
}

bool weakly_stalnakerian(const Frame& f) {
  const std::size_t n = f.num_worlds();
  for (std::size_t w = 0; w < n; ++w)
    for (WorldSet p = 0; p < (WorldSet{1} << n); ++p) {
      const WorldSet fp = f.select(p, w);
      if ((fp & ~p) || cardinality(fp) > 1) return false;
      if (contains(p, w) && !contains(fp, w)) return false;
      for (WorldSet q = 0; q < (WorldSet{1} << n); ++q) {
        const WorldSet fq = f.select(q, w);
        if (subset_of(fp, q) && subset_of(fq, p) && fp != fq) return false;
      }
    }
  return true;
}

// Every frame within the bounds, by brute force over all tables.
std::set<Key> brute_force_classes(std::size_t n, std::size_t d, bool local_domains) {
  std::set<Key> out;
  const std::size_t subsets = std::size_t{1} << n;
  Frame f = testing_support::blank_frame(n, d);
  f.table.assign(subsets * n, 0);
  std::function<void(std::size_t)> fill_table;
  std::function<void(std::size_t)> fill_local = [&](std::size_t w) {
    if (w == n) return fill_table(0);
    const std::size_t options = local_domains ? std::size_t{1} << d : 1;
    for (std::size_t s = 0; s < options; ++s) {
      f.local[w] = local_domains ? static_cast<DomainSet>(s) : full_set(d);
      fill_local(w + 1);
    }
  };
  fill_table = [&](std::size_t cell) {
    if (cell == f.table.size()) {
      if (weakly_stalnakerian(f)) out.insert(class_key(f));
      return;
    }
    const std::size_t w = cell % n;
    for (WorldSet s = 0; s < subsets; ++s) {
      if (!subset_of(s, f.access[w])) continue;
      f.table[cell] = s;
      fill_table(cell + 1);
    }
  };
  std::function<void(std::size_t)> fill_access = [&](std::size_t w) {
    if (w == n) return fill_local(0);
    for (WorldSet s = 0; s < subsets; ++s) {
      f.access[w] = s;
      fill_access(w + 1);
    }
  };
  fill_access(0);
  return out;
}

void check_completeness(std::size_t n, std::size_t d, bool local_domains) {
  const std::set<Key> expected = brute_force_classes(n, d, local_domains);
  EnumerationParams p;
  p.min_worlds = p.max_worlds = n;
  p.min_domain = p.max_domain = d;
  p.access = AccessPolicy::All;
  p.local_domains = local_domains;
  p.required = expand_property("weaklyStalnakerian");
  std::set<Key> seen;
  const EnumerationStats stats = enumerate_frames(p, [&](const Frame& f) {
    CHECK(weakly_stalnakerian(f));
    CHECK(seen.insert(class_key(f)).second);
    return true;
  });
  CAPTURE(n);
  CAPTURE(d);
  CHECK(stats.yielded == seen.size());
  CHECK(seen == expected);
}

}  // namespace

TEST_CASE("enumeration yields one frame per isomorphism class") {
  check_completeness(1, 1, false);
  check_completeness(2, 1, false);
  check_completeness(1, 2, true);
  check_completeness(2, 1, true);
  check_completeness(2, 2, true);
}

TEST_CASE("enumeration with reflexive access and stopping early") {
  EnumerationParams p;
  p.max_worlds = 2;
  p.max_domain = 1;
  p.required = expand_property("Stalnakerian");
  std::uint64_t visited = 0;
  enumerate_frames(p, [&](const Frame& f) {
    for (std::size_t w = 0; w < f.num_worlds(); ++w) CHECK(contains(f.access[w], w));
    CHECK(check_selection_props(f).stalnakerian == true);
    return ++visited < 2;
  });
  CHECK(visited == 2);
}

TEST_CASE("DS has no small weakly Stalnakerian or strengthened model") {
  for (DsMode mode : {DsMode::WeaklyStalnakerian, DsMode::Strengthened}) {
    EnumerationParams p;
    p.max_worlds = 2;
    p.max_domain = 2;
    p.required = ds_conditions(mode);
    const SearchOutcome r = ds_sweep(p);
    CHECK_FALSE(r.found);
    CHECK(r.structures > 0);
    CHECK(r.interpretations > 0);
  }
}

TEST_CASE("dropping Uniformity lets DS hold") {
  EnumerationParams p;
  p.max_worlds = 3;
  p.max_domain = 2;
  p.required = ds_conditions(DsMode::Control);
  const SearchOutcome r = ds_sweep(p);
  REQUIRE(r.found);
  REQUIRE(r.witness.has_value());
  CHECK(r.replayed);
  const SearchWitness& w = *r.witness;
  CHECK(eval(w.model, w.world, w.assignment, build_ds()));
  const FrameReport props = check_selection_props(w.model.frame);
  for (Condition c : ds_conditions(DsMode::Control)) CHECK(props.holds(c));
  CHECK_FALSE(props.holds(Condition::Uniformity));
}

TEST_CASE("finite prefixes of the compactness set have models") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const SearchOutcome r = compactness_witness(n);
    REQUIRE(r.found);
    CHECK(r.replayed);
    const SearchWitness& w = *r.witness;
    CHECK(w.model.frame.num_worlds() <= n + 1);
    CHECK(check_selection_props(w.model.frame).stalnakerian == true);
    const auto prefix = compactness_prefix(n);
    CHECK(prefix.size() == 2 * n - 1);
    for (const Formula& f : prefix) CHECK(eval(w.model, w.world, w.assignment, f));
  }
}
