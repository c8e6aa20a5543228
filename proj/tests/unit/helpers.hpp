#pragma once

#include <random>
#include <string>

#include "condlog/frame.hpp"
#include "condlog/syntax.hpp"

namespace testing_support {

using namespace condlog;

inline Predicate pred(char letter, std::uint32_t arity) {
  return Predicate{static_cast<std::uint32_t>(letter - 'A'), arity};
}

inline Variable var(char letter) {
  static const std::string letters = "xyzuvw";
  return Variable{static_cast<std::uint32_t>(letters.find(letter))};
}

inline Frame blank_frame(std::size_t worlds, std::size_t domain) {
  Frame f;
  for (std::size_t w = 0; w < worlds; ++w) f.world_names.push_back(std::to_string(w + 1));
  for (std::size_t a = 0; a < domain; ++a) f.domain_names.push_back(std::string(1, char('a' + a)));
  f.access.assign(worlds, full_set(worlds));
  f.local.assign(worlds, full_set(domain));
  return f;
}

inline WorldSet random_subset(std::mt19937_64& rng, WorldSet of) {
  return rng() & of;
}

/// Any selection table within R(w): no conditions imposed.
inline Frame random_selection_frame(std::mt19937_64& rng, std::size_t worlds, std::size_t domain,
                                    bool local_domains = false) {
  Frame f = blank_frame(worlds, domain);
  for (std::size_t w = 0; w < worlds; ++w) {
    f.access[w] = random_subset(rng, full_set(worlds)) | bit(w);
    if (local_domains) f.local[w] = random_subset(rng, full_set(domain));
  }
  f.table.assign((std::size_t{1} << worlds) * worlds, 0);
  for (WorldSet p = 0; p < (WorldSet{1} << worlds); ++p)
    for (std::size_t w = 0; w < worlds; ++w) f.select_ref(p, w) = random_subset(rng, f.access[w]);
  return f;
}

/// f(P,w) = the first world of P ∩ R(w) in a random ranking with w first.
inline Frame random_stalnakerian_frame(std::mt19937_64& rng, std::size_t worlds,
                                       std::size_t domain) {
  Frame f = blank_frame(worlds, domain);
  f.table.assign((std::size_t{1} << worlds) * worlds, 0);
  for (std::size_t w = 0; w < worlds; ++w) {
    f.access[w] = random_subset(rng, full_set(worlds)) | bit(w);
    std::vector<std::size_t> rank;
    for (std::size_t v = 0; v < worlds; ++v)
      if (v != w) rank.push_back(v);
    std::shuffle(rank.begin(), rank.end(), rng);
    rank.insert(rank.begin(), w);
    for (WorldSet p = 0; p < (WorldSet{1} << worlds); ++p)
      for (std::size_t v : rank)
        if (contains(p & f.access[w], v)) {
          f.select_ref(p, w) = bit(v);
          break;
        }
  }
  return f;
}

/// A total preorder per world over R(w), w strictly first.
inline Frame random_ordering_frame(std::mt19937_64& rng, std::size_t worlds, std::size_t domain,
                                   bool ties) {
  Frame f = blank_frame(worlds, domain);
  f.kind = FrameKind::Ordering;
  f.below.assign(worlds, std::vector<WorldSet>(worlds, 0));
  for (std::size_t w = 0; w < worlds; ++w) {
    f.access[w] = random_subset(rng, full_set(worlds)) | bit(w);
    std::vector<std::size_t> level(worlds, 0);
    for (std::size_t v = 0; v < worlds; ++v)
      level[v] = v == w ? 0 : 1 + (ties ? rng() % worlds : rng() % 1000);
    for (std::size_t x = 0; x < worlds; ++x)
      for (std::size_t y = 0; y < worlds; ++y)
        if (contains(f.access[w], x) && contains(f.access[w], y) && level[y] <= level[x])
          f.below[w][x] |= bit(y);
  }
  return f;
}

inline Interpretation random_interpretation(std::mt19937_64& rng, const Frame& frame,
                                            const std::vector<Predicate>& preds) {
  Interpretation interp;
  for (const Predicate& p : preds) {
    auto& rows = interp.ext[p];
    rows.resize(tuple_count(frame.domain_size(), p.arity));
    for (auto& r : rows) r = random_subset(rng, frame.all_worlds());
  }
  return interp;
}

}  // namespace testing_support
