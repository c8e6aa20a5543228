#include <doctest.h>

#include "condlog/corpus.hpp"
#include "condlog/errors.hpp"
#include "condlog/io.hpp"
#include "condlog/parser.hpp"
#include "condlog/semantics.hpp"
#include "helpers.hpp"

using namespace condlog;
using testing_support::pred;
using testing_support::var;

namespace {

// World-by-world reading of the truth clauses, kept apart from the
// set-at-a-time evaluator in the library.
bool naive(const Model& m, std::size_t w, Assignment g, const Formula& f) {
  const Frame& fr = m.frame;
  auto extension = [&](const Formula& sub, const Assignment& h) {
    WorldSet s = 0;
    for (std::size_t v = 0; v < fr.num_worlds(); ++v)
      if (naive(m, v, h, sub)) s |= bit(v);
    return s;
  };
  switch (f.kind()) {
    case Kind::Bottom: return false;
    case Kind::Atom: {
      std::size_t tuple = 0, scale = 1;
      for (Variable v : f.vars()) {
        tuple += g.at(v) * scale;
        scale *= fr.domain_size();
      }
      auto it = m.interp.ext.find(f.predicate());
      return it != m.interp.ext.end() && contains(it->second[tuple], w);
    }
    case Kind::Equals: return g.at(f.vars()[0]) == g.at(f.vars()[1]);
    case Kind::Existence: return contains(fr.local[w], g.at(f.var()));
    case Kind::Not: return !naive(m, w, g, f.sub());
    case Kind::Implies: return !naive(m, w, g, f.left()) || naive(m, w, g, f.right());
    case Kind::Forall:
      for (std::size_t a = 0; a < fr.domain_size(); ++a) {
        if (!contains(fr.local[w], a)) continue;
        g[f.var()] = a;
        if (!naive(m, w, g, f.body())) return false;
      }
      return true;
    case Kind::Cond: {
      const WorldSet a = extension(f.left(), g);
      const WorldSet b = extension(f.right(), g);
      if (fr.kind == FrameKind::Selection) return subset_of(fr.select(a, w), b);
      // Lewis: no accessible antecedent world, or one whose antecedent
      // worlds at least as close are all consequent worlds.
      bool any = false;
      for (std::size_t x = 0; x < fr.num_worlds(); ++x) {
        if (!contains(a & fr.access[w], x)) continue;
        any = true;
        bool ok = true;
        for (std::size_t y = 0; y < fr.num_worlds(); ++y)
          if (contains(a & fr.access[w], y) && fr.precedes(w, y, x) && !contains(b, y)) ok = false;
        if (ok) return true;
      }
      return !any;
    }
  }
  return false;
}

const std::vector<Predicate> kPreds{predicate_f(), pred('G', 1), pred('R', 2), pred('A', 0)};

RandomFormulaParams params(bool equality, bool existence) {
  RandomFormulaParams p;
  p.max_size = 10;
  p.num_vars = 3;
  p.predicates = kPreds;
  p.equality = equality;
  p.existence = existence;
  return p;
}

void compare_on(const Model& m, std::mt19937_64& rng, const RandomFormulaParams& p, int formulas) {
  for (int i = 0; i < formulas; ++i) {
    const Formula f = random_formula(rng, p);
    Assignment g;
    for (std::uint32_t v = 0; v < p.num_vars; ++v)
      g[Variable{v}] = rng() % m.frame.domain_size();
    const WorldSet d = denote(m, f, g);
    for (std::size_t w = 0; w < m.frame.num_worlds(); ++w) {
      CAPTURE(print_formula(f));
      CHECK(contains(d, w) == naive(m, w, g, f));
    }
  }
}

Model two_world() { return load_model_text(read_text_file(CONDLOG_DATA_DIR "/two_world_frame.json")); }

}  // namespace

TEST_CASE("evaluator agrees with the naive clauses on selection models") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 150; ++round) {
    const std::size_t worlds = 1 + rng() % 4, domain = 1 + rng() % 3;
    const Frame frame = testing_support::random_selection_frame(rng, worlds, domain, round % 2);
    const Model m{frame, testing_support::random_interpretation(rng, frame, kPreds)};
    compare_on(m, rng, params(round % 3 == 0, round % 3 == 1), 30);
  }
}

TEST_CASE("evaluator agrees with the naive clauses on ordering models") {
  std::mt19937_64 rng(22);
  for (int round = 0; round < 150; ++round) {
    const std::size_t worlds = 1 + rng() % 4, domain = 1 + rng() % 3;
    const Frame frame = testing_support::random_ordering_frame(rng, worlds, domain, round % 2);
    const Model m{frame, testing_support::random_interpretation(rng, frame, kPreds)};
    compare_on(m, rng, params(round % 2 == 0, false), 30);
  }
}

TEST_CASE("box P(x) at 1 while P(x) fails at 2") {
  const Model m = two_world();
  const Assignment g{{var('x'), 0}};
  CHECK(eval(m, 0, g, parse_formula("box P(x)", Language::L)));
  CHECK_FALSE(eval(m, 1, g, parse_formula("P(x)", Language::L)));
}

TEST_CASE("the two-world frame does not validate dia F(x) style formulas") {
  const Model m = two_world();
  const Formula f = parse_formula("~(F(x) > bot)", Language::L);
  const auto cm = frame_valid(m.frame, f);
  REQUIRE(cm.has_value());
  CHECK_FALSE(eval(Model{m.frame, cm->interp}, cm->world, cm->assignment, f));

  Interpretation only_two;
  only_two.set(predicate_f(), 0, 1, true, 1);
  CHECK_FALSE(eval(Model{m.frame, only_two}, 0, {{var('x'), 0}}, f));
}

TEST_CASE("MOD instance is valid on a one-world Stalnakerian frame") {
  Frame f = testing_support::blank_frame(1, 2);
  fill_default_table(f, SelectionDefault::Centering);
  CHECK_FALSE(frame_valid(f, parse_formula("(~F(x) > bot) -> (G(x) > F(x))", Language::L)));
}

TEST_CASE("model_valid counterexamples replay") {
  std::mt19937_64 rng(23);
  int found = 0;
  for (int round = 0; round < 100; ++round) {
    const Frame frame = testing_support::random_selection_frame(rng, 3, 2);
    const Model m{frame, testing_support::random_interpretation(rng, frame, kPreds)};
    const Formula f = random_formula(rng, params(false, false));
    const std::vector<Formula> gamma{f};
    const auto cex = model_valid(m, gamma);
    if (!cex) {
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          for (std::size_t c = 0; c < 2; ++c)
            CHECK(denote(m, f, {{Variable{0}, a}, {Variable{1}, b}, {Variable{2}, c}}) ==
                  frame.all_worlds());
      continue;
    }
    ++found;
    CHECK_FALSE(eval(m, cex->world, cex->assignment, f));
  }
  CHECK(found > 0);
}

TEST_CASE("assignments must cover free variables") {
  const Model m = two_world();
  CHECK_THROWS_AS(eval(m, 0, {}, parse_formula("P(x)", Language::L)), InputError);
}

TEST_CASE("ordering and selection conversions") {
  std::mt19937_64 rng(24);
  for (int round = 0; round < 100; ++round) {
    const std::size_t worlds = 1 + rng() % 4;
    const Frame frame = testing_support::random_ordering_frame(rng, worlds, 2, false);
    const Model m{frame, testing_support::random_interpretation(rng, frame, kPreds)};
    const Model s = ordering_to_selection(m);
    CHECK(s.frame.kind == FrameKind::Selection);
    for (int i = 0; i < 20; ++i) {
      const Formula f = random_formula(rng, params(false, false));
      Assignment g;
      for (std::uint32_t v = 0; v < 3; ++v) g[Variable{v}] = rng() % 2;
      CHECK(denote(m, f, g) == denote(s, f, g));
    }
    const Model back = selection_to_ordering(s);
    for (std::size_t w = 0; w < worlds; ++w)
      for (std::size_t x = 0; x < worlds; ++x)
        if (contains(frame.access[w], x)) CHECK(back.frame.below[w][x] == frame.below[w][x]);
  }
}

TEST_CASE("conversion rejects orders with ties") {
  std::mt19937_64 rng(25);
  Frame frame = testing_support::blank_frame(3, 1);
  frame.kind = FrameKind::Ordering;
  frame.below.assign(3, std::vector<WorldSet>(3, 0));
  for (std::size_t w = 0; w < 3; ++w)
    for (std::size_t x = 0; x < 3; ++x)
      frame.below[w][x] = x == w ? bit(w) : full_set(3);  // the two other worlds tie
  CHECK_THROWS_AS(ordering_to_selection(Model{frame, {}}), InputError);
}
