#include <doctest.h>

#include "condlog/errors.hpp"
#include "condlog/frame_props.hpp"
#include "condlog/io.hpp"
#include "condlog/logic.hpp"
#include "condlog/parser.hpp"
#include "condlog/semantics.hpp"
#include "helpers.hpp"

using namespace condlog;

namespace {

Formula P(const char* text, Language lang = Language::L) { return parse_formula(text, lang); }

ProofScript mod_proof() { return load_proof_text(read_text_file(CONDLOG_DATA_DIR "/mod_qc2.json")); }

bool matches_some_axiom(const Formula& f) {
  for (const auto& id : all_schema_ids())
    if (is_axiom_instance(id, f)) return true;
  return false;
}

}  // namespace

TEST_CASE("schema instances") {
  CHECK(is_axiom_instance("22", P("(F(x) > G(x)) | (F(x) > ~G(x))")));
  CHECK(is_axiom_instance("23", P("(forall x. F(x)) -> F(y)")));
  CHECK(is_axiom_instance("19", P("(forall y. G(y)) > (forall y. G(y))")));
  CHECK(is_axiom_instance("20", P("((F(x) > G(x)) & (G(x) > F(x)) & (F(x) > F(y))) -> (G(x) > F(y))")));
  CHECK(is_axiom_instance("21", P("(F(x) > bot) -> (F(x) -> bot)")));
  CHECK(is_axiom_instance("24", P("(forall x. (F(y) > G(x))) -> (F(y) > forall x. G(x))")));
  CHECK_FALSE(is_axiom_instance("24", P("(forall x. (F(x) > G(x))) -> (F(x) > forall x. G(x))")));
  CHECK(is_axiom_instance("18", P("F(x) | ~F(x)")));
  CHECK_FALSE(is_axiom_instance("18", P("F(x) | ~F(y)")));
  CHECK_FALSE(is_axiom_instance("22", P("(F(x) > G(x)) | (G(x) > ~G(x))")));
  CHECK_THROWS_AS(is_axiom_instance("99", P("F(x)")), InputError);
}

TEST_CASE("axiom 23 respects capture") {
  CHECK(is_axiom_instance("23", P("(forall x. exists y. R(x, y)) -> exists z. R(y, z)")));
  CHECK_FALSE(is_axiom_instance("23", P("(forall x. exists y. R(x, y)) -> exists y. R(y, y)")));
}

TEST_CASE("MOD is a theorem, not an axiom") {
  CHECK_FALSE(matches_some_axiom(P("(~F(x) > bot) -> (G(y) > F(x))")));
}

TEST_CASE("rules") {
  const Formula a = P("F(x)"), b = P("G(x)");
  const Formula mp[] = {a, Formula::implies(a, b)};
  CHECK(check_rule("25", mp, b));
  const Formula mp_swapped[] = {Formula::implies(a, b), a};
  CHECK(check_rule("25", mp_swapped, b));
  CHECK_FALSE(check_rule("25", mp, a));

  const Formula premise[] = {P("F(x) -> G(y)")};
  CHECK(check_rule("27", premise, P("F(x) -> forall y. G(y)")));
  const Formula bad[] = {P("F(y) -> G(y)")};
  CHECK_FALSE(check_rule("27", bad, P("F(y) -> forall y. G(y)")));

  const Formula theorem[] = {a};
  CHECK(check_rule("14", theorem, Formula::cond(b, a)));
  CHECK_FALSE(check_rule("14", theorem, Formula::cond(a, b)));

  const Formula two[] = {P("(F(x) & G(x)) -> F(y)")};
  CHECK(check_rule("26", two, P("((A > F(x)) & (A > G(x))) -> (A > F(y))")));
  CHECK_THROWS_AS(check_rule("99", two, a), InputError);
}

TEST_CASE("random instances are recognised by their own schema") {
  std::mt19937_64 rng(41);
  const Logic logics[] = {Logic::QST, Logic::QC2, Logic::QC2Eq, Logic::QC2vE, Logic::QC2vEq,
                          Logic::QC2cE, Logic::QC2cEq};
  for (Logic logic : logics)
    for (const auto& id : logic_axioms(logic))
      for (int i = 0; i < 40; ++i) {
        const Formula f = random_axiom_instance(id, rng, logic_language(logic));
        CAPTURE(id);
        CAPTURE(print_formula(f));
        CHECK(fits_language(f, logic_language(logic)));
        CHECK(is_axiom_instance(id, f));
      }
}

TEST_CASE("QC2 axiom instances hold in Stalnakerian models with constant domains") {
  // Soundness direction of the correspondence, checked semantically.
  std::mt19937_64 rng(42);
  for (const auto& id : logic_axioms(Logic::QC2))
    for (int i = 0; i < 60; ++i) {
      const Formula f = random_axiom_instance(id, rng, Language::L);
      const Frame frame = testing_support::random_stalnakerian_frame(rng, 1 + rng() % 3, 2);
      const std::set<Predicate> preds = predicates_of(f);
      const Model m{frame, testing_support::random_interpretation(
                               rng, frame, std::vector<Predicate>(preds.begin(), preds.end()))};
      const std::vector<Formula> gamma{f};
      CAPTURE(id);
      CAPTURE(print_formula(f));
      CHECK_FALSE(model_valid(m, gamma).has_value());
    }
}

TEST_CASE("shipped MOD derivation") {
  const ProofScript proof = mod_proof();
  REQUIRE(proof.lines.size() >= 2);
  CHECK(proof.logic == Logic::QC2);
  const Verdict v = verify_proof(proof);
  CHECK(v.accepted);
  CHECK(proof.lines.back().formula == P("(~F(x) > bot) -> (G(x) > F(x))"));
  const Frame stalnakerian = testing_support::blank_frame(1, 1);
  CHECK(check_selection_props([&] {
          Frame f = stalnakerian;
          fill_default_table(f, SelectionDefault::Centering);
          return f;
        }()).stalnakerian == true);
}

TEST_CASE("proofs are checked against the declared logic") {
  ProofScript proof = mod_proof();
  proof.logic = Logic::QST;
  CHECK_FALSE(verify_proof(proof).accepted);
}

TEST_CASE("a line citing a later line is rejected on load") {
  const char* doc = R"j({"logic": "QC2", "lines": [
      {"formula": "F(x) -> F(x)", "just": {"rule": "25", "premises": [2]}},
      {"formula": "F(x) -> F(x)", "just": {"axiom": "18"}}]})j";
  CHECK_THROWS_AS(load_proof_text(doc), InputError);
}

TEST_CASE("empty proof is accepted") {
  const ProofScript p = load_proof_text(R"j({"logic": "QC2", "lines": []})j");
  CHECK(p.lines.empty());
  CHECK(verify_proof(p).accepted);
}

TEST_CASE("rejections name the offending line") {
  ProofScript proof = mod_proof();
  proof.lines[5].formula = P("(G(x) > F(x)) | (G(x) > F(x))");
  const Verdict v = verify_proof(proof);
  CHECK_FALSE(v.accepted);
  CHECK(v.line == 6);
  CHECK_FALSE(v.reason.empty());
}
