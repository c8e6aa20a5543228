#include <doctest.h>

#include "condlog/errors.hpp"
#include "condlog/io.hpp"
#include "condlog/logic.hpp"
#include "condlog/semantics.hpp"
#include "helpers.hpp"

using namespace condlog;

namespace {

std::string error_of(const std::string& text) {
  try {
    load_model_text(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

const char* kBase = R"j({"kind": "selection", "worlds": ["1", "2"],
  "R": [["1","1"],["1","2"],["2","2"]], "domain": ["a", "b"], "default": "empty",
  "selection": [{"P": ["1","2"], "w": "1", "out": ["2"]}],
  "interpretation": {"F": {"1": ["a"], "2": [["b"]]}, "R": {"2": [["a","b"]]}}})j";

}  // namespace

TEST_CASE("model documents load") {
  const Model m = load_model_text(kBase);
  CHECK(m.frame.num_worlds() == 2);
  CHECK(m.frame.select(0b11, 0) == 0b10);
  CHECK(m.frame.select(0b01, 0) == 0);
  CHECK(m.interp.worlds_of(Predicate{5, 1}, 0) == 0b01);
  CHECK(m.interp.worlds_of(Predicate{5, 1}, 1) == 0b10);
  CHECK(m.interp.worlds_of(Predicate{17, 2}, 0 + 1 * 2) == 0b10);
}

TEST_CASE("model round trip") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 50; ++i) {
    Frame f = i % 2 ? testing_support::random_selection_frame(rng, 1 + rng() % 3, 2, true)
                    : testing_support::random_ordering_frame(rng, 1 + rng() % 3, 2, true);
    const Model m{f, testing_support::random_interpretation(
                         rng, f, {testing_support::pred('F', 1), testing_support::pred('R', 2)})};
    const Model back = load_model(model_to_json(m));
    CHECK(model_to_json(back) == model_to_json(m));
    CHECK(back.frame.access == m.frame.access);
    CHECK(back.frame.local == m.frame.local);
    if (f.kind == FrameKind::Selection) CHECK(back.frame.table == m.frame.table);
    else CHECK(back.frame.below == m.frame.below);
  }
}

TEST_CASE("malformed model documents name the entry") {
  std::string doc = kBase;
  CHECK(error_of(doc.replace(doc.find("[\"2\",\"2\"]"), 9, "[\"2\",\"3\"]")).find("3") !=
        std::string::npos);

  doc = kBase;
  CHECK(error_of(doc.replace(doc.find("\"default\": \"empty\","), 19, "")).find("default") !=
        std::string::npos);

  doc = kBase;
  // f(P,2) must stay within R(2) = {2}
  doc.replace(doc.find("\"w\": \"1\", \"out\": [\"2\"]"), 21, "\"w\": \"2\", \"out\": [\"1\"]");
  CHECK(error_of(doc) != "");

  doc = kBase;
  CHECK(error_of(doc.replace(doc.find("[\"a\",\"b\"]"), 9, "[\"a\",\"c\"]")).find("c") !=
        std::string::npos);

  CHECK(error_of("{\"kind\": \"spheres\"}") != "");
  CHECK(error_of("not json") != "");
}

TEST_CASE("ordering documents") {
  const char* doc = R"j({"kind": "ordering", "worlds": ["u", "v"], "R": [["u","u"],["u","v"],["v","v"]],
    "domain": ["a"], "order": {"u": [["u","u"],["u","v"],["v","v"]], "v": [["v","v"]]}})j";
  const Model m = load_model_text(doc);
  CHECK(m.frame.precedes(0, 0, 1));
  CHECK_FALSE(m.frame.precedes(0, 1, 0));
  const char* outside = R"j({"kind": "ordering", "worlds": ["u", "v"], "R": [["u","u"],["v","v"]],
    "domain": ["a"], "order": {"u": [["u","v"]], "v": [["v","v"]]}})j";
  CHECK(error_of(outside) != "");
}

TEST_CASE("quasi-selection documents") {
  const char* doc = R"j({"kind": "quasi-selection", "worlds": ["u", "v"], "R": [["u","u"],["u","v"],["v","v"]],
    "domain": ["a"], "quasiStrategy": {"strategy": "min-of-order",
    "order": {"u": [["u","u"],["u","v"],["v","v"]], "v": [["v","v"]]}}})j";
  const Model m = load_model_text(doc);
  CHECK(m.frame.kind == FrameKind::QuasiSelection);
  CHECK(m.frame.order_min(0b11, 0) == 0b01);
}

TEST_CASE("proof documents") {
  const ProofScript p = load_proof_text(R"j({"logic": "QC2=", "lines": [
      {"formula": "x = x", "just": {"axiom": "28"}}]})j");
  CHECK(p.logic == Logic::QC2Eq);
  CHECK(load_proof(proof_to_json(p)).lines.size() == 1);
  CHECK_THROWS_AS(load_proof_text(R"j({"logic": "QC2", "lines": [
      {"formula": "x = x", "just": {"axiom": "28"}}]})j"),
                  InputError);
  CHECK_THROWS_AS(load_proof_text(R"j({"logic": "QC9", "lines": []})j"), InputError);
  CHECK_THROWS_AS(load_proof_text(R"j({"logic": "QC2", "lines": [
      {"formula": "F(x)", "just": {}}]})j"),
                  InputError);
}
