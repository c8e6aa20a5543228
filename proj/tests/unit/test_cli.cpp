#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "condlog/cli.hpp"
#include "condlog/io.hpp"

using condlog::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "condlog");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

const std::string kData = CONDLOG_DATA_DIR;

}  // namespace

TEST_CASE("cli parse") {
  const Run r = cli({"parse", "forall x. F(x) > G(x)", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = json_of(r);
  CHECK(doc["formulas"][0]["formula"] == "forall x. F(x) > G(x)");
  CHECK(cli({"parse", "F(x"}).code == 2);
  CHECK(cli({"parse", "x = y"}).code == 2);
  CHECK(cli({"parse", "x = y", "--lang", "L="}).code == 0);
}

TEST_CASE("cli eval on the two-world model") {
  const std::string model = kData + "/two_world_frame.json";
  Run r = cli({"eval", "--model", model, "--world", "1", "--formula", "box P(x)", "--assign", "x=a"});
  CHECK(r.code == 0);
  CHECK(r.out.find("true") != std::string::npos);
  r = cli({"eval", "--model", model, "--world", "2", "--formula", "P(x)", "--assign", "x=a",
           "--format", "json"});
  CHECK(r.code == 1);
  CHECK(json_of(r)["results"][0]["value"] == false);
  CHECK(cli({"eval", "--model", model, "--world", "9", "--formula", "P(x)", "--assign", "x=a"})
            .code == 2);
  CHECK(cli({"eval", "--model", model, "--world", "1", "--formula", "P(x)"}).code == 2);
}

TEST_CASE("cli frame-props") {
  const Run r = cli({"frame-props", "--model", kData + "/two_world_frame.json", "--format", "json"});
  const auto doc = json_of(r);
  CHECK(doc["weaklyStalnakerian"] == true);
  CHECK(doc["Stalnakerian"] == false);
  CHECK(doc["conditions"]["LA"]["holds"] == false);
  CHECK(cli({"frame-props", "--model", kData + "/two_world_frame.json", "--require", "LA"}).code == 1);
  CHECK(cli({"frame-props", "--model", kData + "/two_world_frame.json", "--require",
             "weaklyStalnakerian"})
            .code == 0);
}

TEST_CASE("cli frame-valid and model-valid") {
  const std::string model = kData + "/two_world_frame.json";
  CHECK(cli({"frame-valid", "--model", model, "--formula", "~(F(x) > bot)"}).code == 1);
  CHECK(cli({"frame-valid", "--model", model, "--formula", "F(x) -> F(x)"}).code == 0);
  CHECK(cli({"model-valid", "--model", model, "--formula", "box P(x) -> P(x)"}).code == 0);
  CHECK(cli({"model-valid", "--model", model, "--formula", "P(x)"}).code == 1);
}

TEST_CASE("cli prove") {
  CHECK(cli({"prove", "--proof", kData + "/mod_qc2.json"}).code == 0);
  CHECK(cli({"prove", "--proof", kData + "/missing.json"}).code == 2);
}

TEST_CASE("cli convert round trip") {
  const auto tmp = std::filesystem::temp_directory_path() / "condlog_cli_k3.json";
  REQUIRE(cli({"kmodel", "truncate", "--n", "3", "--out", tmp.string()}).code == 0);
  const auto sel = std::filesystem::temp_directory_path() / "condlog_cli_k3_sel.json";
  CHECK(cli({"convert", "--model", tmp.string(), "--to", "selection", "--out", sel.string()})
            .code == 0);
  const condlog::Model m = condlog::load_model_text(condlog::read_text_file(sel.string()));
  CHECK(m.frame.num_worlds() == 4);
  CHECK(cli({"eval", "--model", sel.string(), "--world", m.frame.world_names[3], "--formula",
             "dia exists x. F(x)"})
            .code == 0);
  std::filesystem::remove(tmp);
  std::filesystem::remove(sel);
}

TEST_CASE("cli kmodel") {
  CHECK(cli({"kmodel", "eval", "--formula", "@" + kData + "/ds.cl"}).code == 0);
  CHECK(cli({"kmodel", "eval", "--formula", "F(x)", "--world", "-3", "--assign", "x=-2"}).code ==
        1);
  CHECK(cli({"kmodel", "eval", "--formula", "F(x)", "--assign", "x=3"}).code == 2);
  const auto doc = json_of(cli({"kmodel", "denote", "--formula", "forall x. F(x)", "--format", "json"}));
  CHECK(doc["results"][0]["text"] == "{-1}");
  CHECK(doc["results"][0]["minusInf"] == false);
  const Run probe = cli({"kmodel", "probe", "--format", "json"});
  CHECK(probe.code == 0);
  CHECK_NOTHROW(json_of(probe));
  CHECK(cli({"kmodel", "cem-sweep", "--max-size", "4", "--no-axioms"}).code == 0);
  CHECK(cli({"kmodel", "nf", "--formula", "exists x. F(x) & ~F(y)"}).code == 0);
}

TEST_CASE("cli search") {
  Run r = cli({"search", "ds", "--mode", "weak", "--max-worlds", "2", "--max-domain", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("no model found") != std::string::npos);
  r = cli({"search", "ds", "--mode", "control", "--max-worlds", "3", "--max-domain", "2",
           "--format", "json"});
  CHECK(r.code == 0);
  CHECK_NOTHROW(json_of(r));
  CHECK(cli({"search", "compactness", "--n", "2"}).code == 0);
  CHECK(cli({"search", "frames", "--max-worlds", "2", "--max-domain", "1", "--require",
             "Stalnakerian"})
            .code == 0);
  CHECK(cli({"search", "frames", "--require", "NoSuchCondition"}).code == 2);
}

TEST_CASE("cli usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"eval", "--model", kData + "/two_world_frame.json"}).code == 2);
}
