#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "robba/version.hpp"
#include "robba_cli.hpp"

using robba::cli::JobRequest;
using robba::cli::run;
using robba::cli::run_text;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(ROBBA_FIXTURE_DIR) + "/" + name; }

JobRequest job(const std::string& command, const std::string& name = "") {
  JobRequest j;
  j.command = command;
  if (!name.empty()) j.input_path = fixture(name);
  return j;
}

json report(const robba::cli::JobResult& r) { return json::parse(r.report); }

}  // namespace

TEST(Cli, VerdictOnTrivialN) {
  auto r = run(job("verdict", "lie_trivial_n.json"));
  EXPECT_EQ(r.exit_code, 0);
  auto j = report(r);
  EXPECT_EQ(j["status"], "GOOD");
  EXPECT_EQ(j["result"]["good"], true);
  EXPECT_EQ(j["version"], robba::kVersion);
}

TEST(Cli, VerdictOnOdaAndTate) {
  EXPECT_EQ(run(job("verdict", "lie_oda.json")).exit_code, 1);
  EXPECT_EQ(run(job("verdict", "lie_tate.json")).exit_code, 1);
  EXPECT_EQ(run(job("verdict", "phin_tate.json")).exit_code, 1);
  EXPECT_EQ(run(job("verdict", "phin_trivial.json")).exit_code, 0);
}

TEST(Cli, NonsingularWitness) {
  auto r = run(job("nonsingular", "log_nilpotent_rank2.json"));
  EXPECT_EQ(r.exit_code, 1);
  auto j = report(r);
  EXPECT_EQ(j["result"]["nonsingular"], false);
  EXPECT_EQ(j["result"]["witness"]["N"][0][1]["value"], 1);
  auto ok = run(job("nonsingular", "log_trivial.json"));
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_TRUE(report(ok)["result"]["witness"].contains("module"));
}

TEST(Cli, RanksPrefix) {
  auto j = job("ranks");
  j.g = 2;
  j.level = 3;
  auto r = run(j);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(report(r)["result"]["ranks"], json({1, 5, 17}));
  EXPECT_EQ(report(r)["result"]["hallModelRanks"], json({1, 5, 20}));
  j.oracle = "hall";
  EXPECT_EQ(report(run(j))["result"]["agrees"], true);
  j.oracle = "euler";
  EXPECT_EQ(run(j).exit_code, 2);
}

TEST(Cli, MalformedJsonReportsLocation) {
  auto r = run(job("validate", "invalid/malformed.json"));
  EXPECT_EQ(r.exit_code, 2);
  auto j = report(r);
  EXPECT_EQ(j["status"], "ERROR");
  EXPECT_EQ(j["error"]["kind"], "malformed-json");
  EXPECT_NE(j["error"]["message"].get<std::string>().find("line 2"), std::string::npos);
}

TEST(Cli, PrecisionExhaustionIsInputError) {
  auto r = run(job("residue", "invalid/inexact_residue.json"));
  EXPECT_EQ(r.exit_code, 2);
  auto j = report(r);
  EXPECT_EQ(j["error"]["kind"], "precision");
  EXPECT_NE(j["error"]["message"].get<std::string>().find("p^5"), std::string::npos);
}

TEST(Cli, InvariantFailureIsExitOne) {
  EXPECT_EQ(run(job("validate", "invalid/bad_horizontality.json")).exit_code, 1);
  auto r = run(job("cohomology", "invalid/bad_horizontality.json"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(report(r)["result"]["validation"]["ok"], false);
  EXPECT_EQ(run(job("validate", "invalid/bad_frobenius.json")).exit_code, 2);
}

TEST(Cli, CohomologyStatuses) {
  auto r = run(job("cohomology", "module_trivial_sk.json"));
  EXPECT_EQ(r.exit_code, 3);
  auto j = report(r);
  EXPECT_EQ(j["result"]["h0F"]["status"], "DETERMINED");
  EXPECT_EQ(j["result"]["h1F"]["status"], "WINDOW-LIMITED");
  auto f = run(job("cohomology", "cohomology_finite.json"));
  EXPECT_EQ(f.exit_code, 0);
  EXPECT_EQ(report(f)["result"]["h0F"]["value"], 1);
  EXPECT_EQ(report(f)["result"]["h2F"]["value"], 1);
}

TEST(Cli, WindowOverride) {
  auto j = job("cohomology", "module_trivial_dagger.json");
  j.window = 5;
  auto rep = report(run(j));
  EXPECT_LE(rep["result"]["window"][1].get<int>(), 5);
  j.window = 0;
  EXPECT_EQ(run(j).exit_code, 2);
}

TEST(Cli, ValidateReproducesStatusFromReports) {
  for (const char* name : {"module_trivial_sk.json", "log_nilpotent_rank2.json", "phin_tate.json", "lie_oda.json",
                           "invalid/bad_horizontality.json"}) {
    auto first = run(job("validate", name));
    auto again = run_text(job("validate"), first.report);
    EXPECT_EQ(first.exit_code, again.exit_code) << name;
    EXPECT_EQ(report(first)["result"], report(again)["result"]) << name;
  }
  // The residue report carries a (phi,N)-module; the witness of nonsingular a module.
  auto res = run(job("residue", "log_nilpotent_rank2.json"));
  EXPECT_EQ(run_text(job("validate"), res.report).exit_code, 0);
  auto ns = run(job("nonsingular", "log_trivial.json"));
  EXPECT_EQ(run_text(job("validate"), ns.report).exit_code, 0);
}

TEST(Cli, ByteIdenticalReruns) {
  auto j = job("cohomology", "module_dagger_rank2.json");
  j.seed = 17;
  const auto a = run(j), b = run(j);
  EXPECT_EQ(a.report, b.report);
  EXPECT_EQ(report(a)["seed"], 17);
}
