#include <gtest/gtest.h>

#include <fstream>

#include "chowfiber/render.hpp"
#include "support/generators.hpp"

using namespace chowfiber;
using chowfiber::testkit::run_command;

namespace {

const std::string kCli = CHOWFIBER_CLI;
const std::string kFixtures = CHOWFIBER_FIXTURES;

testkit::CommandResult cli(const std::string& args, bool with_stderr = false) {
  return run_command("CHOWFIBER_COLOR=never '" + kCli + "' " + args + (with_stderr ? " 2>&1" : " 2>/dev/null"));
}

std::string fixture(const std::string& name) { return "'" + kFixtures + "/" + name + "'"; }

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return "'" + path + "'";
}

int count(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(CliValidate, TrivialIsSilent) {
  auto r = cli("validate " + fixture("trivial.json"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "");
}

TEST(CliValidate, Example31HasFourErrors) {
  auto r = cli("validate " + fixture("example31.json"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(count(r.output, "ERROR xi-orthogonality "), 4);
  EXPECT_NE(r.output.find("ERROR xi-orthogonality c1: weighted degree sum is -4, expected 0\n"), std::string::npos);
}

TEST(CliValidate, MissingAndMalformedFiles) {
  EXPECT_EQ(cli("validate missing.json").exit_code, 2);
  EXPECT_EQ(cli("validate " + temp_file("bad.json", "{ \"name\": ")).exit_code, 2);
  EXPECT_EQ(cli("validate " + temp_file("schema.json", R"({"name": "x", "orbits": []})")).exit_code, 2);
}

TEST(CliCompute, Irreducible) {
  auto r = cli("compute " + fixture("irreducible.json"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output.substr(0, r.output.find('\n')),
            "B(X) = Z, B(X)_0 = 0, index = 1, special case: irreducible fiber");
}

TEST(CliCompute, Example31StrictAndPermissive) {
  auto strict = cli("compute --strict " + fixture("example31.json"));
  EXPECT_EQ(strict.exit_code, 1);
  EXPECT_EQ(count(strict.output, "ERROR xi-orthogonality "), 4);
  EXPECT_EQ(cli("compute " + fixture("example31.json")).exit_code, 1) << "strict is the default";

  auto permissive = cli("compute --permissive --json " + fixture("example31.json"));
  EXPECT_EQ(permissive.exit_code, 0);
  Json j = Json::parse(permissive.output);
  EXPECT_TRUE(j["formal_only"].get<bool>());
  EXPECT_FALSE(j["diagnostics"].empty());
}

TEST(CliCompute, JsonMatchesHumanOutput) {
  for (const char* name : {"trivial", "irreducible", "split-orbit", "synthetic-z2"}) {
    auto human = cli(std::string("compute ") + fixture(std::string(name) + ".json"));
    auto json = cli(std::string("compute --json ") + fixture(std::string(name) + ".json"));
    ASSERT_EQ(json.exit_code, 0) << name;
    EXPECT_EQ(render_text(report_from_json(Json::parse(json.output))), human.output) << name;
  }
}

TEST(CliCompute, FlagsConflict) {
  EXPECT_EQ(cli("compute --strict --permissive " + fixture("trivial.json")).exit_code, 2);
  EXPECT_EQ(cli("compute").exit_code, 2);
  EXPECT_EQ(cli("").exit_code, 2);
}

TEST(CliCompute, ColorAlways) {
  auto r = run_command("CHOWFIBER_COLOR=always '" + kCli + "' compute --permissive " + fixture("example31.json"));
  EXPECT_NE(r.output.find("\x1b["), std::string::npos);
  auto piped = run_command("'" + kCli + "' compute --permissive " + fixture("example31.json"));
  EXPECT_EQ(piped.output.find("\x1b["), std::string::npos) << "auto must not style a pipe";
}

TEST(CliSnf, Examples) {
  auto small = cli("snf " + fixture("matrices/small.txt"));
  EXPECT_EQ(small.exit_code, 0);
  EXPECT_EQ(small.output, "rank 2; invariant factors: 2 4\n");
  EXPECT_EQ(cli("snf " + fixture("matrices/identity3.txt")).output, "rank 3; invariant factors: 1 1 1\n");
  EXPECT_EQ(cli("snf " + fixture("matrices/zero2.txt")).output, "rank 0; invariant factors: (none)\n");
}

TEST(CliSnf, CheckAndErrors) {
  auto checked = cli("snf --check " + fixture("matrices/example31.txt"));
  EXPECT_EQ(checked.exit_code, 0);
  EXPECT_EQ(checked.output, "rank 7; invariant factors: 1 1 1 1 1 2 2\ncheck: agrees with determinantal divisors\n");
  EXPECT_EQ(cli("snf " + temp_file("bad.txt", "2 2\n1 2\n")).exit_code, 2);
  EXPECT_EQ(cli("snf nowhere.txt").exit_code, 2);
}

TEST(CliOracle, Examples) {
  EXPECT_EQ(cli("oracle " + fixture("matrices/small.txt")).output, "determinantal divisors: 2 8\n");
  EXPECT_EQ(cli("oracle " + fixture("matrices/example31.txt")).output,
            "determinantal divisors: 1 1 1 1 1 2 4\n");
  std::string big = "9 9\n";
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) big += (i == j ? "1 " : "0 ");
    big += "\n";
  }
  EXPECT_EQ(cli("oracle " + temp_file("big.txt", big)).exit_code, 2);
}

TEST(CliExitCodes, AllFixtures) {
  struct Case {
    const char* fixture;
    int validate, strict, permissive;
  };
  for (const Case& c : {Case{"trivial.json", 0, 0, 0}, Case{"irreducible.json", 0, 0, 0},
                        Case{"split-orbit.json", 0, 0, 0}, Case{"synthetic-z2.json", 0, 0, 0},
                        Case{"example31.json", 1, 1, 0}}) {
    EXPECT_EQ(cli("validate " + fixture(c.fixture)).exit_code, c.validate) << c.fixture;
    EXPECT_EQ(cli("compute --strict " + fixture(c.fixture)).exit_code, c.strict) << c.fixture;
    EXPECT_EQ(cli("compute --permissive " + fixture(c.fixture)).exit_code, c.permissive) << c.fixture;
    EXPECT_EQ(cli("compute --permissive --json " + fixture(c.fixture)).exit_code, c.permissive) << c.fixture;
  }
}
