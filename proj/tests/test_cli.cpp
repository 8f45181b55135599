#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is folded into the captured text.
Run magma_command(const std::string& line) {
  const std::string command = line + " 2>&1";
  Run run;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  while (std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe)) run.out.append(buffer.data(), n);
  const int raw = pclose(pipe);
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return run;
}

Run magma(const std::string& args) { return magma_command(std::string(MAGMA_BIN) + " " + args); }

Run magma_env(const std::string& env, const std::string& args) {
  return magma_command(env + " " + MAGMA_BIN + " " + args);
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "magma_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("classify reports Z and T membership") {
  const Run r = magma("classify '(x*(x*x))'");
  REQUIRE(r.status == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["size"] == 3);
  CHECK(doc["in_Z"] == true);
  CHECK(doc["in_T"]["T_1"] == true);
}

TEST_CASE("term utilities") {
  CHECK(json::parse(magma("term --count 10").out)["count"] == "4862");
  CHECK(json::parse(magma("term --enumerate 4").out).size() == 5);
  CHECK(magma("term --chain 3").out == "(x*(x*x))\n");
  const Run bad = magma("term '((x*x)*x'");
  CHECK(bad.status == 2);
  CHECK(bad.out.rfind("syntax error:", 0) == 0);
  const Run capped = magma("--max-level 4 term --enumerate 5");
  CHECK(capped.status == 3);
  CHECK(capped.out.rfind("cap exceeded:", 0) == 0);
}

TEST_CASE("measure, convolve and substitute round-trip mean files") {
  const auto u3 = scratch("u3.json");
  const auto sq = scratch("sq.json");
  REQUIRE(magma("measure --uniform 3 --emit " + u3.string()).status == 0);
  const Run z = magma("measure --mean " + u3.string() + " --set Z");
  CHECK(z.status == 0);
  CHECK(z.out == "1/2\n");

  const Run conv = magma("convolve --left " + u3.string() + " --right " + u3.string() + " --emit " + sq.string());
  REQUIRE(conv.status == 0);
  CHECK(json::parse(conv.out)["level"] == 6);
  CHECK(magma("measure --mean " + sq.string() + " --set Z").out == "0/1\n");
  CHECK(magma("measure --mean " + sq.string() + " --set 'prod(S(3),S(3))'").out == "1/1\n");

  const Run sub = magma("substitute --skeleton '(x*x)' --indices 0,0 --means " + u3.string());
  REQUIRE(sub.status == 0);
  const json doc = json::parse(sub.out);
  CHECK(doc["level"] == 6);
  CHECK(doc["admissible"] == false);
  CHECK(doc["mean"].size() == 4);

  const Run seq = magma("substitute --skeleton '(x*x)' --indices 2,3 --seq uniform-levels");
  REQUIRE(seq.status == 0);
  CHECK(json::parse(seq.out)["level"] == 7);
  CHECK(json::parse(seq.out)["admissible"] == true);

  const Run envcap = magma("--max-support 3 convolve --left " + u3.string() + " --right " + u3.string());
  CHECK(envcap.status == 3);
}

TEST_CASE("env var overrides the support cap") {
  const auto u3 = scratch("u3_env.json");
  REQUIRE(magma("measure --uniform 3 --emit " + u3.string()).status == 0);
  const std::string args = "convolve --left " + u3.string() + " --right " + u3.string();
  CHECK(magma(args).status == 0);
  CHECK(magma_env("MAGMA_MAX_SUPPORT=3", args).status == 3);
}

TEST_CASE("invalid mean files are rejected with a distinct prefix") {
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << R"([{"term": "x", "weight": "1/3"}])";
  const Run r = magma("measure --mean " + bad.string() + " --set Z");
  CHECK(r.status == 5);
  CHECK(r.out.rfind("invalid mean:", 0) == 0);
  CHECK(r.out.find("weights sum to 1/3") != std::string::npos);
}

TEST_CASE("refutation certificates re-verify") {
  const auto cert = scratch("chains.json");
  const Run r = magma("refute --epsilon 1/10 --seq right-chains --emit " + cert.string());
  REQUIRE(r.status == 0);
  const json summary = json::parse(r.out);
  CHECK(summary["low_z"] == "0/1");
  CHECK(summary["high_z"] == "1/1");
  CHECK(magma("refute --check " + cert.string()).status == 0);

  json doc = json::parse(std::ifstream(cert));
  doc["low"]["z_value"] = "1/20";
  const auto forged = scratch("forged.json");
  std::ofstream(forged) << doc.dump();
  const Run bad = magma("refute --check " + forged.string());
  CHECK(bad.status == 6);
  CHECK(bad.out.find("verification failed:") != std::string::npos);

  const Run wide = magma("refute --epsilon 3/5 --seq right-chains");
  CHECK(wide.status == 7);
  const Run short_prefix = magma("refute --epsilon 1/100 --seq uniform-levels --prefix 8 --window 4");
  CHECK(short_prefix.status == 4);
  CHECK(short_prefix.out.rfind("prefix exhausted:", 0) == 0);
}

TEST_CASE("obstruction report") {
  const auto u3 = scratch("u3_obs.json");
  REQUIRE(magma("measure --uniform 3 --emit " + u3.string()).status == 0);
  const Run r = magma("obstruct --mean " + u3.string() + " --depth 3");
  REQUIRE(r.status == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["r"] == "1/2");
  CHECK(doc["discrepancy"]["gap"] == "1/1");
  CHECK(r.out.find('.') == std::string::npos);  // no floating point anywhere
}
