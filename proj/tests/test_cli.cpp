#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "ap3/extremal.hpp"
#include "ap3/serialize.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(AP3_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("r3 subcommand emits oracle-backed rows") {
  const auto r = run_cli("r3 --n 1..10");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["records"].size() == 10);
  const std::vector<std::int64_t> expected{1, 2, 2, 3, 4, 4, 4, 4, 5, 5};
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(j["records"][i]["N"] == static_cast<std::int64_t>(i + 1));
    CHECK(j["records"][i]["value"] == expected[i]);
  }
}

TEST_CASE("r3 subcommand range handling") {
  const auto empty = run_cli("r3 --n 7..3");
  CHECK(empty.exit_code == 0);
  CHECK(nlohmann::json::parse(empty.out)["records"].empty());

  const auto huge = run_cli("r3 --n 1..1000000");
  CHECK(huge.exit_code == 1);

  const auto csv = run_cli("r3 --n 4..5 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out == "N,value,witness\n4,3,\"1 2 4\"\n5,4,\"1 2 4 5\"\n");
}

TEST_CASE("r3 cache serves values beyond the search bound") {
  const auto cache = temp_file("ap3_cli_cache.json");
  std::filesystem::remove(cache);
  const auto fill = run_cli("r3 --n 1..30 --cache " + cache.string());
  REQUIRE(fill.exit_code == 0);

  // nmax below the requested range: only the cache can serve these rows
  const auto served = run_cli("r3 --n 25..30 --nmax 5 --cache " + cache.string());
  REQUIRE(served.exit_code == 0);
  const auto j = nlohmann::json::parse(served.out);
  CHECK(j["records"].size() == 6);
  CHECK(j["records"][5]["value"] == 12);

  const auto verified = run_cli("r3 --n 1..30 --cache " + cache.string() + " --verify");
  CHECK(verified.exit_code == 0);

  // tamper with one value: verify mode must flag it
  auto doc = nlohmann::json::parse(std::ifstream(cache));
  doc["records"][19]["value"] = 12;
  {
    std::ofstream out(cache);
    out << doc.dump(2);
  }
  const auto tampered = run_cli("r3 --n 1..30 --cache " + cache.string() + " --verify");
  CHECK(tampered.exit_code == 2);
  std::filesystem::remove(cache);
}

TEST_CASE("pipeline subcommand on the degenerate two-element run") {
  const auto r = run_cli("pipeline --n 2 --source greedy --theta paper");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["degenerate"] == true);
  CHECK(j["ctx"]["p"] == 5);
  CHECK(j["lambda_source"]["num"] == 2);
  CHECK(j["lambda_source"]["den"] == 25);
  for (const auto& [name, ok] : j["verdicts"].items()) {
    INFO(name);
    CHECK(ok == true);
  }
}

TEST_CASE("pipeline subcommand at N=500 with half-density threshold") {
  const auto r = run_cli("pipeline --n 500 --source behrend --theta half-density");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["degenerate"] == false);
  CHECK(j["support_size"] >= j["restricted_size"]);
}

TEST_CASE("pipeline subcommand rejects bad input") {
  CHECK(run_cli("pipeline --n 10 --source file:/nonexistent_ap3_set").exit_code == 1);

  const auto bad = temp_file("ap3_cli_badset.txt");
  {
    std::ofstream out(bad);
    out << "3\nbanana\n";
  }
  CHECK(run_cli("pipeline --n 10 --source file:" + bad.string()).exit_code == 1);
  {
    std::ofstream out(bad);
    out << "1\n2\n3\n";  // has a progression
  }
  CHECK(run_cli("pipeline --n 10 --source file:" + bad.string()).exit_code == 1);
  std::filesystem::remove(bad);

  CHECK(run_cli("pipeline --n 10 --source nonsense").exit_code == 1);
  CHECK(run_cli("pipeline --n 10 --theta -0.5").exit_code == 1);
  CHECK(run_cli("pipeline --n 10 --format csv").exit_code == 1);
  CHECK(run_cli("pipeline").exit_code == 1);
}

TEST_CASE("pipeline accepts an explicit set file") {
  const auto good = temp_file("ap3_cli_goodset.txt");
  {
    std::ofstream out(good);
    for (const auto a : ap3::greedy_3ap_free(40).elements()) out << a << "\n";
  }
  const auto r = run_cli("pipeline --n 40 --source file:" + good.string() + " --theta 0.1");
  CHECK(r.exit_code == 0);
  std::filesystem::remove(good);
}

TEST_CASE("varnavides subcommand passes on the full interval") {
  const auto r = run_cli("varnavides --n 100 --m 5 --source full");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["census"]["total_blocks"] == 188);
  CHECK(j["census"]["vacuous"] == false);
}

TEST_CASE("varnavides subcommand flags injected faults") {
  const auto r = run_cli("varnavides --n 100 --m 5 --inject-fault lower_bound");
  CHECK(r.exit_code == 2);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == false);
  CHECK(j["checks"]["lower_bound"] == false);
}

TEST_CASE("varnavides subcommand in the vacuous regime") {
  const auto r = run_cli("varnavides --n 10 --m 3 --source full");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["census"]["vacuous"] == true);
  CHECK(j["passed"] == true);
}

TEST_CASE("identical invocations produce byte-identical output") {
  for (const std::string cmd : {"r3 --n 1..20", "pipeline --n 300 --source greedy --theta 0.1 --seed 7",
                                "varnavides --n 120 --m 4 --source greedy --seed 7"}) {
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("help exits cleanly, unknown flags do not") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("r3 --n 5 --bogus-flag").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
}
