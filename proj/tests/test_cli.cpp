#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

const char* kCli = DERANGEKIT_CLI_PATH;
const char* kFixtureDir = DERANGEKIT_FIXTURE_DIR;

struct RunResult {
  int exit_code;
  std::string output;
};

// Runs the CLI and captures one stream. `merge_stderr` folds diagnostics
// into the captured output; otherwise stderr is discarded.
RunResult run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(kCli) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("count by family") {
  RunResult r = run("count --family d11 --m 2 --n 4 --k 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "12\n");
}

TEST_CASE("count from a constraint file") {
  fs::path p = write_temp(
      "derangekit_cli_sys.json",
      R"({"m":3,"n":3,"class":"functions","constraints":[
          {"x":[1],"y":[1,2],"relation":"containment"},
          {"x":[2,3],"y":[2],"relation":"containment"}]})");
  RunResult r = run("count --system " + p.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output == "8\n");
  RunResult o = run("oracle --system " + p.string());
  CHECK(o.exit_code == 0);
  CHECK(o.output == r.output);
}

TEST_CASE("domain errors exit 1 and keep stdout clean") {
  RunResult r = run("count --family d12 --m 1 --n 1 --k 1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.empty());
  RunResult e = run("count --family d12 --m 1 --n 1 --k 1", true);
  CHECK(e.output.find("n must be at least 2") != std::string::npos);
}

TEST_CASE("oracle matches count on family points") {
  for (const char* args :
       {"--family d11 --m 3 --n 3 --k 2", "--family d21 --m 4 --n 3 --k 2",
        "--family s22 --m 4 --n 2 --k 2", "--family i1 --m 4 --n 4 --k 4"}) {
    RunResult c = run(std::string("count ") + args);
    RunResult o = run(std::string("oracle ") + args);
    CHECK(c.exit_code == 0);
    CHECK(o.exit_code == 0);
    CHECK(c.output == o.output);
  }
  RunResult blocks = run("oracle --family blockderange --n 2 --k 2");
  CHECK(blocks.output == "20\n");
  CHECK(run("count --family blockderange --n 2 --k 2").output == blocks.output);
}

TEST_CASE("oracle rejects spaces beyond the budget") {
  RunResult r = run("oracle --family d11 --m 20 --n 10 --k 1", true);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("exceeds budget") != std::string::npos);
}

TEST_CASE("unconstrained oracle count") {
  fs::path p = write_temp("derangekit_cli_empty.json",
                          R"({"m":2,"n":3,"class":"functions","constraints":[]})");
  RunResult r = run("oracle --system " + p.string());
  CHECK(r.output == "9\n");
}

TEST_CASE("injections with containment have no formula but enumerate fine") {
  fs::path p = write_temp(
      "derangekit_cli_injcont.json",
      R"({"m":2,"n":3,"class":"injections","constraints":[
          {"x":[1],"y":[1],"relation":"containment"}]})");
  RunResult c = run("count --system " + p.string(), true);
  CHECK(c.exit_code == 1);
  CHECK(c.output.find("no counting formula") != std::string::npos);
  RunResult o = run("oracle --system " + p.string());
  CHECK(o.exit_code == 0);
  CHECK(o.output == "4\n");  // 6 injections, 2 start at value 1
}

TEST_CASE("seq prints index-value lines from a table row") {
  RunResult r = run("seq --table 1 --row 2 --from 1 --count 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "1 0\n2 2\n3 6\n4 12\n5 20\n");
}

TEST_CASE("seq on the one-off-diagonal injection row") {
  RunResult r = run("seq --table 5 --row 5 --from 1 --count 4");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "1 0\n2 1\n3 4\n4 18\n");
}

TEST_CASE("seq with an explicit family binding") {
  RunResult r = run("seq --family i1 --m n --n n --k n --from 1 --count 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "1 0\n2 1\n3 2\n4 9\n5 44\n");
  RunResult twice = run("seq --family i1 --n 2n --k 1 --from 1 --count 3");
  CHECK(twice.exit_code == 0);
  CHECK(twice.output == "1 1\n2 9\n3 100\n");
}

TEST_CASE("seq refuses the malformed row but names the escape hatch") {
  RunResult r = run("seq --table 2 --row 9 --from 2 --count 3", true);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("malformed A-number") != std::string::npos);
  CHECK(r.output.find("--family") != std::string::npos);
}

TEST_CASE("seq usage errors exit 2") {
  CHECK(run("seq --table 1 --row 99").exit_code == 2);
  CHECK(run("seq --table 9 --row 1").exit_code == 2);
  CHECK(run("seq").exit_code == 2);
  CHECK(run("seq --table note2 --row 1").exit_code == 2);
}

TEST_CASE("verify exits 0 on clean tables and 3 on mismatches") {
  const std::string common =
      std::string(" --offline --fixtures ") + kFixtureDir +
      " --cache-dir /nonexistent/derangekit-cli-cache";
  RunResult clean = run("verify --tables 2" + common);
  CHECK(clean.exit_code == 0);
  CHECK(clean.output.find("2 9 A0002444 unverifiable") != std::string::npos);
  CHECK(clean.output.find("malformed") != std::string::npos);

  RunResult flagged = run("verify --tables 5" + common);
  CHECK(flagged.exit_code == 3);
  CHECK(flagged.output.find("5 26 A001563 mismatch") != std::string::npos);

  RunResult note2 = run("verify --tables note2" + common);
  CHECK(note2.exit_code == 0);
}

TEST_CASE("catalog dumps machine-readable JSON") {
  RunResult r = run("catalog");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j.is_array());
  CHECK(j.size() == 92);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("nonsense", true).exit_code == 2);
  CHECK(run("count", true).exit_code == 2);  // neither --family nor --system
  CHECK(run("count --family d11 --m 1 --n 1 --k 0 --system x.json", true)
            .exit_code == 2);
  CHECK(run("count --family zzz --m 1 --n 1 --k 0", true).exit_code == 2);
}
