#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "bcproof/io.hpp"
#include "cli.hpp"

using namespace bcproof;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "bcproof");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("bcproof_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

}  // namespace

TEST_CASE("gen, prove, verify pipeline") {
  TempDir dir;
  REQUIRE(run({"gen", "jeroslow", "--n", "5", "--out", dir / "j5.json"}).code == kExitOk);
  const auto proved = run({"prove", dir / "j5.json", "--strategy", "cg-single", "--out", dir / "p.json"});
  REQUIRE(proved.code == kExitOk);
  const auto verified = run({"verify", dir / "p.json"});
  CHECK(verified.code == kExitOk);
  CHECK(parse(verified.out)["size"] == 2);
  CHECK(parse(verified.out)["accepted"] == true);
}

TEST_CASE("every emitted proof verifies") {
  TempDir dir;
  REQUIRE(run({"gen", "jeroslow", "--n", "3", "--out", dir / "j3.json"}).code == kExitOk);
  REQUIRE(run({"gen", "cks", "--h", "10", "--out", dir / "cks.json"}).code == kExitOk);
  for (const char* strategy : {"variable", "cg-single", "cg-only", "lift-project"}) {
    CAPTURE(strategy);
    REQUIRE(run({"prove", dir / "j3.json", "--strategy", strategy, "--out", dir / "p.json"}).code == kExitOk);
    CHECK(run({"verify", dir / "p.json"}).code == kExitOk);
    for (const char* op : {"cp-to-bb", "bc-to-bb", "objective-variable"}) {
      CAPTURE(op);
      REQUIRE(run({"transform", dir / "p.json", "--op", op, "--out", dir / "t.json"}).code == kExitOk);
      CHECK(run({"verify", dir / "t.json"}).code == kExitOk);
    }
    REQUIRE(run({"transform", dir / "p.json", "--op", "embed", "--extra-int", "1", "--extra-cont", "2", "--out",
                 dir / "e.json"})
                .code == kExitOk);
    CHECK(run({"verify", dir / "e.json"}).code == kExitOk);
  }
  REQUIRE(run({"prove", dir / "cks.json", "--out", dir / "c.json"}).code == kExitOk);
  CHECK(run({"verify", dir / "c.json"}).code == kExitOk);

  const auto searched = run({"search", dir / "j3.json", "--s", "2", "--witness", dir / "w.json"});
  REQUIRE(searched.code == kExitOk);
  CHECK(parse(searched.out)["lower"] == 7);
  CHECK(run({"verify", dir / "w.json"}).code == kExitOk);
}

TEST_CASE("tampered proof is rejected and the node is named") {
  TempDir dir;
  REQUIRE(run({"gen", "jeroslow", "--n", "5", "--out", dir / "j5.json"}).code == kExitOk);
  REQUIRE(run({"prove", dir / "j5.json", "--strategy", "cg-single", "--out", dir / "p.json"}).code == kExitOk);
  auto doc = nlohmann::ordered_json::parse(read_file(dir / "p.json"));
  doc["proof"]["nodes"][0]["cut"]["halfspace"]["rhs"] = "1";
  write_file(dir / "bad.json", doc.dump(2));
  const auto r = run({"verify", dir / "bad.json"});
  CHECK(r.code == kExitRejected);
  CHECK(parse(r.out)["node"] == 0);
  CHECK(parse(r.out)["accepted"] == false);

  // The transform refuses unverified input with the same exit code.
  CHECK(run({"transform", dir / "bad.json"}).code == kExitRejected);
}

TEST_CASE("malformed input and budgets") {
  TempDir dir;
  write_file(dir / "broken.json", "{\"format_version\": 1, \"proof\": ");
  const auto broken = run({"verify", dir / "broken.json"});
  CHECK(broken.code == kExitMalformed);
  CHECK(parse(broken.err)["error"] == "schema");

  CHECK(run({"verify", dir / "missing.json"}).code == kExitMalformed);
  CHECK(run({"gen", "jeroslow", "--n", "4"}).code == kExitMalformed);
  CHECK(run({"gen", "nothing"}).code == kExitMalformed);
  CHECK(run({}).code == kExitMalformed);
  CHECK(run({"prove", "x.json", "--no-such-flag"}).code == kExitMalformed);

  REQUIRE(run({"gen", "jeroslow", "--n", "7", "--out", dir / "j7.json"}).code == kExitOk);
  const auto tight = run({"prove", dir / "j7.json", "--budget", "5"});
  CHECK(tight.code == kExitBudget);
  CHECK(parse(tight.err)["error"] == "budget");
  CHECK(run({"search", dir / "j7.json", "--s", "1", "--budget", "3"}).code == kExitBudget);
}

TEST_CASE("lp, count and experiment subcommands") {
  TempDir dir;
  REQUIRE(run({"gen", "triangle", "--h", "4", "--out", dir / "t.json"}).code == kExitOk);
  const auto lp = parse(run({"lp", dir / "t.json"}).out);
  CHECK(lp["status"] == "optimal");
  CHECK(lp["value"] == "4");
  CHECK(lp["certificate_ok"] == true);

  CHECK(parse(run({"count", "p-bound", "--n", "7", "--t", "2"}).out)["p_bound"] == "20");
  CHECK(parse(run({"count", "vd", "--n", "5", "--pi", "1,1,1,1,1", "--pi0", "2"}).out)["count"] == 30);
  CHECK(parse(run({"count", "sperner", "--w", "1,1,1,1", "--target", "2"}).out)["count"] == 6);

  const auto csv = run({"experiment", "vD-bound", "--n", "7", "--B", "2"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out.rfind("t,max_observed,p_bound,pass\n", 0) == 0);
  CHECK(run({"experiment", "--list"}).out.find("lp-oracle") != std::string::npos);
  CHECK(run({"experiment", "nope"}).code == kExitMalformed);
  const auto cks = run({"experiment", "cks-branching", "--h", "1,10"});
  CHECK(cks.out == "h,size,verified,pass\n1,5,true,true\n10,5,true,true\n");
}
