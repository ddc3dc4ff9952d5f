#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bimod/cli.hpp"

using namespace bimod;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("bimod-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kNestDoc = R"({"rows": 2, "cols": 2, "entries": [[0,0],[0,1],[1,1]]})";

}  // namespace

TEST_CASE("analyze a nest pattern document") {
  TempDir dir;
  const auto path = dir.file("nest.json", kNestDoc);
  const CliResult r = run({"analyze", "--input", path});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["analysis"]["delta"]["entries"] == json::parse("[[0,0],[1,1]]"));
  CHECK(report["analysis"]["u0"]["entries"] == json::parse("[[0,1]]"));
  CHECK(report["analysis"]["atoms"].size() == 2);
  CHECK(report["analysis"]["blocks"].size() == 2);
  CHECK(report["input_digest"].get<std::string>().substr(0, 4) == "2x2:");
}

TEST_CASE("analyze an empty pattern document") {
  TempDir dir;
  const auto path = dir.file("empty.json", R"({"rows": 2, "cols": 3, "entries": []})");
  const CliResult r = run({"analyze", "--input", path});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["analysis"]["delta"]["entries"].empty());
  CHECK(report["analysis"]["u0"]["entries"].empty());
  CHECK(report["analysis"]["atoms"].empty());
}

TEST_CASE("analyze a grid document") {
  TempDir dir;
  const auto path = dir.file("zd.json", R"({"grid": ["011", "101", "110"]})");
  const CliResult r = run({"analyze", "--input", path});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["analysis"]["delta"]["entries"].empty());
  CHECK(report["analysis"]["u0"]["entries"].size() == 6);
  CHECK(report["analysis"]["chi_i"].empty());
}

TEST_CASE("analyze text format") {
  TempDir dir;
  const auto path = dir.file("nest.json", kNestDoc);
  const CliResult r = run({"analyze", "--input", path, "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("delta {(0,0),(1,1)}") != std::string::npos);
  CHECK(r.out.find("u0 {(0,1)}") != std::string::npos);
}

TEST_CASE("malformed documents exit 2") {
  TempDir dir;
  CHECK(run({"analyze", "--input", dir.file("bad.json", "{nope")}).code == 2);
  CHECK(run({"analyze", "--input",
             dir.file("both.json",
                      R"({"rows":1,"cols":1,"entries":[],"grid":["1"]})")})
            .code == 2);
  CHECK(run({"analyze", "--input",
             dir.file("range.json", R"({"rows":2,"cols":2,"entries":[[5,0]]})")})
            .code == 2);
  CHECK(run({"analyze", "--input", (dir.path / "missing.json").string()}).code == 2);
  CHECK(run({"analyze"}).code == 2);  // --input required
  CHECK(run({"bogus-subcommand"}).code == 2);
}

TEST_CASE("verify a pattern document") {
  TempDir dir;
  const auto path = dir.file("nest.json", kNestDoc);
  const CliResult r = run({"verify", "--input", path});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["verifier_reports"].size() == 18);
  CHECK(report["failures"] == 0);
  for (const auto& rep : report["verifier_reports"]) CHECK(rep["passed"] == true);
}

TEST_CASE("verify a TRO document appends the rectangle checks") {
  TempDir dir;
  const auto path =
      dir.file("tro.json", R"({"rows": 2, "cols": 2, "entries": [[0,0],[1,1]]})");
  const CliResult r = run({"verify", "--input", path});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["verifier_reports"].size() == 22);
}

TEST_CASE("verify a lattice document") {
  TempDir dir;
  const auto path =
      dir.file("chain.json", R"({"universe": 3, "generators": [[0], [0, 1]]})");
  const CliResult r = run({"verify", "--input", path});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["failures"] == 0);
  // 18 bimodule checks on the algebra pattern plus 6 lattice checks.
  CHECK(report["verifier_reports"].size() == 24);
}

TEST_CASE("verify random mode") {
  const CliResult r = run({"verify", "--random", "--seed", "42", "--count", "25",
                           "--max-rows", "6", "--max-cols", "6", "--density", "0.3"});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["summary"]["instances_run"] == 25);
  CHECK(report["summary"]["failures"] == 0);

  const CliResult empty = run({"verify", "--random", "--count", "0"});
  CHECK(empty.code == 0);
  CHECK(json::parse(empty.out)["summary"]["instances_run"] == 0);

  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "--random", "--input", "x.json"}).code == 2);
  CHECK(run({"verify", "--random", "--density", "7"}).code == 2);
}

TEST_CASE("csl subcommand") {
  TempDir dir;
  const auto chain =
      dir.file("chain.json", R"({"universe": 3, "generators": [[0], [0, 1]]})");
  const CliResult r = run({"csl", "--input", chain});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["analysis"]["rad"]["entries"] == json::parse("[[0,1],[0,2],[1,2]]"));
  CHECK(report["analysis"]["j"] == report["analysis"]["rad"]);

  const auto trivial = dir.file("trivial.json", R"({"universe": 3, "generators": []})");
  const CliResult t = run({"csl", "--input", trivial});
  REQUIRE(t.code == 0);
  CHECK(json::parse(t.out)["analysis"]["alg"]["entries"].size() == 9);

  const auto ortho =
      dir.file("ortho.json", R"({"universe": 2, "generators": [[0], [1]]})");
  const CliResult o = run({"csl", "--input", ortho});
  REQUIRE(o.code == 0);
  const json oj = json::parse(o.out);
  CHECK(oj["analysis"]["rad"]["entries"].empty());
  CHECK(oj["analysis"]["commutant"]["cells"].size() == 2);

  CHECK(run({"csl", "--input", dir.file("bad.json", R"({"universe": 2})")}).code == 2);
}

TEST_CASE("random subcommand round-trips through analyze") {
  TempDir dir;
  const auto out_path = (dir.path / "pat.json").string();
  REQUIRE(run({"random", "--seed", "7", "--max-rows", "4", "--max-cols", "4",
               "--density", "1.0", "--out", out_path})
              .code == 0);
  std::ifstream in(out_path);
  const json doc = json::parse(in);
  CHECK(doc["entries"].size() == 16);  // density 1 fills the pattern

  const CliResult analyzed = run({"analyze", "--input", out_path});
  CHECK(analyzed.code == 0);

  const auto out0 = (dir.path / "p0.json").string();
  REQUIRE(run({"random", "--seed", "9", "--max-rows", "5", "--max-cols", "3",
               "--density", "0.0", "--out", out0})
              .code == 0);
  std::ifstream in0(out0);
  CHECK(json::parse(in0)["entries"].empty());

  // Same seed, same bytes.
  const auto a = (dir.path / "a.json").string();
  const auto b = (dir.path / "b.json").string();
  for (const auto& p : {a, b})
    REQUIRE(run({"random", "--seed", "123", "--max-rows", "6", "--max-cols", "6",
                 "--density", "0.4", "--out", p})
                .code == 0);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());

  CHECK(run({"random", "--seed", "1", "--max-rows", "2", "--max-cols", "2",
             "--density", "0.5", "--out", (dir.path / "nodir" / "x.json").string()})
            .code == 2);
}

TEST_CASE("analysis JSON re-parses to the same analysis") {
  TempDir dir;
  const auto path = dir.file("nest.json", kNestDoc);
  const json first = json::parse(run({"analyze", "--input", path}).out);

  // Feed the serialized pattern back in; the whole analysis must reproduce.
  const auto echoed = dir.file("echo.json", first["analysis"]["pattern"].dump());
  const json second = json::parse(run({"analyze", "--input", echoed}).out);
  CHECK(first["analysis"] == second["analysis"]);
  CHECK(first["input_digest"] == second["input_digest"]);
}

TEST_CASE("reports are deterministic apart from timings") {
  TempDir dir;
  const auto path = dir.file("nest.json", kNestDoc);
  json a = json::parse(run({"analyze", "--input", path}).out);
  json b = json::parse(run({"analyze", "--input", path}).out);
  a.erase("timings");
  b.erase("timings");
  CHECK(a == b);

  json va = json::parse(run({"verify", "--input", path, "--seed", "5"}).out);
  json vb = json::parse(run({"verify", "--input", path, "--seed", "5"}).out);
  va.erase("timings");
  vb.erase("timings");
  CHECK(va == vb);
}

TEST_CASE("help exits zero") {
  CHECK(run({"--help"}).code == 0);
}
