// End-to-end tests driving the installed CLI binary through popen. The
// binary path arrives via the FILT_CLI_BIN compile definition.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "filt/filtered_space.hpp"
#include "filt/io.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FILT_CLI_BIN) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

// Writes the shared fixture files once and hands out their directory.
const fs::path& fixture_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "filt-cli-fixtures";
    fs::create_directories(d);
    auto put = [&](const char* name, const std::string& text) {
      std::ofstream out(d / name, std::ios::binary | std::ios::trunc);
      out << text;
    };
    put("two_point.json", R"({
      "vertices": ["a", "b"],
      "dimension_cap": 1,
      "simplices": [
        {"vertices": ["a"], "value": 0},
        {"vertices": ["b"], "value": 0},
        {"vertices": ["a", "b"], "value": 1}
      ]
    })");
    put("one_point.json", R"({
      "vertices": ["c"],
      "dimension_cap": 0,
      "simplices": [{"vertices": ["c"], "value": 0}]
    })");
    put("line3.csv",
        "p, q, r\n"
        "0, 1, 2\n"
        "1, 0, 1\n"
        "2, 1, 0\n");
    put("seg_long.json", R"({"points": ["s", "t"], "dist": [[0, 1.0], [1.0, 0]]})");
    put("seg_short.json", R"({"points": ["u", "v"], "dist": [[0, 0.5], [0.5, 0]]})");
    put("dgm_pair.json", R"([
      {"degree": 0, "points": [{"birth": 0, "death": 2}]},
      {"degree": 1, "points": []}
    ])");
    put("dgm_pair_shift.json", R"([
      {"degree": 0, "points": [{"birth": 0.5, "death": 2}]},
      {"degree": 1, "points": []}
    ])");
    put("map.json", R"({
      "vertices": ["u", "v", "w"],
      "assignment": {"u": "a", "v": "b", "w": "a"}
    })");
    put("corr.json", R"([["a", "c"], ["b", "c"]])");
    put("bad.json", "this is not json");
    return d;
  }();
  return dir;
}

std::string arg(const char* name) { return (fixture_dir() / name).string(); }

}  // namespace

TEST_CASE("persist prints the diagram list") {
  const auto run = run_cli("persist " + arg("two_point.json"));
  REQUIRE(run.exit_code == 0);
  const auto list = filt::parse_diagram_list(run.output);
  REQUIRE(list.size() == 2);
  CHECK(list[0].degree == 0);
  REQUIRE(list[0].points.size() == 2);
  CHECK(list[0].points[0].death == 1.0);
  CHECK(std::isinf(list[0].points[1].death));
  CHECK(list[1].points.empty());

  const auto top_only = run_cli("persist " + arg("two_point.json") + " --kmax 0");
  REQUIRE(top_only.exit_code == 0);
  CHECK(filt::parse_diagram_list(top_only.output).size() == 1);
}

TEST_CASE("df reports the exact value and every minimizer") {
  const auto run = run_cli("df " + arg("two_point.json") + " " + arg("one_point.json"));
  REQUIRE(run.exit_code == 0);
  const auto j = ordered_json::parse(run.output);
  CHECK(j.at("value").get<double>() == 1.0);
  REQUIRE(j.at("minimizers").size() == 1);
  CHECK(j.at("minimizers")[0] == ordered_json::parse(R"([["a","c"],["b","c"]])"));
}

TEST_CASE("df heuristic reports a witness for its bound") {
  const auto run = run_cli("df " + arg("two_point.json") + " " + arg("one_point.json") +
                           " --heuristic 50 --seed 3");
  REQUIRE(run.exit_code == 0);
  const auto j = ordered_json::parse(run.output);
  // only one correspondence exists here, so the bound is the exact value
  CHECK(j.at("value").get<double>() == 1.0);
  CHECK(j.at("witness") == ordered_json::parse(R"([["a","c"],["b","c"]])"));
  CHECK(j.at("budget").get<int>() == 50);
}

TEST_CASE("bottleneck compares the selected degree") {
  const auto run = run_cli("bottleneck " + arg("dgm_pair.json") + " " +
                           arg("dgm_pair_shift.json") + " --degree 0");
  REQUIRE(run.exit_code == 0);
  const auto j = ordered_json::parse(run.output);
  CHECK(j.at("value").get<double>() == 0.5);
  CHECK(j.at("certificate") == ordered_json::parse("[[0,0]]"));

  // several diagrams and no degree: the choice is ambiguous
  const auto ambiguous =
      run_cli("bottleneck " + arg("dgm_pair.json") + " " + arg("dgm_pair_shift.json"));
  CHECK(ambiguous.exit_code == 2);
  CHECK(ambiguous.output.find("--degree") != std::string::npos);
}

TEST_CASE("rips and cech build filtrations from a CSV metric") {
  const auto rips = run_cli("rips " + arg("line3.csv"));
  REQUIRE(rips.exit_code == 0);
  const auto rips_space = filt::parse_filtered_space(rips.output);
  CHECK(rips_space.dimension_cap() == 2);
  CHECK(rips_space.value(filt::Simplex({0, 2})) == 2.0);
  CHECK(rips_space.value(filt::Simplex({0, 1, 2})) == 2.0);

  const auto cech = run_cli("cech " + arg("line3.csv") + " --cap 2");
  REQUIRE(cech.exit_code == 0);
  const auto cech_space = filt::parse_filtered_space(cech.output);
  // the middle point witnesses both the long edge and the triple at radius 1
  CHECK(cech_space.value(filt::Simplex({0, 2})) == 1.0);
  CHECK(cech_space.value(filt::Simplex({0, 1, 2})) == 1.0);
}

TEST_CASE("gh matches the two-point closed form") {
  const auto run = run_cli("gh " + arg("seg_long.json") + " " + arg("seg_short.json"));
  REQUIRE(run.exit_code == 0);
  const auto j = ordered_json::parse(run.output);
  CHECK(j.at("value").get<double>() == 0.25);
  CHECK(j.at("minimizers").size() >= 1);
}

TEST_CASE("pullback rebuilds the space over the source vertices") {
  const auto run = run_cli("pullback " + arg("two_point.json") + " " + arg("map.json"));
  REQUIRE(run.exit_code == 0);
  const auto space = filt::parse_filtered_space(run.output);
  CHECK(space.vertex_count() == 3);
  CHECK(space.vertex_names() == std::vector<std::string>{"u", "v", "w"});
  // u and w both land on a, so their edge inherits the vertex value
  CHECK(space.value(filt::Simplex({0, 2})) == 0.0);
  CHECK(space.value(filt::Simplex({0, 1})) == 1.0);
  CHECK(space.value(filt::Simplex({0, 1, 2})) == 1.0);

  const auto capped = run_cli("pullback " + arg("two_point.json") + " " + arg("map.json") +
                              " --cap 1");
  REQUIRE(capped.exit_code == 0);
  CHECK(filt::parse_filtered_space(capped.output).dimension_cap() == 1);
}

TEST_CASE("geodesic-length strengthens the naive lower bound") {
  const auto run = run_cli("geodesic-length " + arg("two_point.json") + " " +
                           arg("one_point.json") + " --tol 0.1 --max-depth 8");
  REQUIRE(run.exit_code == 0);
  const auto j = ordered_json::parse(run.output);
  CHECK(j.at("degree").get<int>() == 0);
  CHECK(j.at("df").get<double>() == 1.0);
  CHECK(j.at("value").get<double>() == 0.9375);
  CHECK(j.at("depth").get<int>() == 3);
  CHECK(j.at("converged").get<bool>() == true);

  const auto pinned = run_cli("geodesic-length " + arg("two_point.json") + " " +
                              arg("one_point.json") + " --tol 0.1 --max-depth 8" +
                              " --correspondence " + arg("corr.json"));
  REQUIRE(pinned.exit_code == 0);
  const auto k = ordered_json::parse(pinned.output);
  CHECK(k.at("value").get<double>() == 0.9375);
  CHECK(k.at("correspondence") == ordered_json::parse(R"([["a","c"],["b","c"]])"));
}

TEST_CASE("verify prints a report and exits clean when it passes") {
  const auto run = run_cli("verify stability --trials 3 --seed 1");
  REQUIRE(run.exit_code == 0);
  CHECK(run.output.find("\"passed\": true") != std::string::npos);
  CHECK(run.output.find("\"suite\": \"stability\"") != std::string::npos);

  const auto unknown = run_cli("verify everything --trials 3");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output.find("unknown suite") != std::string::npos);
}

TEST_CASE("bad usage and bad input exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("persist --bogus x.json").exit_code == 2);

  const auto missing = run_cli("persist /nonexistent/space.json");
  CHECK(missing.exit_code == 2);
  CHECK(missing.output.find("cannot read file") != std::string::npos);

  const auto malformed = run_cli("persist " + arg("bad.json"));
  CHECK(malformed.exit_code == 2);
  CHECK(malformed.output.find("error:") != std::string::npos);
}

TEST_CASE("help exits zero") {
  const auto run = run_cli("--help");
  CHECK(run.exit_code == 0);
  CHECK(run.output.find("persist") != std::string::npos);
  const auto sub = run_cli("df --help");
  CHECK(sub.exit_code == 0);
  CHECK(sub.output.find("--heuristic") != std::string::npos);
}
