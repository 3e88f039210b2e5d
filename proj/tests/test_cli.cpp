#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "transferkit/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = transferkit::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream f(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    files[e.path().filename().string()] = ss.str();
  }
  return files;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("transferkit-cli-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("transfer commands and exit codes") {
    Run r = cli({"transfer", "enumerate", "--group", "C_4"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 5);
    CHECK(j["disklike_count"] == 4);

    r = cli({"transfer", "disklike", "--group", "C_4", "--pairs", "[[0,1]]"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["disklike"] == false);

    CHECK(cli({"transfer", "disklike", "--group", "C_4", "--pairs", "[]"}).code == 0);
    CHECK(cli({"transfer", "check", "--group", "C_6", "--pairs", "[[2,3]]"}).code == 1);
    CHECK(cli({"transfer", "check", "--group", "C_4", "--pairs", "[[0,9]]"}).code == 2);
    CHECK(cli({"transfer", "check", "--group", "C_4", "--pairs", "[[0,1"}).code == 2);
    CHECK(cli({"transfer", "enumerate", "--group", "Q_99"}).code == 2);
    CHECK(cli({"transfer", "frobnicate", "--group", "C_4"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"transfer", "complete", "--group", "C_6", "--pairs", "[[2,3]]"}).code == 0);
  }

  TEST_CASE("hasse output") {
    Run r = cli({"transfer", "hasse", "--group", "S_3"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("digraph", 0) == 0);
    std::size_t nodes = 0, filled = 0, pos = 0;
    while ((pos = r.out.find("label=", pos)) != std::string::npos) ++nodes, ++pos;
    pos = 0;
    while ((pos = r.out.find("fillcolor=lightblue", pos)) != std::string::npos) ++filled, ++pos;
    CHECK(nodes == 9);
    CHECK(filled == 6);
  }

  TEST_CASE("family, universe, gset, indexing and segal commands") {
    Run r = cli({"family", "check", "--group", "S_3", "--members", "[1,2,3,5]"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["excess"] == json::array({0}));
    CHECK(cli({"family", "generate", "--group", "S_3", "--members", "[1]"}).code == 0);
    CHECK(cli({"family", "census", "--group", "C_4"}).code == 0);
    CHECK(cli({"family", "phi", "--group", "C_4", "--pairs", "[[0,1]]"}).code == 1);
    CHECK(cli({"universe", "system", "--group", "C_5", "--irreps", "[\"trivial\",\"V(1)\"]"}).code == 0);
    CHECK(cli({"universe", "lattice", "--group", "C_6"}).code == 0);
    CHECK(cli({"universe", "lattice", "--group", "S_3"}).code == 2);
    CHECK(cli({"gset", "double-coset", "--group", "S_3", "--subgroup", "1", "--k", "1"}).code == 0);
    CHECK(cli({"gset", "random", "--group", "D_4", "--size", "5", "--seed", "3"}).code == 0);
    CHECK(cli({"gset", "random", "--group", "D_4", "--size", "5", "--seed", "3"}).out ==
          cli({"gset", "random", "--group", "D_4", "--size", "5", "--seed", "3"}).out);
    CHECK(cli({"indexing", "verify", "--group", "C_4", "--pairs", "[[0,1]]"}).code == 0);
    CHECK(cli({"indexing", "level", "--group", "C_2", "--pairs", "[[0,1]]", "--subgroup", "1", "--bound", "2"}).code == 0);
    CHECK(cli({"segal", "mackey", "--group", "C_6", "--pairs", "[[2,3],[0,1]]", "--carrier", "Z/4"}).code == 0);
    CHECK(cli({"segal", "certify", "--group", "C_1", "--permcat", "skeletal", "--n", "2"}).code == 0);
    Run broken = cli({"segal", "certify", "--group", "C_1", "--permcat", "broken", "--n", "2"});
    CHECK(broken.code == 1);
    CHECK(json::parse(broken.out)["failure"].get<std::string>().find("P4 unit-normalization") != std::string::npos);
    CHECK(cli({"segal", "xm", "--group", "S_3", "--carrier", "all"}).code == 0);
    CHECK(cli({"segal", "xm", "--group", "C_2", "--carrier", "Z/5"}).code == 2);
    CHECK(cli({"gset", "describe", "--group", "C_2", "--gset", R"({"size": 3, "based": true, "generators": {"1": [0, 2, 1]}})"})
              .code == 0);
    CHECK(cli({"gset", "describe", "--group", "C_2", "--gset", R"({"size": 3)"}).code == 2);
  }

  TEST_CASE("artifacts are deterministic across worker counts") {
    setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    const std::vector<std::vector<std::string>> commands = {
        {"transfer", "enumerate", "--group", "D_4"},
        {"transfer", "hasse", "--group", "C_12"},
        {"family", "census", "--group", "D_4"},
        {"universe", "lattice", "--group", "C_12"},
        {"indexing", "verify", "--group", "C_6", "--pairs", "[[2,3],[0,1]]"},
        {"segal", "mackey", "--group", "C_6", "--pairs", "[[0,1],[0,2],[0,3]]", "--carrier", "all"},
    };
    int idx = 0;
    for (auto cmd : commands) {
      std::map<std::string, std::string> first;
      for (const char* jobs : {"1", "4", "1"}) {
        fs::path dir = scratch(std::to_string(idx) + "-" + jobs);
        auto args = cmd;
        args.insert(args.end(), {"--jobs", jobs, "--out", dir.string()});
        REQUIRE(cli(args).code == 0);
        auto files = read_dir(dir);
        REQUIRE(files.count("run.json"));
        json run = json::parse(files["run.json"]);
        CHECK(run["timestamp"] == "2023-11-14T22:13:20Z");
        CHECK(run["group_hash"].get<std::string>().size() == 64);
        files.erase("run.json");
        files["digest"] = run["result_digest"];
        if (first.empty())
          first = files;
        else
          CHECK(files == first);
        fs::remove_all(dir);
      }
      ++idx;
    }
    // Identical commands give identical run records.
    fs::path a = scratch("same"), b = scratch("same2");
    cli({"transfer", "enumerate", "--group", "C_6", "--out", a.string()});
    auto fa = read_dir(a);
    fs::rename(a, b);
    cli({"transfer", "enumerate", "--group", "C_6", "--out", a.string()});
    CHECK(read_dir(a) == fa);
    fs::remove_all(a);
    fs::remove_all(b);
    unsetenv("SOURCE_DATE_EPOCH");
  }
}
