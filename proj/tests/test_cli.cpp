#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "srcs/json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace srcs;

namespace {

const std::string kCli = SRCS_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("srcs_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string &name) const {
    return (path / name).string();
  }
};

int run(const std::string &args) {
  int rc = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

const char *kInstance = R"({"m": 2, "R": 4,
  "jobs": [{"id": 0, "p": "2", "r": 2}, {"id": 1, "p": "3/2", "r": 3},
           {"id": 2, "p": "1", "r": 0}]})";

}  // namespace

TEST_CASE("solve then verify round trips through files") {
  TempDir tmp;
  write_file(tmp.file("ins.json"), kInstance);
  for (const std::string algo : {"greedy", "aptas", "three-halves"}) {
    std::string sched = tmp.file("sched_" + algo + ".json");
    CHECK(run("solve --in " + tmp.file("ins.json") + " --algo " + algo +
              " --eps 1/2 --out " + sched) == 0);
    CHECK(fs::exists(sched));
    CHECK(fs::exists(sched + ".cert.json"));
    CHECK(run("verify --in " + tmp.file("ins.json") + " --schedule " + sched) ==
          0);
  }
}

TEST_CASE("malformed input exits with code 2") {
  TempDir tmp;
  write_file(tmp.file("bad.json"), "{nope");
  CHECK(run("solve --in " + tmp.file("bad.json") + " --algo greedy") == 2);
  CHECK(run("solve --in " + tmp.file("missing.json") + " --algo greedy") == 2);
  write_file(tmp.file("ins.json"), kInstance);
  CHECK(run("solve --in " + tmp.file("ins.json") + " --algo nosuch") == 2);
}

TEST_CASE("verify flags an infeasible schedule") {
  TempDir tmp;
  write_file(tmp.file("ins.json"), kInstance);
  write_file(tmp.file("bad_sched.json"),
             R"({"starts": {"0": "0", "1": "0", "2": "0"}})");
  CHECK(run("verify --in " + tmp.file("ins.json") + " --schedule " +
            tmp.file("bad_sched.json")) == 1);
}

TEST_CASE("oracle prints the optimum for small instances") {
  TempDir tmp;
  write_file(tmp.file("ins.json"), kInstance);
  CHECK(run("oracle --in " + tmp.file("ins.json") + " --out " +
            tmp.file("opt.json")) == 0);
  CHECK(run("verify --in " + tmp.file("ins.json") + " --schedule " +
            tmp.file("opt.json")) == 0);
}

TEST_CASE("gantt renders SVG and refuses infeasible schedules") {
  TempDir tmp;
  write_file(tmp.file("ins.json"), kInstance);
  CHECK(run("solve --in " + tmp.file("ins.json") +
            " --algo greedy --out " + tmp.file("s.json")) == 0);
  CHECK(run("gantt --in " + tmp.file("ins.json") + " --schedule " +
            tmp.file("s.json") + " --out " + tmp.file("out.svg")) == 0);
  std::string svg = read_file(tmp.file("out.svg"));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<rect") != std::string::npos);

  write_file(tmp.file("bad_sched.json"),
             R"({"starts": {"0": "0", "1": "0", "2": "0"}})");
  CHECK(run("gantt --in " + tmp.file("ins.json") + " --schedule " +
            tmp.file("bad_sched.json") + " --out " + tmp.file("bad.svg")) == 2);
}

TEST_CASE("bench emits the documented CSV, dumps instances, and is deterministic") {
  TempDir tmp;
  std::string common = "bench --family uniform --count 4 --n-min 1 --n-max 5 "
                       "--seed 9 --eps 1/2 --stable-time --dump-dir " +
                       tmp.file("dump");
  CHECK(run(common + " --out " + tmp.file("a.csv")) == 0);
  CHECK(run(common + " --out " + tmp.file("b.csv")) == 0);
  std::string a = read_file(tmp.file("a.csv"));
  CHECK(a == read_file(tmp.file("b.csv")));
  CHECK(a.rfind("instance,algo,eps,makespan,lowerT,oracleOpt,ratio,seconds\n",
                0) == 0);
  CHECK(fs::exists(tmp.file("dump") + "/uniform-0.json"));

  // a dumped instance parses back
  Instance ins = instance_from_json(read_file(tmp.file("dump") + "/uniform-0.json"));
  CHECK(ins.m == 3);
}
