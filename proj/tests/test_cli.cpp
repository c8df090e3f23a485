#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const char* cli = DAGSCHED_CLI_PATH;

int run(const std::string& args) {
  std::string cmd = std::string(cli) + " " + args + " >/dev/null 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dagsched-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("version and bad arguments") {
  CHECK(run("--version") == 0);
  CHECK(run("frobnicate") != 0);
}

TEST_CASE("build: valid file succeeds, invalid file exits 2") {
  TempDir tmp;
  fs::path good = tmp.path / "good.json";
  REQUIRE(run("gen --kind contention --out " + good.string()) == 0);
  CHECK(run("build " + good.string() + " --machines 1") == 0);
  CHECK(run("build " + good.string() + " --machines 1 --dump-division") == 0);

  fs::path bad = tmp.path / "bad.json";
  std::ofstream(bad) << "{\"version\": 1, \"job\": {\"id\": \"x\"}}";
  CHECK(run("build " + bad.string()) == 2);
  CHECK(run("build " + (tmp.path / "missing.json").string()) == 2);
}

TEST_CASE("sim: identical flags produce byte-identical CSV") {
  TempDir tmp;
  fs::path a = tmp.path / "a.csv";
  fs::path b = tmp.path / "b.csv";
  std::string flags =
      " --scheduler graphene,tetris --jobs 25 --machines 5 --arrival-mean 3 "
      "--seed 9 --out ";
  REQUIRE(run("sim" + flags + a.string()) == 0);
  REQUIRE(run("sim" + flags + b.string()) == 0);
  std::string csv = slurp(a);
  CHECK(!csv.empty());
  CHECK(csv == slurp(b));
  CHECK(csv.rfind("scheduler,seed,job,group,arrival,completion,jct\n", 0) == 0);
  CHECK(run("sim --scheduler not-a-scheduler --jobs 1") == 2);
}

TEST_CASE("bounds: corpus scan, bad files skipped, empty dir header only") {
  TempDir tmp;
  fs::path corpus = tmp.path / "corpus";
  fs::create_directories(corpus);
  fs::path out = tmp.path / "bounds.csv";

  SUBCASE("empty directory yields a header-only CSV") {
    REQUIRE(run("bounds " + corpus.string() + " --out " + out.string()) == 0);
    CHECK(slurp(out) == "file,cp_len,t_work,mod_cp,new_lb,runtime,gap_cp,gap_new\n");
  }
  SUBCASE("reference instance row carries 6.8 and parse errors are skipped") {
    REQUIRE(run("gen --kind bounds-example --out " +
                (corpus / "ref.json").string()) == 0);
    std::ofstream(corpus / "broken.json") << "{nope";
    REQUIRE(run("bounds " + corpus.string() + " --out " + out.string()) == 0);
    std::string csv = slurp(out);
    CHECK(csv.find("ref.json,5,4.8,") != std::string::npos);
    CHECK(csv.find("6.8") != std::string::npos);
    CHECK(csv.find("broken") == std::string::npos);
  }
}
