#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pbclink/analysis.hpp"
#include "pbclink/cli.hpp"
#include "pbclink/frame_io.hpp"
#include "pbclink/synth.hpp"

using namespace pbclink;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pbclink");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t data_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') ++n;
  return n - 1;  // header
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "pbclink_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generated frame gives a 28-row report") {
  TempDir dir;
  REQUIRE(run({"gen", "--chains", "8", "--beads", "100", "--seed", "1", "-o", dir / "m.frame"}).code == 0);
  const Run lk = run({"lk", dir / "m.frame"});
  CHECK(lk.code == 0);
  CHECK(data_rows(lk.out) == 28);
  CHECK(lk.out.find("# frame,m\n") != std::string::npos);
}

TEST_CASE("hopf fixture gives one row of magnitude one") {
  TempDir dir;
  REQUIRE(run({"fixture", "hopf_in_cell", "-o", dir / "h.frame"}).code == 0);
  const Run lk = run({"lk", dir / "h.frame"});
  CHECK(lk.code == 0);
  CHECK(data_rows(lk.out) == 1);
  CHECK((lk.out.find("\n0,1,1,ok,1\n") != std::string::npos || lk.out.find("\n0,1,-1,ok,1\n") != std::string::npos));
}

TEST_CASE("open/closed pipeline matches the library") {
  TempDir dir;
  REQUIRE(run({"gen", "--chains", "6", "--beads", "80", "--seed", "3", "--edge", "9", "--min-separation", "0.1", "-o",
               dir / "f.frame"})
              .code == 0);
  REQUIRE(run({"lk", dir / "f.frame", "-o", dir / "a.csv"}).code == 0);
  REQUIRE(run({"close", dir / "f.frame", "-o", dir / "fc.frame"}).code == 0);
  REQUIRE(run({"lk", dir / "fc.frame", "-o", dir / "b.csv"}).code == 0);
  const Run stats = run({"stats", dir / "a.csv", dir / "b.csv"});
  REQUIRE(stats.code == 0);

  const OpenClosedReport lib = open_closed_report(read_frame(fs::path(dir / "f.frame")));
  std::ostringstream expected;
  write_summary(lib.difference, expected);
  CHECK(stats.out == expected.str());

  const Run single = run({"stats", dir / "a.csv", "--bin-width", "0.5"});
  CHECK(single.code == 0);
  CHECK(single.out.find("# count,15\n") != std::string::npos);
}

TEST_CASE("pipeline output is byte identical across runs") {
  TempDir dir;
  for (const char* tag : {"1", "2"}) {
    const std::string t(tag);
    fs::create_directories(dir.path / t);
    REQUIRE(run({"gen", "--chains", "4", "--beads", "60", "--seed", "9", "--mixed", "-o", dir / (t + "/g.frame")}).code == 0);
    REQUIRE(run({"lk", dir / (t + "/g.frame"), "-o", dir / (t + "/r.csv")}).code == 0);
    REQUIRE(run({"stats", dir / (t + "/r.csv"), "-o", dir / (t + "/s.csv")}).code == 0);
  }
  CHECK(slurp(dir / "1/g.frame") == slurp(dir / "2/g.frame"));
  CHECK(slurp(dir / "1/r.csv") == slurp(dir / "2/r.csv"));
  CHECK(slurp(dir / "1/s.csv") == slurp(dir / "2/s.csv"));
  const Run serial = run({"lk", dir / "1/g.frame", "--exec", "serial"});
  CHECK(serial.out == slurp(dir / "1/r.csv"));
}

TEST_CASE("lkp and diag on the fig2-like fixture") {
  TempDir dir;
  REQUIRE(run({"fixture", "fig2_like", "-o", dir / "f2.frame"}).code == 0);
  const Run lkp = run({"lkp", dir / "f2.frame", "--tol", "1e-4", "--max-shells", "8"});
  CHECK(lkp.code == 0);
  CHECK(lkp.out.find("chain_i,chain_j,lkp,last_shell,shell_sum,converged,status\n") != std::string::npos);
  CHECK(lkp.out.find(",1,ok\n") != std::string::npos);
  const Run diag = run({"diag", dir / "f2.frame"});
  CHECK(diag.code == 0);
  const auto row = diag.out.substr(diag.out.find("\n0,1,") + 1);
  std::vector<std::string> fields;
  std::stringstream ss(row.substr(0, row.find('\n')));
  for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
  REQUIRE(fields.size() == 6);
  CHECK(std::stod(fields[4]) >= 0.9);
}

TEST_CASE("unconverged LK_P is reported with exit code 2") {
  TempDir dir;
  REQUIRE(run({"gen", "--chains", "2", "--beads", "50", "-o", dir / "o.frame"}).code == 0);
  const Run diag = run({"diag", dir / "o.frame", "--tol", "1e-14", "--max-shells", "1"});
  CHECK(diag.code == kExitPartial);
  CHECK(diag.out.find("not_converged") != std::string::npos);
}

TEST_CASE("touching chains give exit code 2 and a full report") {
  TempDir dir;
  std::ofstream(dir / "t.frame") << "pbclink-frame 1\nedge 10 10 10\nconvention unwrapped\nchains 3\nbeads 2 2 2\n"
                                    "closed 0 0 0\nchain 0\n1 5 5\n9 5 5\nchain 1\n5 1 5\n5 9 5\nchain 2\n2 2 2\n3 3 2\n";
  const Run lk = run({"lk", dir / "t.frame", "-o", dir / "t.csv"});
  CHECK(lk.code == kExitPartial);
  CHECK(lk.err.find("contact") != std::string::npos);
  CHECK(data_rows(slurp(dir / "t.csv")) == 3);
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"lk"}).code == kExitUsage);
  CHECK(run({"fixture", "fig3"}).code == kExitUsage);
  CHECK(run({"gen", "--closed", "--mixed"}).code == kExitUsage);
  CHECK(run({"gen", "--edge", "1", "2"}).code == kExitUsage);
  CHECK(run({"stats", "a", "b", "c"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"lk", dir / "missing.frame"}).code == kExitIo);
  std::ofstream(dir / "bad.frame") << "pbclink-frame 1\nedge 10 10\n";
  const Run bad = run({"lk", dir / "bad.frame"});
  CHECK(bad.code == kExitParse);
  CHECK(bad.err.find("line 2") != std::string::npos);
  std::ofstream(dir / "blocker") << "x";
  CHECK(run({"fixture", "hopf_in_cell", "-o", dir / "blocker/x.frame"}).code == kExitIo);
}

TEST_CASE("generation flags") {
  const Run g = run({"gen", "--chains", "2", "--beads", "5", "--edge", "4", "5", "6", "--bond", "0.5", "--closed",
                     "--convention", "wrapped"});
  REQUIRE(g.code == 0);
  CHECK(g.out.find("edge 4 5 6\nconvention wrapped\nchains 2\nbeads 5 5\nclosed 1 1\n") != std::string::npos);
}
