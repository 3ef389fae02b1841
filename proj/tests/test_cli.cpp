#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"

namespace {

namespace fs = std::filesystem;

const std::string kCli = BOA_CLI_BIN;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  fs::path out = fs::temp_directory_path() / "boa_cli_out.txt";
  std::string cmd = kCli + " " + args + " >" + out.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  return {code, ss.str()};
}

fs::path work_dir() {
  auto dir = fs::temp_directory_path() / "boa_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_column(const fs::path& p, const std::vector<double>& col) {
  std::ofstream out(p);
  for (std::size_t i = 0; i < col.size(); ++i)
    out << "event" << (i + 1) << "," << col[i] << "\n";
}

}  // namespace

TEST_CASE("sample-plan prints the timestamps") {
  auto r = run("sample-plan --duration 5 --rate 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "0\n1\n2\n3\n4\n");
}

TEST_CASE("unknown flag is a usage error (exit 2)") {
  CHECK(run("sample-plan --duration 5 --bogus 1").exit_code == 2);
  CHECK(run("no-such-subcommand").exit_code == 2);
}

TEST_CASE("synth, index, query, evaluate end to end at sigma 0") {
  auto dir = work_dir() / "e2e";
  fs::remove_all(dir);
  std::string base = " --out-dir " + (dir / "data").string();
  CHECK(run("synth --seed 7 --events 3 --dim 16 --signature-size 4 --queries 2 "
            "--positives 3 --negatives 5 --sigma 0" + base).exit_code == 0);
  std::string manifest = (dir / "data" / "manifest.txt").string();
  std::string store = (dir / "store.boas").string();
  CHECK(run("index --manifest " + manifest + " --scores " + (dir / "data").string() +
            " --coding soft --pooling max --norm none --out " + store)
            .exit_code == 0);
  std::string ranked = (dir / "ranked.tsv").string();
  CHECK(run("query --store " + store + " --manifest " + manifest + " --out " + ranked)
            .exit_code == 0);
  auto r = run("evaluate --manifest " + manifest + " --ranked " + ranked +
               " --out-dir " + (dir / "report").string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("avg-mAP: 100.00") != std::string::npos);
  CHECK(fs::exists(dir / "report" / "report.csv"));
  CHECK(fs::exists(dir / "report" / "avg_map.svg"));
}

TEST_CASE("querying with mismatched provenance expectation fails with exit 1") {
  auto dir = work_dir() / "prov";
  fs::remove_all(dir);
  CHECK(run("synth --seed 1 --events 2 --dim 8 --signature-size 2 --out-dir " +
            (dir / "data").string()).exit_code == 0);
  std::string manifest = (dir / "data" / "manifest.txt").string();
  std::string store = (dir / "store.boas").string();
  CHECK(run("index --manifest " + manifest + " --scores " + (dir / "data").string() +
            " --pooling max --coding soft --norm none --out " + store).exit_code == 0);
  auto r = run("query --store " + store + " --manifest " + manifest + " --norm l2");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("provenance") != std::string::npos);
}

TEST_CASE("ttest on the published columns is significant and positive") {
  auto dir = work_dir() / "ttest";
  fs::create_directories(dir);
  write_column(dir / "boa.csv", fixtures::boa_column());
  write_column(dir / "mmv.csv", fixtures::mmv_column());
  auto r = run("ttest --a " + (dir / "boa.csv").string() + " --b " +
               (dir / "mmv.csv").string() + " --alpha 0.05");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("significant: yes") != std::string::npos);
  auto lo = r.output.find("ci: [");
  REQUIRE(lo != std::string::npos);
  CHECK(std::stod(r.output.substr(lo + 5)) > 0.0);
}

TEST_CASE("report emits the Table-II-shaped CSV and plots") {
  auto dir = work_dir() / "report";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_column(dir / "mmv.csv", fixtures::mmv_column());
  write_column(dir / "cte.csv", fixtures::cte_column());
  write_column(dir / "boa.csv", fixtures::boa_column());
  auto r = run("report --method MMV=" + (dir / "mmv.csv").string() +
               " --method CTE=" + (dir / "cte.csv").string() +
               " --method BoA=" + (dir / "boa.csv").string() +
               " --avg MMV=33.40 --avg CTE=35.20 --avg BoA=55.49 --out-dir " +
               (dir / "out").string());
  CHECK(r.exit_code == 0);
  std::string csv = slurp(dir / "out" / "report.csv");
  CHECK(csv.find("avg-mAP,33.40,35.20,55.49") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "intervals.svg"));
}

TEST_CASE("worker count never changes output bytes") {
  auto dir = work_dir() / "workers";
  fs::remove_all(dir);
  CHECK(run("synth --seed 9 --events 3 --dim 24 --signature-size 4 --sigma 0.5 "
            "--out-dir " + (dir / "data").string()).exit_code == 0);
  std::string manifest = (dir / "data" / "manifest.txt").string();
  std::string ref_store, ref_ranked;
  for (int workers : {1, 4}) {
    std::string store = (dir / ("store" + std::to_string(workers))).string();
    std::string ranked = (dir / ("ranked" + std::to_string(workers))).string();
    CHECK(run("index --manifest " + manifest + " --scores " + (dir / "data").string() +
              " --out " + store + " --workers " + std::to_string(workers))
              .exit_code == 0);
    CHECK(run("query --store " + store + " --manifest " + manifest + " --out " + ranked +
              " --workers " + std::to_string(workers)).exit_code == 0);
    if (ref_store.empty()) {
      ref_store = slurp(store);
      ref_ranked = slurp(ranked);
    } else {
      CHECK(slurp(store) == ref_store);
      CHECK(slurp(ranked) == ref_ranked);
    }
  }
}

TEST_CASE("score subcommand drives an adapter into a BOAF file") {
  auto dir = work_dir() / "score";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream refs(dir / "refs.txt");
    refs << "f0\nf1\n";
  }
  std::string out = (dir / "v1.boaf").string();
  auto r = run("score --adapter \"while read l; do echo '0.25 0.25 0.25 0.25'; done\""
               " --dim 4 --refs " + (dir / "refs.txt").string() +
               " --video-id v1 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out));
  std::string bytes = slurp(out);
  CHECK(bytes.substr(0, 4) == "BOAF");

  // missing refs file is an I/O error
  CHECK(run("score --adapter cat --dim 4 --refs /nonexistent --video-id v --out " + out)
            .exit_code == 3);
}

TEST_CASE("missing input files map to the documented exit codes") {
  CHECK(run("index --manifest /nonexistent --scores /tmp --out /tmp/x.boas").exit_code ==
        3);
  CHECK(run("evaluate --manifest /nonexistent --ranked /nonexistent").exit_code == 3);
}
