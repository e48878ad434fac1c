#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "quasienum/quasigroup.hpp"
#include "quasienum/report_io.hpp"

namespace fs = std::filesystem;
using namespace quasienum;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" QUASIENUM_CLI "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch_dir(const char* name) {
  auto d = fs::temp_directory_path() / ("quasienum_cli_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("count --order prints group rows and the total") {
  const auto r = run("--no-cache count --order 8 --format csv");
  CHECK(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].descriptor == "C8");
  CHECK(rows[2].descriptor == "C2xC2xC2");
  CHECK(rows[2].cq == Count(341));
  CHECK(rows[2].mq == Count(35));
  CHECK(rows[3].is_order_row());
  CHECK(rows[3].cq == Count(385));
  CHECK(rows[3].mq == Count(73));

  const auto t = run("--no-cache count --order 8");
  CHECK(t.status == 0);
  CHECK(t.out.find("C2xC2xC2") != std::string::npos);
  CHECK(t.out.find("385") != std::string::npos);
}

TEST_CASE("count --group") {
  const auto r = run("--no-cache count --group C3xC3 --format json");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["aut_order"] == 48);
  CHECK(j[0]["conj_classes"] == 8);
  CHECK(j[0]["pair_orbits"] == 136);
  CHECK(j[0]["cq"] == 183);
  CHECK(j[0]["commuting_pair_orbits"] == 56);
  CHECK(j[0]["mq"] == 68);
  CHECK(j[0]["gap_id"] == "9/2");

  const auto one = parse_csv(run("--no-cache count --group C1 --format csv").out);
  REQUIRE(one.size() == 1);
  CHECK(one[0].cq == Count(1));
  CHECK(one[0].mq == Count(1));

  // Non-canonical spellings are accepted.
  const auto same = parse_csv(run("--no-cache count --group C3*C3 --format csv").out);
  REQUIRE(same.size() == 1);
  CHECK(same[0].descriptor == "C3xC3");
}

TEST_CASE("table") {
  const auto r = run("--no-cache table --max 4");
  CHECK(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 9);
  std::vector<TableRow> expected;
  for (const auto& f : fixture_rows())
    if (f.order <= 4) expected.push_back(f);
  CHECK(rows == expected);

  const auto d = scratch_dir("table");
  CHECK(run("--no-cache table --max 1 --format json --out \"" + (d / "t.json").string() + "\"").status == 0);
  std::ifstream in(d / "t.json");
  const auto j = nlohmann::json::parse(in);
  REQUIRE(j.size() == 2);
  CHECK(j[0]["descriptor"] == "C1");
  CHECK(j[1]["descriptor"].is_null());
  CHECK(j[1]["cq"] == 1);
  fs::remove_all(d);
}

TEST_CASE("reps") {
  const auto r = run("--no-cache reps --group C3 --format json");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["representatives"].size() == 5);
  std::size_t medial = 0;
  for (const auto& rep : j["representatives"]) medial += rep["medial"].get<bool>();
  CHECK(medial == 5);

  const auto d = scratch_dir("reps");
  const auto t = run("--no-cache reps --group C2xC2 --emit-tables \"" + d.string() + "\"");
  CHECK(t.status == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(d)) {
    ++files;
    std::ifstream in(e.path());
    const auto table = read_table(in);
    CHECK(table.n == 4);
    CHECK(is_latin(table));
  }
  CHECK(files == 15);
  fs::remove_all(d);

  const auto c1 = run("--no-cache reps --group C1");
  CHECK(c1.status == 0);
  CHECK(c1.out.find("1 representatives") != std::string::npos);
}

TEST_CASE("verify") {
  const auto r = run("--no-cache verify --max 16");
  CHECK(r.status == 0);
  CHECK(r.out.find("matched 182, mismatched 0") != std::string::npos);
  CHECK(run("--no-cache verify --max 1 --direct").status == 0);

  const auto d = scratch_dir("verify");
  {
    std::ofstream out(d / "bad.csv");
    out << "order,gap_id,descriptor,aut_order,conj_classes,pair_orbits,cq,commuting_pair_orbits,mq\n"
        << "3,3/1,C3,2,2,4,6,4,5\n";
  }
  const auto bad = run("--no-cache verify --max 3 --fixture \"" + (d / "bad.csv").string() + "\"");
  CHECK(bad.status == 3);
  CHECK(bad.out.find("expected 6, got 5") != std::string::npos);
  fs::remove_all(d);
}

TEST_CASE("exit codes") {
  CHECK(run("--no-cache count").status == 1);
  CHECK(run("--no-cache count --group D4").status == 1);
  CHECK(run("--no-cache count --order 0").status == 1);
  CHECK(run("--no-cache frobnicate").status == 1);
  CHECK(run("--no-cache count --group C2^6").status == 2);
  CHECK(run("--no-cache --aut-budget 100 count --group C2xC2xC2").status == 2);
  CHECK(run("--no-cache count --group C2xC2xC2", "QUASIENUM_AUT_BUDGET=100").status == 2);
  CHECK(run("--no-cache count --group C2xC2xC2", "QUASIENUM_AUT_BUDGET=168").status == 0);

  // An order with one group over budget still prints the others.
  const auto partial = run("--no-cache --aut-budget 100 count --order 8 --format csv");
  CHECK(partial.status == 2);
  const auto rows = parse_csv(partial.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].cq == Count(28));
  CHECK_FALSE(rows[2].cq);
  CHECK_FALSE(rows[3].cq);
}

TEST_CASE("cache directory") {
  const auto d = scratch_dir("cache");
  const std::string flag = "--cache-dir \"" + d.string() + "\" ";
  CHECK(run(flag + "count --group C4xC2 --format csv").status == 0);
  CHECK(fs::exists(d / "C4xC2.json"));
  // A cached report is served without enumerating Aut.
  const auto again = run(flag + "--aut-budget 1 count --group C4xC2 --format csv");
  CHECK(again.status == 0);
  const auto rows = parse_csv(again.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].cq == Count(28));
  {
    std::ofstream out(d / "C4xC2.json");
    out << "not json";
  }
  CHECK(run(flag + "count --group C4xC2").status == 0);
  fs::remove_all(d);
}
