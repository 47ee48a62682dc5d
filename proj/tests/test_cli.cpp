#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "a2surf/catalog.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(A2SURF_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string catalog(const std::string& name) { return (a2surf::catalog_dir() / (name + ".mgd")).string(); }

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("eval") {
  Run r = run("eval " + catalog("yoshikawa-8_1"));
  CHECK(r.status == 0);
  CHECK(r.out ==
        "(a^-6 + 1 + a^6)*x^0*y^2 + (-a^-24 + a^-12 + 2*a^-6 + 6 + 2*a^6 + a^12 - a^24)*x^1*y^1 + "
        "(a^-6 + 1 + a^6)*x^2*y^0\n");
  Run j = run("eval --report json " + catalog("yoshikawa-8_1"));
  REQUIRE(j.status == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["marked"] == 2);
  CHECK(doc["states"].size() == 4);
  CHECK(doc["invariant"]["text"] == r.out.substr(0, r.out.size() - 1));
}

TEST_CASE("bracket") {
  Run r = run("bracket " + catalog("trefoil-r"));
  CHECK(r.status == 0);
  CHECK(r.out == "bracket: a^-12 + 1 - a^12\nnormalized: a^12 + a^24 - a^36\n");
}

TEST_CASE("specialize") {
  Run r = run("specialize --mod a6+1 " + catalog("yoshikawa-8_1"));
  CHECK(r.status == 0);
  CHECK(r.out == "(-1)*x^0*y^2 + (2)*x^1*y^1 + (-1)*x^2*y^0\n");
  Run p = run("specialize --p9star --report json " + catalog("yoshikawa-8_1"));
  REQUIRE(p.status == 0);
  auto doc = nlohmann::json::parse(p.out);
  REQUIRE(doc["p9star"].size() == 1);
  CHECK(doc["p9star"][0]["x"] == 1);
  CHECK(std::abs(doc["p9star"][0]["re"].get<double>() - 4.0) < 1e-9);
  CHECK(std::abs(doc["p9star"][0]["im"].get<double>()) < 1e-9);
}

TEST_CASE("conway") {
  Run r = run("conway " + catalog("square-knot"));
  CHECK(r.status == 0);
  CHECK(r.out.find("conway: 1 + 2*z^2 + z^4") != std::string::npos);
}

TEST_CASE("moves-check") {
  Run r = run("moves-check --move G6 " + catalog("gamma6-vertical"));
  CHECK(r.status == 0);
  CHECK(r.out.rfind("1 site(s) for G6", 0) == 0);
  CHECK(r.out.find("holds: yes") != std::string::npos);
  CHECK(run("moves-check --move G2 --insertions --all-sites " + catalog("trefoil-r")).status == 0);
}

TEST_CASE("tables and enumerate") {
  Run t = run("tables");
  CHECK(t.status == 0);
  CHECK(t.out.rfind("3-tangles: 12/12 entries match; 4-tangles: 138/138 entries match", 0) == 0);
  Run e = run("enumerate --boundary 4");
  CHECK(e.status == 0);
  CHECK(e.out.rfind("# 23 fundamental 4-tangles", 0) == 0);
  size_t count = 0;
  for (size_t pos = 0; (pos = e.out.find("# tangle ", pos)) != std::string::npos; ++pos) ++count;
  CHECK(count == 23);
}

TEST_CASE("input errors") {
  CHECK(run("eval " + temp_file("a2surf_bad.mgd", "X+ 1 2\n")).status == 2);
  CHECK(run("eval " + temp_file("a2surf_torus.mgd", "X+ +1 +2 -1 -2\n")).status == 2);
  CHECK(run("eval /nonexistent/file.mgd").status == 2);
  CHECK(run("specialize --mod a5+1 " + catalog("unknot")).status == 2);
  CHECK(run("bogus").status != 0);
}

TEST_CASE("stdin input") {
  Run r = run("bracket - < " + catalog("hopf-pos"));
  CHECK(r.status == 0);
  CHECK(r.out.find("normalized: a^6 + a^18 + a^24") != std::string::npos);
}

TEST_CASE("reproduce is deterministic") {
  Run a = run("reproduce");
  Run b = run("reproduce --jobs 3");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  size_t lines = 0;
  for (char c : a.out) lines += c == '\n';
  CHECK(lines == 10);
}
