#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(POLYA_PILA_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("count reports the exact total") {
  auto r = run("count --curve 'x^2 + y^2 - 1' --H 5");
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["counts"]["total"] == 12);
  CHECK(j["counts"]["brute_total"] == 12);
  auto csv = run("--csv count --curve 'y - x^2' --H 4");
  CHECK(csv.status == 0);
  CHECK(csv.out.find(",7,7,") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("count --curve 'y - x^2' --H 5000").status == 4);
  CHECK(run("count --curve 'y - x^2' --H 1100 --force --mode brute-only").status == 0);
  CHECK(run("points --curve 'y - x^2' --H 200000 --integral").status == 4);
  CHECK(run("certify --curve 'x^2 + y^2 - 1' --k 1 --q 'x^2 - y'").status == 2);
  CHECK(run("count --curve 'x^2 + ' --H 3").status == 2);
  CHECK(run("count --H 3").status == 2);
  CHECK(run("arcs --curve 'y - x^2' --k 2").status == 2);
}

TEST_CASE("subcommands produce their tables") {
  auto pts = run("--csv points --curve 'x^2 + y^2 - 1' --H 5 --unit-box");
  CHECK(pts.status == 0);
  CHECK(pts.out == "x,y,height\n0,1,1\n3/5,4/5,5\n4/5,3/5,5\n1,0,1\n");
  auto wr = nlohmann::json::parse(run("wronskians --curve 'x^2 + y^2 - 1' --k 1").out);
  CHECK(wr["wronskians"].size() == 3);
  auto arcs = nlohmann::json::parse(run("arcs --curve 'x^2 + y^2 - 1' --k 1 --r 1").out);
  CHECK(arcs["arcs"].size() == 2);
  auto cert = nlohmann::json::parse(run("certify --curve 'x^2 + y^2 - 1' --k 1 --q '2*y - 1'").out);
  CHECK(cert["certificates"].size() == 2);
  CHECK(cert["bezout_ok"] == true);
  auto cover = nlohmann::json::parse(run("cover --curve 'x^3 + y^3 - 1' --k 1 --H 10").out);
  CHECK(cover["N"] == 0);
  auto fam = run("family --family circle-like --count 2 --heights 5,10");
  CHECK(fam.status == 0);
  CHECK(fam.out.rfind("#polya-pila v1\n", 0) == 0);
  auto dgc = run("dgc-demo --f 'x1 + x2 + x3' --heights 1");
  CHECK(dgc.out.find("\n1,7,7,") != std::string::npos);
}
