#include <sstream>

#include "doctest.h"
#include "fsing/commands.hpp"
#include "fsing/error.hpp"

using namespace fsing;

namespace {

Session session_of(const std::string& text) {
  std::istringstream in(text);
  return parse_session(in, "test.session");
}

const char* kExample = "prime 2\nring x y u v\nsubring xu yv\npoly f = x*u - y*v\n";

std::string error_of(const std::string& text) {
  try {
    session_of(text);
  } catch (const SessionError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("session parsing") {
  auto s = session_of(std::string("# the example\n") + kExample + "ideal J = x*u, y*v  # comment\nset e_max 2\n");
  CHECK(s.ring->p() == 2);
  CHECK(s.ring->vars() == std::vector<std::string>{"x", "y", "u", "v"});
  REQUIRE(s.emb);
  CHECK(s.subring == IntMat{{1, 0, 1, 0}, {0, 1, 0, 1}});
  CHECK(s.polys.at("f").to_string() == "x*u + y*v");
  CHECK(s.ideals.at("J").size() == 2);
  CHECK(s.config.e_max == 2);
  CHECK(s.where().tag() == "R");
  CHECK(s.where("S").tag() == "S");
  CHECK(s.ideal("m", s.where()).size() == 2);
  CHECK(s.ideal("mS", s.where()).size() == 4);
  CHECK(s.ideal("x*u, x*u*y*v", s.where()).size() == 2);

  auto rows = session_of("prime 3\nring x y u v\nsubring [1,1,0,0] [0,0,1,1]\n");
  CHECK(rows.subring == IntMat{{1, 1, 0, 0}, {0, 0, 1, 1}});
  auto ring = make_ring(3, {"x", "xy", "y"});
  CHECK(parse_subring_word("xyx", ring) == IntVec{1, 1, 0});
  CHECK(parse_subring_word("x^2*y", ring) == IntVec{2, 0, 1});
}

TEST_CASE("session diagnostics") {
  CHECK(error_of("prime 4\nring x\n").find("test.session:1: 4 is not prime") != std::string::npos);
  auto purity = error_of("prime 5\nring x\nsubring xx xxx\n");
  CHECK(purity.find("test.session:3") != std::string::npos);
  CHECK(purity.find("(1)") != std::string::npos);
  CHECK(error_of("ring x\n").find(":1: 'ring' before 'prime'") != std::string::npos);
  CHECK(error_of("prime 5\nring x y\n\npoly f = x +* y\n").find(":4: unexpected") != std::string::npos);
  CHECK(error_of("prime 5\nring x\npoly f = x\npoly f = x^2\n").find(":4: name 'f' already defined") !=
        std::string::npos);
  CHECK(error_of("prime 5\nring x\nset speed 3\n").find(":3: unknown setting") != std::string::npos);
  CHECK(error_of("prime 5\nring x\nfrobnicate\n").find(":3: unknown keyword") != std::string::npos);
  CHECK(error_of("prime 5\nring x y\nsubring xz\n").find(":3:") != std::string::npos);
  CHECK(error_of("prime 5\n").find("missing 'ring'") != std::string::npos);
}

TEST_CASE("commands on the example session") {
  auto s = session_of(kExample);
  cli::Options opt;
  cli::Args a;
  a.ideal = "f";
  a.wrt = "m";
  a.e = "2";
  auto r = cli::run("nu", &s, a, opt);
  CHECK(r.exit_code == cli::kOk);
  CHECK(r.json["result"]["value"] == 3);
  CHECK(r.json["result"]["ratio"] == "3/4");
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.json.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"command", "inputs", "result", "certificates", "timings"});
  CHECK(r.json["timings"].empty());
  CHECK(cli::render(r, "json") == cli::render(cli::run("nu", &s, a, opt), "json"));

  cli::Args b;
  b.b = "s+1";
  b.f = "f";
  b.wrt = "m";
  b.e = "1..3";
  auto bs = cli::run("bs-check", &s, b, opt);
  CHECK(bs.exit_code == cli::kOk);
  CHECK(bs.json["result"]["verdict"] == "pass");
  CHECK(bs.json["result"]["entries"].size() == 3);

  cli::Args fail = b;
  fail.b = "s+2";
  fail.e = "1";
  CHECK(cli::run("bs-check", &s, fail, opt).json["result"]["entries"][0]["verdict"] == "inconclusive-small-p");
  CHECK(cli::run("bs-check", &s, fail, opt).exit_code == cli::kInconclusive);

  cli::Args j;
  j.ideal = "f";
  j.e = "2";
  auto js = cli::run("jumps", &s, j, opt);
  CHECK(js.json["result"]["lambdas"] == nlohmann::ordered_json::array({"1/1"}));
  auto sm = cli::run("summand", &s, j, opt);
  CHECK(sm.exit_code == cli::kOk);
  CHECK(sm.json["result"]["survivors"] == nlohmann::ordered_json::array({"1/1"}));

  cli::Args c;
  c.ideal = "f";
  auto cart = cli::run("cartier", &s, c, opt);
  CHECK(cart.json["result"]["image"] == nlohmann::ordered_json::array({"1"}));
  CHECK(cart.json["certificates"]["transport"] == "agree");

  cli::Args t;
  t.ideal = "f";
  t.lambda = "1/2";
  auto tau = cli::run("tau", &s, t, opt);
  CHECK(tau.exit_code == cli::kOk);
  CHECK(tau.json["result"]["tau"] == nlohmann::ordered_json::array({"1"}));

  cli::Args cy;
  cy.f = "f";
  CHECK(cli::run("cyclic", &s, cy, opt).json["result"]["verified"] == true);

  opt.timings = true;
  CHECK(cli::run("nu", &s, a, opt).json["timings"].contains("total_ms"));
}

TEST_CASE("command errors map to exit codes") {
  auto s = session_of("prime 5\nring x y\npoly f = x^2+y^3\n");
  cli::Options opt;
  cli::Args a;
  a.ideal = "x+1";
  CHECK(cli::run("nu", &s, a, opt).exit_code == cli::kInvalid);
  a.ideal = "f";
  a.e = "zero";
  CHECK(cli::run("nu", &s, a, opt).exit_code == cli::kInvalid);
  CHECK(cli::run("frobnicate", &s, a, opt).exit_code == cli::kInvalid);
  CHECK(cli::run("nu", nullptr, a, opt).exit_code == cli::kInvalid);
  cli::Args sm;
  sm.ideal = "f";
  CHECK(cli::run("summand", &s, sm, opt).exit_code == cli::kInvalid);

  cli::Args big;
  big.ideal = "f";
  big.range = "100000";
  big.e = "3";
  CHECK(cli::run("jumps", &s, big, opt).exit_code == cli::kResource);

  cli::Args excl;
  excl.b = "s+1/5";
  excl.f = "f";
  auto r = cli::run("bs-check", &s, excl, opt);
  CHECK(r.exit_code == cli::kInvalid);
  CHECK(r.json["error"].get<std::string>().find("p excluded") != std::string::npos);
  CHECK(cli::render(r, "text").find("error: ") != std::string::npos);
}
