#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "pmiso/cli.hpp"
#include "pmiso/corpus.hpp"

using namespace pmiso;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run_command(args, in, out, err);
  return {code, out.str(), err.str()};
}

const char* kC4 = "4 4\n1 2\n2 3\n3 4\n4 1\n";
const char* kTriangle = "3 3\n1 2\n2 3\n1 3\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("decide") {
  Run r = run({"decide", "--prime", "1000003", "--trials", "5", "--seed", "7", "--no-timing"}, kC4);
  CHECK(r.code == 0);
  CHECK(r.out ==
        "{\"verb\":\"decide\",\"seed\":\"7\",\"result\":{\"hasPerfectMatching\":true,"
        "\"prime\":\"1000003\",\"trials\":1},\"ms\":0}\n");
  Run t = run({"decide", "--seed", "7", "--no-timing"}, kTriangle);
  CHECK(t.code == 0);
  CHECK(nlohmann::json::parse(t.out)["result"]["hasPerfectMatching"] == false);
  CHECK(run({"decide", "--seed", "7", "--prime", "1000"}, kC4).code == 4);
}

TEST_CASE("search") {
  Run r = run({"search", "--random-weights", "--seed", "1"}, kTriangle);
  CHECK(r.code == 4);
  CHECK(r.err.find("no perfect matching") != std::string::npos);
  CHECK(r.out.empty());

  Run c = run({"search", "--weights", "1,2,1,1", "--no-timing"}, kC4);
  REQUIRE(c.code == 0);
  auto j = nlohmann::json::parse(c.out);
  CHECK(j["result"]["status"] == "found");
  CHECK(j["result"]["matching"] == nlohmann::json::array({1, 4}));
  CHECK(j["result"]["ord2D"] == "4");
  CHECK(j["result"]["verdicts"].size() == 4);
  CHECK(j["result"].contains("detBitLength"));

  Run tie = run({"search", "--weights", "1,1,1,1", "--no-timing"}, kC4);
  CHECK(tie.code == 0);
  CHECK(nlohmann::json::parse(tie.out)["result"]["status"] == "isolation-failure");
  CHECK(run({"search", "--weights", "1,x,1,1"}, kC4).code == 2);
  CHECK(run({"search", "--random-weights"}, kC4).code == 2);
}

TEST_CASE("isolate") {
  Run d = run({"isolate", "--derandomized", "--no-timing"}, kC4);
  REQUIRE(d.code == 0);
  auto j = nlohmann::json::parse(d.out);
  CHECK(j["result"]["matching"] == nlohmann::json::array({1, 4}));
  CHECK(j["result"]["weights"][0].is_string());
  CHECK(j["result"]["audit"].size() == 3);
  // Lossless round trip with fixed field order.
  CHECK(nlohmann::ordered_json::parse(d.out).dump() + "\n" == d.out);
  CHECK(run({"isolate", "--derandomized", "--no-timing"}, kC4).out == d.out);

  Run r = run({"isolate", "--randomized", "--seed", "4", "--no-timing"}, kC4);
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["seed"] == "4");
  CHECK(run({"isolate", "--randomized"}, kC4).code == 2);
  CHECK(run({"isolate", "--randomized", "--derandomized", "--seed", "1"}, kC4).code == 2);
  CHECK(run({"isolate", "--derandomized"}, kTriangle).code == 4);
}

TEST_CASE("weights") {
  Run r = run({"weights", "--n", "4", "--k", "7", "--m", "5", "--no-timing"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["values"] == nlohmann::json::array({"2", "4", "1", "2", "4"}));
  // 65 mod 62 = 3, so w_2 o w_62 on one edge is 4^21 + 3.
  Run c = run({"weights", "--n", "4", "--k", "2", "--m", "1", "--concat", "62", "--no-timing"});
  REQUIRE(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["result"]["values"][0] == "4398046511107");
  CHECK(run({"weights", "--n", "4", "--k", "1"}).code == 4);
}

TEST_CASE("face and goodness") {
  Run f = run({"face", "--no-timing"}, kC4);
  REQUIRE(f.code == 0);
  auto j = nlohmann::json::parse(f.out);
  CHECK(j["result"]["size"] == 2);
  CHECK(j["result"]["tightSets"].size() == 8);
  CHECK(j["result"]["laminarFamily"].back() == nlohmann::json::array({1, 2, 3}));
  Run f7 = run({"face", "--weights", "7", "--no-timing"}, kC4);
  CHECK(nlohmann::json::parse(f7.out)["result"]["matchings"] ==
        nlohmann::json::array({nlohmann::json::array({1, 4})}));

  Run g = run({"goodness", "--lambda", "4", "--no-timing"}, kC4);
  REQUIRE(g.code == 0);
  auto gj = nlohmann::json::parse(g.out);
  CHECK(gj["result"]["good"] == false);
  CHECK(gj["result"]["failedClause"] == "short-circuit");
  CHECK(gj["result"]["circuitWitness"]["nodeWeight"] == 4);
  Run g1 = run({"goodness", "--lambda", "1", "--no-timing"}, kC4);
  CHECK(nlohmann::json::parse(g1.out)["result"]["good"] == true);
}

TEST_CASE("bench shape") {
  Run b = run({"bench", "--no-timing"});
  CHECK(b.code == 0);
  CHECK(b.out == "{\"verb\":\"bench\",\"result\":{},\"ms\":0}\n");
}

TEST_CASE("exit code taxonomy") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"decide", "--seed", "1", "--bogus"}, kC4).code == 2);
  CHECK(run({"decide", "--seed", "1"}, "2 1\n1 1\n").code == 2);
  CHECK(run({"decide", "--seed", "1", "--graph", "/nonexistent/file"}).code == 2);
  std::string k18 = format_graph(corpus::complete(18));
  CHECK(run({"face"}, k18).code == 3);
  CHECK(run({"isolate", "--derandomized"}, k18).code == 3);
  CHECK(run({"--help"}).code == 0);
}

}  // TEST_SUITE
