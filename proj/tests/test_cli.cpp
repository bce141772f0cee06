#include "doctest.h"
#include "fibera/cli.hpp"
#include "fibera/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace {

const std::string data = FIBERA_DATA_DIR;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(fibera::CliOptions opt) {
  std::ostringstream out, err;
  int code = fibera::run(opt, out, err);
  return {code, out.str(), err.str()};
}

fibera::CliOptions opts(const std::string& command, const std::string& file) {
  fibera::CliOptions o;
  o.command = command;
  o.file = file;
  return o;
}

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("milnor and check on the conic pair") {
    auto m = run_cli(opts("milnor", data + "/conic_pair.fib"));
    CHECK(m.code == 0);
    CHECK(m.out == "mu = 5\n");

    auto c = run_cli(opts("check", data + "/conic_pair.fib"));
    CHECK(c.code == 0);
    CHECK(c.out == "complete intersection at infinity\ndim V(I) = 1\ndim V(I+J) = 0\n");
  }

  TEST_CASE("precondition failures exit with 1") {
    auto c = run_cli(opts("check", data + "/quartic.fib"));
    CHECK(c.code == 1);
    CHECK(has(c.out, "not a complete intersection at infinity"));
    CHECK(has(c.out, "dim V(I+J) = 1"));
    CHECK(run_cli(opts("basis", data + "/quartic.fib")).code == 1);
  }

  TEST_CASE("parse and usage errors exit with 2") {
    auto bad = run_cli(opts("milnor", data + "/bad_variable.fib"));
    CHECK(bad.code == 2);
    CHECK(has(bad.err, "line 3, column 15: unknown variable 'w'"));
    CHECK(run_cli(opts("milnor", data + "/missing.fib")).code == 2);
    CHECK(run_cli(opts("class", data + "/conic_pair.fib")).code == 2);  // no --form

    auto o = opts("class", data + "/conic_pair.fib");
    o.form = "d[x] + q";
    o.point = "1,0";
    auto e = run_cli(o);
    CHECK(e.code == 2);
    CHECK(has(e.err, "--form"));
    o.form = "d[x,y]";
    CHECK(run_cli(o).code == 2);
  }

  TEST_CASE("basis listing") {
    auto b = run_cli(opts("basis", data + "/conic_pair.fib"));
    CHECK(b.code == 0);
    CHECK(has(b.out, "mu = 5\n"));
    CHECK(has(b.out, "omega_5 [degree 3] = "));
  }

  TEST_CASE("class of an exact form") {
    auto o = opts("class", data + "/conic_pair.fib");
    o.form = "d[x]";
    o.point = "1,0";
    o.witness = true;
    auto c = run_cli(o);
    CHECK(c.code == 0);
    CHECK(has(c.out, "lambda = (0, 0, 0, 0, 0)"));
    CHECK(has(c.out, "Omega = x\n"));
  }

  TEST_CASE("named forms and points") {
    auto o = opts("class", data + "/conic_pair.fib");
    o.form = "mixed";
    o.point = "q";
    auto c = run_cli(o);
    CHECK(c.code == 0);
    CHECK(has(c.out, "point = (1, 2)"));
  }

  TEST_CASE("decompose reports the degree bounds") {
    auto o = opts("decompose", data + "/conic_pair.fib");
    o.form = "mixed";
    auto d = run_cli(o);
    CHECK(d.code == 0);
    CHECK(has(d.out, "degree bounds: a ok, Omega ok, eta ok"));
    CHECK(has(d.out, "a_5 = "));
  }

  TEST_CASE("json documents verify through a file") {
    for (std::string command : {"class", "decompose"}) {
      auto o = opts(command, data + "/conic_pair.fib");
      o.form = "mixed";
      o.point = "r";
      o.json = true;
      auto r = run_cli(o);
      REQUIRE(r.code == 0);
      auto doc = fibera::Json::parse(r.out);
      CHECK(doc["command"] == command);
      CHECK(doc.contains("input_hash"));
      CHECK(doc.contains("witness"));

      std::string path = "fibera_cli_test_" + command + ".json";
      {
        std::ofstream f(path);
        f << r.out;
      }
      auto v = run_cli(opts("verify", path));
      CHECK(v.code == 0);
      CHECK(has(v.out, "ok: "));

      doc["witness"]["Omega"].push_back(fibera::Json::array({{0, 1, 0}, fibera::Json::array(), "1/1"}));
      {
        std::ofstream f(path);
        f << doc.dump();
      }
      auto bad = run_cli(opts("verify", path));
      CHECK(bad.code == 1);
      CHECK(has(bad.out, "failed: "));
      std::remove(path.c_str());
    }
  }

  TEST_CASE("subalgebra") {
    auto o = opts("subalgebra", data + "/conic_pair.fib");
    o.poly = "x^2*z^2 + 1";
    auto s = run_cli(o);
    CHECK(s.code == 0);
    CHECK(s.out == "A = t1^2 + 1\n");
    o.poly = "x";
    CHECK(run_cli(o).out == "not in C[F]\n");
  }

  TEST_CASE("check with a degree bound runs the vanishing test") {
    auto o = opts("check", data + "/sphere.fib");
    o.degree_bound = 3;
    o.point = "one";
    o.json = true;
    auto c = run_cli(o);
    CHECK(c.code == 0);
    auto doc = fibera::Json::parse(c.out);
    REQUIRE(doc["result"]["vanishing"].size() == 1);
    CHECK(doc["result"]["vanishing"][0]["closed"] == doc["result"]["vanishing"][0]["exact"]);
  }
}
