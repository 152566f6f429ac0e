#include <cmath>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "vlab/commands.hpp"
#include "vlab/criteria.hpp"
#include "vlab/expr.hpp"
#include "vlab/gallery.hpp"

using namespace vlab;

// Library and tool agree when fed the same symbol as an id and as text.
TEST_CASE("Expression symbols behave like their gallery counterparts through the whole stack") {
  RunConfig cfg;
  for (const char* id : {"cayley", "exp_iz", "exp_isqrtz"}) {
    INFO(id);
    const Report a = cmd_criteria({{id, ""}, "m1", true}, cfg);
    const Report b = cmd_criteria({{"", gallery_expression(id)}, "m1", true}, cfg);
    CHECK(a.results["m1"]["value"].get<double>() ==
          doctest::Approx(b.results["m1"]["value"].get<double>()).epsilon(1e-12));
    CHECK(a.results["vanishing"]["m1"]["verdict"] == b.results["vanishing"]["m1"]["verdict"]);

    const Report ca = cmd_certify({"jg", {id, ""}}, cfg);
    const Report cb = cmd_certify({"jg", {"", gallery_expression(id)}}, cfg);
    CHECK(ca.results["verdict"] == cb.results["verdict"]);
  }
}

TEST_CASE("Full picture for e^{i sqrt z}: bounded, nonvanishing, obstructed") {
  RunConfig cfg;
  const Report cert = cmd_certify({"jg", {"exp_isqrtz", ""}}, cfg);
  CHECK(cert.results["verdict"] == "BOUNDED");
  const Report crit = cmd_criteria({{"exp_isqrtz", ""}, "m1", true}, cfg);
  CHECK(crit.results["vanishing"]["m1"]["verdict"] == "NONVANISHING");
  const Report probe = cmd_probe({"jg", {"exp_isqrtz", ""}, 0.0}, cfg);
  CHECK(probe.results["verdict"] == "OBSTRUCTED");
  // The probe's limit and the vanishing limit are tied by the factor 4 sqrt(pi).
  const double limit = crit.results["vanishing"]["m1"]["limit_estimate"].get<double>();
  const double last = probe.results["levels"].back()["lower_stat"].get<double>();
  CHECK(last * 4 * std::sqrt(std::numbers::pi) == doctest::Approx(limit).epsilon(0.01));
}

TEST_CASE("Full picture for e^{iz}: bounded, probe decays") {
  RunConfig cfg;
  CHECK(cmd_certify({"jg", {"exp_iz", ""}}, cfg).results["verdict"] == "BOUNDED");
  CHECK(cmd_probe({"jg", {"exp_iz", ""}, 0.0}, cfg).results["verdict"] == "DECAYING");
  CHECK(cmd_certify({"ig", {"exp_iz", ""}}, cfg).results["verdict"] == "UNBOUNDED-EVIDENCE");
}

TEST_CASE("Tool output is independent of the thread count") {
  auto out = [](std::vector<std::string> args) {
    std::ostringstream o;
    std::ostringstream e;
    REQUIRE(cli::run(args, o, e) == 0);
    return o.str();
  };
  CHECK(out({"--jobs", "1", "--format", "csv", "probe", "--op", "jg", "--symbol", "exp_isqrtz", "--levels", "6"}) ==
        out({"--jobs", "3", "--format", "csv", "probe", "--op", "jg", "--symbol", "exp_isqrtz", "--levels", "6"}));
  CHECK(out({"--jobs", "1", "--format", "csv", "criteria", "--symbol", "cayley", "--vanishing"}) ==
        out({"--jobs", "4", "--format", "csv", "criteria", "--symbol", "cayley", "--vanishing"}));
}
