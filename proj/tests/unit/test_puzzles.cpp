#include "causanet/puzzles.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "causanet/dsl.hpp"
#include "doctest.h"
#include "test_nets.hpp"

using namespace causanet;

TEST_CASE("the registry lists the eight scenarios") {
  const auto& names = scenario_names();
  REQUIRE(names.size() == 8);
  CHECK(names[0] == "symmetric_overdetermination");
  CHECK(names[4] == "trumping");
  CHECK_THROWS_AS(build_scenario("flying_spaghetti"), Error);
}

TEST_CASE("every scenario's expectations pass") {
  for (const auto& name : scenario_names()) {
    Scenario scenario = build_scenario(name);
    CHECK_FALSE(scenario.expectations.empty());
    for (const auto& result : check_scenario(scenario)) {
      CHECK_MESSAGE(result.passed,
                    result.scenario + ": " + result.description + " — " +
                        result.detail);
    }
  }
}

TEST_CASE("scenario nets validate cleanly") {
  for (const auto& name : scenario_names()) {
    CHECK(validate(build_scenario(name).net).ok());
  }
}

TEST_CASE("fixture files parse to the programmatic constructors") {
  namespace fs = std::filesystem;
  fs::path dir = causanet::testing::scenarios_dir();
  for (const auto& name : scenario_names()) {
    fs::path path = dir / (name + ".causanet");
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    ParseResult result = parse_document(buf.str());
    REQUIRE_MESSAGE(result.ok(), path.string());
    const NetDef* net = result.document.find_net(name);
    REQUIRE_MESSAGE(net != nullptr, name);
    CHECK_MESSAGE(*net == build_scenario(name).net, name);
  }
}

TEST_CASE("symmetric overdetermination really needs both tokens") {
  Scenario s = build_scenario("symmetric_overdetermination");
  CHECK(enabled_transitions(s.net, Marking({1, 1, 0})).size() == 1);
  CHECK(enabled_transitions(s.net, Marking({0, 1, 0})).empty());
  CHECK(enabled_transitions(s.net, Marking({1, 0, 0})).empty());
}

TEST_CASE("the job market expectations include the quoted marking") {
  Scenario s = build_scenario("job_market");
  bool found = false;
  for (const auto& e : s.expectations) {
    if (const auto* prefix =
            std::get_if<ExpectMarkingSequencePrefix>(&e.check)) {
      for (const auto& m : prefix->prefix) {
        if (m == Marking({2, 1, 0, 1})) found = true;
      }
    }
  }
  CHECK(found);
}

TEST_CASE("trumping is decided by the delays in every seeded run") {
  Scenario s = build_scenario("trumping");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SimTrace trace = run(s.net, RunConfig{10, 50, seed,
                                          GatePolicy::centroid});
    REQUIRE(trace.events.size() == 1);
    CHECK(s.net.transitions[trace.events[0].transition].name == "merlin");
    CHECK(trace.events[0].time == doctest::Approx(1.0));
  }
}

TEST_CASE("fizzling: whenever the thrower's gate passes, the vandal idles") {
  Scenario s = build_scenario("fizzling");
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SimTrace trace = run(s.net, RunConfig{10, 50, seed,
                                          GatePolicy::centroid});
    bool a_fired = false, b_fired = false;
    for (const auto& ev : trace.events) {
      if (s.net.transitions[ev.transition].name == "throw_a") a_fired = true;
      if (s.net.transitions[ev.transition].name == "throw_b") b_fired = true;
    }
    CHECK(a_fired);  // the rage gate is crisp certainty
    CHECK_FALSE(b_fired);
  }
}
