#include <doctest.h>

#include "myopic/errors.hpp"
#include "myopic/verify.hpp"

using namespace myopic;

TEST_CASE("suite catalog and unknown names") {
  CHECK(suite_catalog().size() == 12);
  CHECK_THROWS_AS(run_suite("no-such-suite", {}), UsageError);
}

TEST_CASE("small suite runs pass") {
  for (const char* name : {"monotonicity", "alpha-contraction", "five-point", "order-gathering",
                           "pair-structure", "fault-f1", "fault-f2", "seb-oracle", "small-n-convergence",
                           "triangle-livelock"}) {
    CAPTURE(name);
    const auto r = run_suite(name, {5, 11, 1});
    CHECK(r.passed());
    CHECK_FALSE(r.counterexample);
  }
}

TEST_CASE("suite results do not depend on the thread count") {
  for (const char* name : {"monotonicity", "pair-structure", "seb-oracle"}) {
    CAPTURE(name);
    const auto one = to_json(run_suite(name, {40, 3, 1})).dump();
    const auto four = to_json(run_suite(name, {40, 3, 4})).dump();
    CHECK(one == four);
  }
}

TEST_CASE("chain walk finds loop members") {
  using S = std::optional<std::size_t>;
  const std::vector<S> succ = {S(1), S(0), S(1), S(4), S(5), S(3), std::nullopt, S(6)};
  const auto m = loop_members_by_chain_walk(succ);
  CHECK(m == std::vector<bool>{true, true, false, true, true, true, false, false});
}
