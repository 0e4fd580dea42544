#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "digraphon/structure.hpp"
#include "fixtures.hpp"

using namespace digraphon;
using namespace fixtures;

TEST_CASE("decompose fixtures") {
  Decomposition du = decompose(ut());
  CHECK(du.components.empty());
  CHECK(du.fragmented == std::vector<int>{0, 1, 2});

  Decomposition dc = decompose(c3());
  REQUIRE(dc.components.size() == 1);
  CHECK(dc.components[0] == std::vector<int>{0, 1, 2});
  CHECK(dc.fragmented.empty());

  Decomposition df = decompose(fig2());
  REQUIRE(df.components.size() == 2);
  bool two_cycle_first = df.components[0] == std::vector<int>{0, 1};
  CHECK(two_cycle_first);
  CHECK(df.components[1] == std::vector<int>{3});
  CHECK(df.fragmented == std::vector<int>{2});
  // No direct mass between the components, but a path through the
  // fragmented block 2 connects them in the extended condensation.
  CHECK(df.condensation.empty());
  CHECK(df.extended_condensation ==
        std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("verify_decomposition") {
  CHECK(verify_decomposition(c3()));
  CHECK(verify_decomposition(ut()));
  CHECK(verify_decomposition(fig2()));

  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial)
    CHECK(verify_decomposition(random_digraphon(rng, 6, 0.3)));

  Eigen::VectorXd mu = Eigen::VectorXd::Constant(13, 1.0 / 13);
  CHECK_THROWS_AS(
      verify_decomposition(StepDigraphon(mu, Eigen::MatrixXd::Zero(13, 13))),
      Error);
}

TEST_CASE("reach") {
  CHECK(reach(c3(), {0}, Direction::Out) == std::vector<int>{0, 1, 2});
  CHECK(reach(ut(), {2}, Direction::Out).empty());
  CHECK(reach(ut(), {0}, Direction::Out) == std::vector<int>{1, 2});
  CHECK(reach(ut(), {2}, Direction::In) == std::vector<int>{0, 1});

  // Closure idempotence.
  Rng rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    StepDigraphon g = random_digraphon(rng, 6, 0.3);
    std::vector<int> once = reach(g, {0}, Direction::Out);
    std::vector<int> twice = reach(g, once, Direction::Out);
    CHECK(std::includes(once.begin(), once.end(), twice.begin(), twice.end()));
  }
}

TEST_CASE("reachability profile") {
  ReachabilityProfile p = reachability_profile(c3(), 0, 0, 20);
  CHECK(p.same_component);
  CHECK(p.eventual_period == 3);
  CHECK(p.shift == 0);
  CHECK(p.lengths_observed == std::vector<int>{3, 6, 9, 12, 15, 18});

  ReachabilityProfile q = reachability_profile(c3(), 0, 1, 20);
  CHECK(q.shift == 1);
  CHECK(q.lengths_observed.front() == 1);

  // 2 blocks, edges 0->1, 1->0, 0->0: aperiodic, every length eventually.
  Eigen::VectorXd mu(2);
  mu << 0.5, 0.5;
  Eigen::MatrixXd v(2, 2);
  v << 1, 1, 1, 0;
  ReachabilityProfile r = reachability_profile(StepDigraphon(mu, v), 0, 0, 20);
  CHECK(r.eventual_period == 1);
  CHECK(r.lengths_observed.size() == 20);

  CHECK_THROWS_AS(reachability_profile(ut(), 2, 0, 20), Error);
  CHECK_THROWS_AS(reachability_profile(c3(), 0, 0, 5), Error);
}

TEST_CASE("period and classes") {
  PeriodicStructure p3 = period_and_classes(c3(), {0, 1, 2});
  CHECK(p3.period == 3);
  CHECK(p3.classes == std::vector<std::vector<int>>{{0}, {1}, {2}});

  PeriodicStructure p1 = period_and_classes(constant(0.5), {0});
  CHECK(p1.period == 1);

  PeriodicStructure p4 = period_and_classes(cycle(4), {0, 1, 2, 3});
  CHECK(p4.period == 4);

  PeriodicStructure p2 = period_and_classes(chorded4(), {0, 1, 2, 3});
  CHECK(p2.period == 2);
  CHECK(p2.classes == std::vector<std::vector<int>>{{0, 2}, {1, 3}});

  CHECK_THROWS_AS(period_and_classes(c3(), {0, 1}), Error);
  CHECK_THROWS_AS(period_and_classes(ut(), {0, 1, 2}), Error);
}

TEST_CASE("period equals gcd of observed cycle lengths") {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    StepDigraphon g = random_strongly_connected(rng, 2 + int(rng.next_below(5)),
                                                0.25);
    std::vector<int> all(g.block_count());
    std::iota(all.begin(), all.end(), 0);
    PeriodicStructure ps = period_and_classes(g, all);
    ReachabilityProfile p =
        reachability_profile(g, 0, 0, 2 * g.block_count() * g.block_count());
    int gcd = 0;
    for (int len : p.lengths_observed) gcd = std::gcd(gcd, len);
    CHECK(ps.period == gcd);
  }
}

TEST_CASE("class uniqueness") {
  CHECK(check_class_uniqueness(c3(), {0, 1, 2}));
  CHECK(check_class_uniqueness(chorded4(), {0, 1, 2, 3}));
  CHECK(check_class_uniqueness(constant(0.5), {0}));
  CHECK(check_class_uniqueness(cycle(6), {0, 1, 2, 3, 4, 5}));
}

TEST_CASE("fragmented order") {
  CHECK(fragmented_order(ut(), {0, 1, 2}) == std::vector<int>{0, 1, 2});
  CHECK(fragmented_order(fig2(), {2}) == std::vector<int>{2});
  CHECK_THROWS_AS(fragmented_order(fig2(), {0}), Error);

  // Random DAG supports: the order is topological and nilpotency holds.
  Rng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    int t = 6;
    Eigen::VectorXd mu = random_measures(rng, t);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(t, t);
    for (int i = 0; i < t; ++i)
      for (int j = i + 1; j < t; ++j)
        if (rng.next_bool(0.4)) v(i, j) = rng.next_double();
    StepDigraphon g(mu, v);
    std::vector<int> order = fragmented_order(g, decompose(g).fragmented);
    std::vector<int> pos(t);
    for (int a = 0; a < t; ++a) pos[order[a]] = a;
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j)
        if (g.values()(i, j) > defaults::kSupportTol) CHECK(pos[i] < pos[j]);
  }
}

TEST_CASE("cycles confined to components") {
  CHECK(cycles_confined_check(ut(), 6));
  CHECK(cycles_confined_check(fig2(), 6));
  CHECK(cycles_confined_check(c3(), 6));

  // Disjoint union of C3 and a self-loop block.
  Eigen::VectorXd mu(4);
  mu << 0.25, 0.25, 0.25, 0.25;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
  v(0, 1) = v(1, 2) = v(2, 0) = 1.0;
  v(3, 3) = 0.8;
  CHECK(cycles_confined_check(StepDigraphon(mu, v), 6));
}
