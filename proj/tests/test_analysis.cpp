#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>

#include "doctest.h"
#include "gen.hpp"
#include "pbvote/analysis.hpp"
#include "pbvote/simulation.hpp"

using namespace pbvote;

namespace {

Ballot approve(std::vector<int> ids, std::string voter) {
  Ballot b;
  b.voter_id = std::move(voter);
  b.format = InputFormat::SN;
  b.approvals.insert(ids.begin(), ids.end());
  return b;
}

Ballot rank(std::vector<int> ids, std::string voter) {
  Ballot b;
  b.voter_id = std::move(voter);
  b.format = InputFormat::S5R;
  b.ranking = std::move(ids);
  return b;
}

Ballot give_points(InputFormat format, std::map<int, int> points,
                   std::string voter) {
  Ballot b;
  b.voter_id = std::move(voter);
  b.format = format;
  b.points = std::move(points);
  return b;
}

Instance two_projects(Money cost1, Money cost2, Money budget) {
  Instance instance;
  instance.budget = budget;
  instance.projects.push_back({1, "P1", cost1, District::Nord, Category::Nature});
  instance.projects.push_back({2, "P2", cost2, District::Ost, Category::Culture});
  return instance;
}

}  // namespace

TEST_CASE("point distribution normalizes exactly") {
  const Instance instance = two_projects(10, 20, 30);
  const std::vector<Ballot> ballots = {approve({1, 2}, "a"), approve({1}, "b")};
  const PointDistribution dist = point_distribution(ballots, instance);
  CHECK(dist.source_format == InputFormat::SN);
  CHECK(dist.project_ids == std::vector<int>{1, 2});
  REQUIRE(dist.shares.size() == 2);
  CHECK(dist.shares[0] == rat(2, 3));
  CHECK(dist.shares[1] == rat(1, 3));

  SUBCASE("shares always sum to one, every project listed") {
    Rng rng(88);
    const Instance fixture = zurich_fixture();
    for (int i = 0; i < 20; ++i) {
      const InputFormat format = testgen::random_feasible_format(rng, fixture);
      const auto random_ballots =
          testgen::random_ballots(rng, fixture, format, 6);
      const PointDistribution d = point_distribution(random_ballots, fixture);
      REQUIRE(d.project_ids.size() == fixture.projects.size());
      Rational total = 0;
      for (const Rational& share : d.shares) {
        CHECK(sgn(share) >= 0);
        total += share;
      }
      CHECK(total == rat(1));
    }
  }
  SUBCASE("rankings contribute converted points") {
    const Instance fixture = zurich_fixture();
    const std::vector<Ballot> ranked = {rank({17, 16, 6, 7, 14}, "a")};
    const PointDistribution d = point_distribution(ranked, fixture);
    CHECK(d.shares[*fixture.index_of(17)] == rat(5, 15));
    CHECK(d.shares[*fixture.index_of(14)] == rat(1, 15));
  }
  SUBCASE("empty or pointless input throws") {
    CHECK_THROWS_AS(point_distribution({}, instance), std::invalid_argument);
  }
}

TEST_CASE("divergence: frozen value and metric-like axioms") {
  PointDistribution p, q;
  p.project_ids = q.project_ids = {1, 2};
  p.shares = {rat(1), rat(0)};
  q.shares = {rat(1, 2), rat(1, 2)};
  CHECK(js_divergence(p, q) == doctest::Approx(0.3112781244591328).epsilon(1e-12));
  CHECK(js_divergence(q, p) == doctest::Approx(js_divergence(p, q)).epsilon(1e-12));
  CHECK(js_divergence(p, p) == doctest::Approx(0.0));

  // Disjoint supports sit at the top of the scale.
  PointDistribution r = p;
  r.shares = {rat(0), rat(1)};
  CHECK(js_divergence(p, r) == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("random pairs stay within [0, 1] and symmetric") {
    Rng rng(5150);
    const Instance fixture = zurich_fixture();
    for (int i = 0; i < 50; ++i) {
      const auto ballots_a = testgen::random_ballots(
          rng, fixture, testgen::random_feasible_format(rng, fixture), 5);
      const auto ballots_b = testgen::random_ballots(
          rng, fixture, testgen::random_feasible_format(rng, fixture), 5);
      const auto da = point_distribution(ballots_a, fixture);
      const auto db = point_distribution(ballots_b, fixture);
      const double fwd = js_divergence(da, db);
      CHECK(fwd >= 0.0);
      CHECK(fwd <= 1.0);
      CHECK(js_divergence(db, da) == doctest::Approx(fwd).epsilon(1e-12));
    }
  }
  SUBCASE("mismatched project sets are rejected") {
    PointDistribution other;
    other.project_ids = {1, 3};
    other.shares = {rat(1, 2), rat(1, 2)};
    CHECK_THROWS_AS(js_divergence(p, other), std::invalid_argument);
  }
}

TEST_CASE("winner-set distance: hand value and metric axioms") {
  CHECK(hamming({14, 16, 17}, {14, 22}) == 3);
  CHECK(hamming({}, {}) == 0);
  CHECK(hamming({1, 2}, {}) == 2);
  CHECK(hamming({1, 2}, {2, 1}) == 0);

  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    auto draw = [&rng] {
      std::vector<int> s;
      for (int id = 1; id <= 8; ++id)
        if (rng.below(2)) s.push_back(id);
      return s;
    };
    const auto a = draw(), b = draw(), c = draw();
    CHECK(hamming(a, a) == 0);
    CHECK(hamming(a, b) == hamming(b, a));
    CHECK(hamming(a, c) <= hamming(a, b) + hamming(b, c));
  }
}

TEST_CASE("budget sweep: frozen walk plus thread-count independence") {
  const Instance instance = two_projects(10, 20, 30);
  const std::vector<Ballot> ballots = {approve({1}, "v1"), approve({1, 2}, "v2")};
  const std::vector<std::pair<InputFormat, std::vector<Ballot>>> sets = {
      {InputFormat::SN, ballots}};

  const SweepTable table =
      budget_sweep(instance, sets, {RuleTag::Greedy}, {10, 30});
  REQUIRE(table.rows.size() == 1);
  CHECK(table.budgets == std::vector<Money>{10, 30});
  const SweepRow& row = table.rows[0];
  CHECK(row.rule == RuleTag::Greedy);
  CHECK(row.format == InputFormat::SN);
  REQUIRE(row.cells.size() == 2);
  CHECK(row.cells[0].budget == 10);
  CHECK(row.cells[0].winners == std::vector<int>{1});
  CHECK(row.cells[0].total_cost == 10);
  CHECK(row.cells[1].winners == std::vector<int>{1, 2});
  CHECK(row.cells[1].total_cost == 30);

  SUBCASE("thread counts do not change the table") {
    Rng rng(4096);
    const Instance fixture = zurich_fixture();
    std::vector<std::pair<InputFormat, std::vector<Ballot>>> big;
    for (InputFormat format : {InputFormat::SN, InputFormat::S5, InputFormat::D10})
      big.emplace_back(format, testgen::random_ballots(rng, fixture, format, 8));
    const SweepTable solo = budget_sweep(fixture, big, {kAllRules.begin(), kAllRules.end()},
                                         kHammingBudgets, 1);
    const SweepTable pooled = budget_sweep(fixture, big, {kAllRules.begin(), kAllRules.end()},
                                           kHammingBudgets, 4);
    CHECK(solo == pooled);
    REQUIRE(solo.rows.size() == kAllRules.size() * big.size());
    std::size_t r = 0;
    for (RuleTag rule : kAllRules)
      for (const auto& [format, unused] : big) {
        (void)unused;
        CHECK(solo.rows[r].rule == rule);
        CHECK(solo.rows[r].format == format);
        ++r;
      }
  }
  SUBCASE("bad arguments are rejected") {
    CHECK_THROWS_AS(budget_sweep(instance, sets, {RuleTag::Greedy}, {0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(budget_sweep(instance, sets, {RuleTag::Greedy}, {10}, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("mean pairwise winner distance over a hand-built table") {
  SweepTable table;
  table.budgets = {10, 30};
  SweepRow row_sn{RuleTag::Greedy, InputFormat::SN, {{10, {1}, 10}, {30, {1, 2}, 30}}};
  SweepRow row_s5{RuleTag::Greedy, InputFormat::S5, {{10, {2}, 20}, {30, {1, 2}, 30}}};
  table.rows = {row_sn, row_s5};
  // One pair, two budgets: distances 2 and 0 average to 1.
  CHECK(avg_pairwise_hamming(table, RuleTag::Greedy) == rat(1));
  CHECK_THROWS_AS(avg_pairwise_hamming(table, RuleTag::Mes), std::invalid_argument);

  SweepRow row_d5{RuleTag::Greedy, InputFormat::D5, {{10, {}, 0}, {30, {2}, 20}}};
  table.rows.push_back(row_d5);
  // Pairs: (SN,S5) -> 2,0; (SN,D5) -> 1,1; (S5,D5) -> 1,1. Mean = 6/6.
  CHECK(avg_pairwise_hamming(table, RuleTag::Greedy) == rat(1));
  table.rows[2].cells[0].winners = {1};
  table.rows[2].cells[1].winners = {};
  // Pairs now: (SN,S5) -> 2,0; (SN,D5) -> 0,2; (S5,D5) -> 2,2. Mean = 8/6.
  CHECK(avg_pairwise_hamming(table, RuleTag::Greedy) == rat(4, 3));
}

TEST_CASE("ballot count statistics") {
  const std::vector<Ballot> ballots = {approve({1, 2}, "a"),
                                       approve({3, 4, 5}, "b"),
                                       approve({1, 4, 6}, "c")};
  const CountStats stats = ballot_count_stats(ballots);
  CHECK(stats.num_ballots == 3);
  CHECK(stats.mode == 3);
  CHECK(stats.mode_freq == 2);
  CHECK(stats.mean == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK(stats.median == doctest::Approx(3.0));
  CHECK(stats.stddev == doctest::Approx(std::sqrt(2.0 / 9.0)).epsilon(1e-12));

  SUBCASE("fixed-size formats have zero spread") {
    Rng rng(17);
    const auto s5 = testgen::random_ballots(rng, zurich_fixture(), InputFormat::S5, 40);
    const CountStats fixed = ballot_count_stats(s5);
    CHECK(fixed.mode == 5);
    CHECK(fixed.mode_freq == 40);
    CHECK(fixed.mean == doctest::Approx(5.0));
    CHECK(fixed.median == doctest::Approx(5.0));
    CHECK(fixed.stddev == doctest::Approx(0.0));
  }
  SUBCASE("mode ties resolve to the smaller count, even medians average") {
    const std::vector<Ballot> even = {approve({1}, "a"), approve({2}, "b"),
                                      approve({1, 2}, "c"), approve({3, 4}, "d")};
    const CountStats stats_even = ballot_count_stats(even);
    CHECK(stats_even.mode == 1);
    CHECK(stats_even.mode_freq == 2);
    CHECK(stats_even.median == doctest::Approx(1.5));
  }
  SUBCASE("zero-point entries do not count as supported projects") {
    const std::vector<Ballot> d10 = {
        give_points(InputFormat::D10, {{1, 10}, {2, 0}}, "a")};
    CHECK(ballot_count_stats(d10).mean == doctest::Approx(1.0));
  }
  SUBCASE("empty input throws") {
    CHECK_THROWS_AS(ballot_count_stats({}), std::invalid_argument);
  }
}

TEST_CASE("point concentration in the voter's own district and category") {
  const Instance fixture = zurich_fixture();
  // Ranking [17,16,6,7,22] spends 5,4,3,2,1 points; 17 and 16 sit in Ost
  // (9/15 of the mass) and 17 plus 6 are transportation (8/15).
  const std::vector<Ballot> ballots = {rank({17, 16, 6, 7, 22}, "a")};
  const std::map<std::string, VoterProfileEntry> profiles = {
      {"a", {District::Ost, Category::Transportation}}};
  const ConcentrationResult result = concentration(ballots, profiles, fixture);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].voter_id == "a");
  CHECK(result.rows[0].district_fraction == rat(3, 5));
  CHECK(result.rows[0].category_fraction == rat(8, 15));
  CHECK(result.summary.district_mean == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(result.summary.district_std == doctest::Approx(0.0));

  SUBCASE("summary aggregates multiple voters") {
    const std::vector<Ballot> pair = {
        approve({13, 14}, "a"),   // both Ost: district fraction 1
        approve({13, 1}, "b")};   // one of two in Ost: 1/2
    const std::map<std::string, VoterProfileEntry> both = {
        {"a", {District::Ost, Category::Nature}},
        {"b", {District::Ost, Category::Nature}}};
    const ConcentrationResult two = concentration(pair, both, fixture);
    CHECK(two.rows[0].district_fraction == rat(1));
    CHECK(two.rows[1].district_fraction == rat(1, 2));
    CHECK(two.summary.district_mean == doctest::Approx(0.75));
    CHECK(two.summary.district_median == doctest::Approx(0.75));
    CHECK(two.summary.district_std == doctest::Approx(0.25).epsilon(1e-12));
    // 13, 14 and 1 are all nature projects, so both voters keep every point
    // inside their favourite category.
    CHECK(two.rows[1].category_fraction == rat(1));
  }
  SUBCASE("a missing profile is an error") {
    const std::vector<Ballot> pair = {approve({13}, "a"), approve({13}, "zz")};
    CHECK_THROWS_AS(concentration(pair, profiles, fixture), std::invalid_argument);
  }
}

TEST_CASE("cross-format consistency flags") {
  const Instance fixture = zurich_fixture();
  auto electorate_of = [](const Ballot& sn, const Ballot& s5, const Ballot& d5,
                          const Ballot& d10, const Ballot& s5r,
                          const Ballot& s5d10) {
    std::map<InputFormat, std::vector<Ballot>> by_format;
    by_format[InputFormat::SN] = {sn};
    by_format[InputFormat::S5] = {s5};
    by_format[InputFormat::D5] = {d5};
    by_format[InputFormat::D10] = {d10};
    by_format[InputFormat::S5R] = {s5r};
    by_format[InputFormat::S5D10] = {s5d10};
    return by_format;
  };

  const Ballot sn = approve({17, 16, 6, 7, 14, 22, 12, 5}, "a");
  Ballot s5 = approve({17, 16, 6, 7, 14}, "a");
  s5.format = InputFormat::S5;
  const Ballot d5 = give_points(InputFormat::D5, {{17, 2}, {16, 1}, {6, 1}, {7, 1}}, "a");
  Ballot d10 =
      give_points(InputFormat::D10, {{17, 4}, {16, 3}, {6, 1}, {7, 1}, {14, 1}}, "a");
  const Ballot s5r = rank({17, 16, 6, 7, 14}, "a");
  Ballot s5d10 =
      give_points(InputFormat::S5D10, {{17, 4}, {16, 3}, {6, 1}, {7, 1}, {14, 1}}, "a");

  SUBCASE("a coherent voter passes every check") {
    const ConsistencyReport report =
        consistency_checks(electorate_of(sn, s5, d5, d10, s5r, s5d10));
    REQUIRE(report.voters.size() == 1);
    const ConsistencyFlags& flags = report.voters[0];
    CHECK(flags.sn_s5_nested);
    CHECK(flags.d5_d10_pointwise);
    CHECK(flags.s5_s5r_close);
    CHECK(flags.s5_s5r_delta == 0);
    CHECK(flags.s5r_s5d10_monotone);
    CHECK(report.share_sn_s5_nested == doctest::Approx(1.0));
    CHECK(report.share_d5_d10_pointwise == doctest::Approx(1.0));
    CHECK(report.share_s5_s5r_close == doctest::Approx(1.0));
    CHECK(report.share_s5r_s5d10_monotone == doctest::Approx(1.0));
  }
  SUBCASE("an S5 pick outside the SN approvals breaks nesting") {
    const Ballot narrow = approve({17, 16, 6, 7}, "a");
    const ConsistencyReport report =
        consistency_checks(electorate_of(narrow, s5, d5, d10, s5r, s5d10));
    CHECK(!report.voters[0].sn_s5_nested);
    CHECK(report.share_sn_s5_nested == doctest::Approx(0.0));
  }
  SUBCASE("a D10 below the D5 points breaks point dominance") {
    const Ballot stingy = give_points(
        InputFormat::D10, {{17, 1}, {16, 6}, {6, 1}, {7, 1}, {14, 1}}, "a");
    const ConsistencyReport report =
        consistency_checks(electorate_of(sn, s5, d5, stingy, s5r, s5d10));
    CHECK(!report.voters[0].d5_d10_pointwise);
  }
  SUBCASE("swapping one S5 project moves the delta to two") {
    Ballot swapped = approve({17, 16, 6, 7, 22}, "a");
    swapped.format = InputFormat::S5;
    const ConsistencyReport report =
        consistency_checks(electorate_of(sn, swapped, d5, d10, s5r, s5d10));
    CHECK(!report.voters[0].s5_s5r_close);
    CHECK(report.voters[0].s5_s5r_delta == 2);
  }
  SUBCASE("giving a low rank more points breaks monotonicity") {
    const Ballot inverted = give_points(
        InputFormat::S5D10, {{17, 1}, {16, 1}, {6, 1}, {7, 1}, {14, 6}}, "a");
    const ConsistencyReport report =
        consistency_checks(electorate_of(sn, s5, d5, d10, s5r, inverted));
    CHECK(!report.voters[0].s5r_s5d10_monotone);
  }
  SUBCASE("every format and voter must be present") {
    auto by_format = electorate_of(sn, s5, d5, d10, s5r, s5d10);
    by_format.erase(InputFormat::D10);
    CHECK_THROWS_AS(consistency_checks(by_format), std::invalid_argument);

    auto uneven = electorate_of(sn, s5, d5, d10, s5r, s5d10);
    Ballot stranger = give_points(InputFormat::D5, {{1, 5}}, "b");
    uneven[InputFormat::D5].push_back(stranger);
    CHECK_THROWS_AS(consistency_checks(uneven), std::invalid_argument);
  }
}

TEST_CASE("outcome explanations: histograms and spending shares") {
  const Instance fixture = zurich_fixture();
  const std::vector<Ballot> ballots = {approve({17}, "a"), approve({22}, "b")};
  Outcome first;
  first.rule = RuleTag::Greedy;
  first.winners = {16, 17};
  first.total_cost = 15000;
  Outcome second;
  second.rule = RuleTag::Mes;
  second.winners = {22};
  second.total_cost = 10000;

  const ExplanationStats stats = explanation_stats(fixture, ballots, first, second);

  CHECK(stats.a.rule == RuleTag::Greedy);
  CHECK(stats.a.utility_histogram ==
        std::map<Money, int>{{0, 1}, {5000, 1}});
  CHECK(stats.a.mean_approved_spending_fraction == rat(1, 6));
  CHECK(stats.a.share_with_positive_utility == rat(1, 2));
  CHECK(stats.a.share_with_zero_utility == rat(1, 2));
  CHECK(stats.a.district_budget_shares.at(District::Ost) == rat(1));
  CHECK(stats.a.district_budget_shares.at(District::West) == rat(0));
  CHECK(stats.a.category_budget_shares.at(Category::Transportation) == rat(1, 3));
  CHECK(stats.a.category_budget_shares.at(Category::Culture) == rat(2, 3));
  CHECK(stats.a.category_budget_shares.at(Category::Nature) == rat(0));

  CHECK(stats.b.utility_histogram ==
        std::map<Money, int>{{0, 1}, {10000, 1}});
  CHECK(stats.b.mean_approved_spending_fraction == rat(1, 2));
  CHECK(stats.b.district_budget_shares.at(District::West) == rat(1));
  CHECK(stats.b.category_budget_shares.at(Category::Culture) == rat(1));

  CHECK(stats.district_vote_shares.at(District::Ost) == rat(1, 2));
  CHECK(stats.district_vote_shares.at(District::West) == rat(1, 2));
  CHECK(stats.district_vote_shares.at(District::Nord) == rat(0));
  CHECK(stats.category_vote_shares.at(Category::Transportation) == rat(1, 2));
  CHECK(stats.category_vote_shares.at(Category::Culture) == rat(1, 2));

  SUBCASE("an empty outcome zeroes the spending side") {
    Outcome nothing;
    nothing.rule = RuleTag::Mes;
    const ExplanationStats bare = explanation_stats(fixture, ballots, first, nothing);
    CHECK(bare.b.utility_histogram == std::map<Money, int>{{0, 2}});
    CHECK(bare.b.mean_approved_spending_fraction == rat(0));
    CHECK(bare.b.share_with_zero_utility == rat(1));
    CHECK(bare.b.district_budget_shares.at(District::Ost) == rat(0));
  }
}
