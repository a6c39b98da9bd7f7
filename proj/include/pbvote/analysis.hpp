#pragma once

#include <map>
#include <string>
#include <vector>

#include "pbvote/rules.hpp"

namespace pbvote {

struct PointDistribution {
  InputFormat source_format = InputFormat::SN;
  std::vector<int> project_ids;   // instance order
  std::vector<Rational> shares;   // aligned with project_ids, sums to 1
};

// Normalized per-project point mass of a one-format ballot list (approvals
// count 1, rankings use the rank conversion). Requires a positive point
// total. Throws std::invalid_argument otherwise.
PointDistribution point_distribution(const std::vector<Ballot>& ballots,
                                     const Instance& instance);

// Jensen-Shannon divergence, log base 2, so the result lies in [0, 1].
// Both distributions must cover the same projects in the same order.
double js_divergence(const PointDistribution& p, const PointDistribution& q);

// Size of the symmetric difference of two winner sets.
int hamming(const std::vector<int>& winners_a, const std::vector<int>& winners_b);

extern const std::vector<Money> kDisplayBudgets;  // 10000 20000 60000 90000
extern const std::vector<Money> kHammingBudgets;  // 10000..50000 step 5000

struct SweepCell {
  Money budget = 0;
  std::vector<int> winners;
  Money total_cost = 0;

  bool operator==(const SweepCell&) const = default;
};
struct SweepRow {
  RuleTag rule = RuleTag::Greedy;
  InputFormat format = InputFormat::SN;
  std::vector<SweepCell> cells;  // budgets ascending

  bool operator==(const SweepRow&) const = default;
};
struct SweepTable {
  std::vector<Money> budgets;
  std::vector<SweepRow> rows;  // rule-major, then format in given order

  bool operator==(const SweepTable&) const = default;
};

// Runs every rule on every ballot list at every budget. Rows are independent,
// so threads > 1 computes them concurrently; assembly order is fixed, so the
// table is identical for any thread count.
SweepTable budget_sweep(
    const Instance& instance,
    const std::vector<std::pair<InputFormat, std::vector<Ballot>>>& ballot_sets,
    const std::vector<RuleTag>& rules, const std::vector<Money>& budgets,
    int threads = 1);

// Mean winner-set distance between format pairs for one rule: averages the
// per-budget distance over all budgets sampled, then over all unordered
// format pairs.
Rational avg_pairwise_hamming(const SweepTable& table, RuleTag rule);

struct CountStats {
  std::size_t num_ballots = 0;
  int mode = 0;       // smallest most-frequent count
  int mode_freq = 0;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // population
};

// Distribution of "projects given at least one point" per ballot.
CountStats ballot_count_stats(const std::vector<Ballot>& ballots);

struct ConcentrationRow {
  std::string voter_id;
  Rational district_fraction;  // share of the ballot's points staying in the
  Rational category_fraction;  // voter's own district / category
};
struct ConcentrationSummary {
  double district_mean = 0, district_median = 0, district_std = 0;
  double category_mean = 0, category_median = 0, category_std = 0;
};
struct ConcentrationResult {
  std::vector<ConcentrationRow> rows;  // ballot order
  ConcentrationSummary summary;
};

// Requires a profile entry for every voter. Throws std::invalid_argument if
// one is missing.
ConcentrationResult concentration(
    const std::vector<Ballot>& ballots,
    const std::map<std::string, VoterProfileEntry>& profiles,
    const Instance& instance);

struct ConsistencyFlags {
  std::string voter_id;
  bool sn_s5_nested = false;       // S5 selection inside the SN approvals
  bool d5_d10_pointwise = false;   // D10 gives every project >= its D5 points
  bool s5_s5r_close = false;       // |S5 selection xor S5R selection| <= 1
  int s5_s5r_delta = 0;            // that symmetric-difference size, raw
  bool s5r_s5d10_monotone = false; // better S5R rank never gets fewer S5D10 points
};
struct ConsistencyReport {
  std::vector<ConsistencyFlags> voters;
  double share_sn_s5_nested = 0;
  double share_d5_d10_pointwise = 0;
  double share_s5_s5r_close = 0;
  double share_s5r_s5d10_monotone = 0;
};

// Cross-format agreement for an electorate that answered in all six formats.
// Every voter must appear in each format's ballot list.
ConsistencyReport consistency_checks(
    const std::map<InputFormat, std::vector<Ballot>>& ballots_by_format);

struct OutcomeExplanation {
  RuleTag rule = RuleTag::Greedy;
  // Exact cost-utility value -> number of voters attaining it.
  std::map<Money, int> utility_histogram;
  // Mean over voters of (cost of funded projects the voter supports) /
  // (total funded cost); 0 when nothing is funded.
  Rational mean_approved_spending_fraction;
  Rational share_with_positive_utility;
  Rational share_with_zero_utility;
  // Funded cost per district / category over total funded cost; each family
  // sums to 1 whenever total funded cost is positive.
  std::map<District, Rational> district_budget_shares;
  std::map<Category, Rational> category_budget_shares;
};

struct ExplanationStats {
  OutcomeExplanation a, b;
  // Population point shares by district / category, from the ballots.
  std::map<District, Rational> district_vote_shares;
  std::map<Category, Rational> category_vote_shares;
};

// Side-by-side audit of two outcomes against one electorate (cost utilities).
ExplanationStats explanation_stats(const Instance& instance,
                                   const std::vector<Ballot>& ballots,
                                   const Outcome& outcome_a,
                                   const Outcome& outcome_b);

}  // namespace pbvote
