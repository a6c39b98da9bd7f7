#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbvote/ballots.hpp"

namespace pbvote {

enum class RuleTag { Greedy, Mes, EconomicalGreedy, EconomicalMes };

inline constexpr std::array<RuleTag, 4> kAllRules = {
    RuleTag::Greedy, RuleTag::Mes, RuleTag::EconomicalGreedy,
    RuleTag::EconomicalMes};

// CLI tokens double as serialized names: greedy, mes, eco-greedy, eco-mes.
std::string to_string(RuleTag r);
std::optional<RuleTag> rule_from_string(const std::string& s);

// Greedy and MES price by cost utilities; the economical variants use
// cardinality utilities.
UtilityScheme scheme_for(RuleTag r);

struct MesRound {
  int project_id = 0;
  Rational q;
  // Positive payers only, in voter order; amounts sum exactly to the cost.
  std::vector<std::pair<std::string, Rational>> payments;
  bool tie_broken = false;  // another candidate had the same q this round

  bool operator==(const MesRound&) const = default;
};

struct MesDiagnostics {
  Rational final_start_budget;  // per-voter budget of the kept run
  std::vector<MesRound> rounds;
  std::vector<Rational> final_budgets;  // per voter, profile order

  bool operator==(const MesDiagnostics&) const = default;
};

struct Outcome {
  RuleTag rule = RuleTag::Greedy;
  std::vector<int> winners;  // ascending project ids
  Money total_cost = 0;
  std::optional<MesDiagnostics> mes;
  // Projects whose selection order was decided by the cost-then-id tie rule.
  std::vector<int> tie_projects;

  bool operator==(const Outcome&) const = default;
};

// Single pass over projects by decreasing total utility per cost unit; a
// project is added iff it still fits, skipped projects are never revisited.
// Projects with zero total utility are not funded. Ties break toward lower
// cost, then lower id.
Outcome greedy(const Instance& instance, const UtilityProfile& profile,
               RuleTag tag = RuleTag::Greedy);

struct MinQResult {
  Rational q;  // minimal q with sum_i min(q*u_i, b_i) == cost
  // (voter index, payment) for every voter paying > 0, in voter order.
  std::vector<std::pair<std::size_t, Rational>> payments;
};

// Exact piecewise-linear solve. Returns nullopt iff the supporters' combined
// remaining budget cannot cover the cost.
std::optional<MinQResult> min_q(Money cost, const std::vector<Rational>& budgets,
                                const std::vector<long long>& utilities);
std::optional<MinQResult> min_q(const Project& project,
                                const UtilityProfile& profile,
                                const std::vector<Rational>& budgets,
                                const Instance& instance);

// Equal-shares rounds from a fixed per-voter budget: repeatedly fund the
// cheapest-to-afford project (minimal q; ties toward lower cost, then lower
// id) and charge each supporter min(q*u_i, b_i).
Outcome mes_fixed(const Instance& instance, const UtilityProfile& profile,
                  const Rational& start_budget, RuleTag tag = RuleTag::Mes);

struct Add1Options {
  Money step = 1;  // CHF added to every voter's budget per retry
};

// Budget-increase completion: start from B/n per voter, re-run from scratch
// with step more per voter while the result stays within the instance budget.
// Keeps the last feasible run; stops at the first overshoot or once every
// project with any support has been funded.
Outcome mes_add1(const Instance& instance, const UtilityProfile& profile,
                 Add1Options options = {}, RuleTag tag = RuleTag::Mes);

// Validates the ballots, translates them with the rule's utility scheme and
// dispatches (MES variants run with the budget-increase completion). Throws
// BallotValidationError on invalid ballots.
Outcome run_rule(const Instance& instance, const std::vector<Ballot>& ballots,
                 RuleTag rule, Add1Options options = {});

}  // namespace pbvote
