#include "pbvote/rules.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace pbvote {

std::string to_string(RuleTag r) {
  switch (r) {
    case RuleTag::Greedy: return "greedy";
    case RuleTag::Mes: return "mes";
    case RuleTag::EconomicalGreedy: return "eco-greedy";
    case RuleTag::EconomicalMes: return "eco-mes";
  }
  return "?";
}

std::optional<RuleTag> rule_from_string(const std::string& s) {
  for (RuleTag r : kAllRules)
    if (to_string(r) == s) return r;
  return std::nullopt;
}

UtilityScheme scheme_for(RuleTag r) {
  return (r == RuleTag::Greedy || r == RuleTag::Mes) ? UtilityScheme::Cost
                                                     : UtilityScheme::Cardinality;
}

namespace {

// score_a/cost_a > score_b/cost_b without overflow.
bool ratio_greater(long long score_a, Money cost_a, long long score_b,
                   Money cost_b) {
  return static_cast<__int128>(score_a) * cost_b >
         static_cast<__int128>(score_b) * cost_a;
}
bool ratio_equal(long long score_a, Money cost_a, long long score_b,
                 Money cost_b) {
  return static_cast<__int128>(score_a) * cost_b ==
         static_cast<__int128>(score_b) * cost_a;
}

}  // namespace

Outcome greedy(const Instance& instance, const UtilityProfile& profile,
               RuleTag tag) {
  const std::size_t m = instance.projects.size();
  std::vector<long long> score(m, 0);
  for (const auto& row : profile.utilities)
    for (std::size_t p = 0; p < m; ++p) score[p] += row[p];

  std::vector<std::size_t> order;
  for (std::size_t p = 0; p < m; ++p)
    if (score[p] > 0) order.push_back(p);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Project& pa = instance.projects[a];
    const Project& pb = instance.projects[b];
    if (!ratio_equal(score[a], pa.cost, score[b], pb.cost))
      return ratio_greater(score[a], pa.cost, score[b], pb.cost);
    if (pa.cost != pb.cost) return pa.cost < pb.cost;
    return pa.id < pb.id;
  });

  Outcome outcome;
  outcome.rule = tag;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() &&
           ratio_equal(score[order[i]], instance.projects[order[i]].cost,
                       score[order[j]], instance.projects[order[j]].cost))
      ++j;
    if (j - i > 1)
      for (std::size_t k = i; k < j; ++k)
        outcome.tie_projects.push_back(instance.projects[order[k]].id);
    i = j;
  }

  for (std::size_t p : order) {
    const Project& project = instance.projects[p];
    if (outcome.total_cost + project.cost <= instance.budget) {
      outcome.winners.push_back(project.id);
      outcome.total_cost += project.cost;
    }
  }
  std::sort(outcome.winners.begin(), outcome.winners.end());
  return outcome;
}

namespace {

// Shared exact solve over an explicit supporter list. Budgets indexed by
// voter; supporters must all have positive utility.
std::optional<MinQResult> solve_q(Money cost,
                                  const std::vector<std::size_t>& supporters,
                                  const std::vector<long long>& utilities,
                                  const std::vector<Rational>& budgets) {
  // Voters with an empty wallet can only ever pay zero; drop them up front.
  std::vector<std::size_t> active;
  active.reserve(supporters.size());
  Rational total_budget = 0;
  long long total_util = 0;
  for (std::size_t i : supporters) {
    if (sgn(budgets[i]) <= 0) continue;
    active.push_back(i);
    total_budget += budgets[i];
    total_util += utilities[i];
  }
  const Rational cost_r = rat(cost);
  if (total_budget < cost_r) return std::nullopt;

  // Sort by personal cap b_i/u_i: below the final q a voter pays their whole
  // budget, above it they pay q*u_i.
  std::vector<std::pair<Rational, std::size_t>> by_cap;
  by_cap.reserve(active.size());
  for (std::size_t i : active)
    by_cap.emplace_back(budgets[i] / rat(utilities[i]), i);
  std::sort(by_cap.begin(), by_cap.end(),
            [](const auto& a, const auto& b) {
              int c = cmp(a.first, b.first);
              if (c != 0) return c < 0;
              return a.second < b.second;
            });

  Rational remaining_cost = cost_r;
  long long remaining_util = total_util;
  Rational q;
  bool found = false;
  for (const auto& [cap, voter] : by_cap) {
    q = remaining_cost / rat(remaining_util);
    if (q <= cap) {
      found = true;
      break;
    }
    remaining_cost -= budgets[voter];
    remaining_util -= utilities[voter];
  }
  // Total budget covering the cost guarantees the walk stops at the latest on
  // the largest cap.
  assert(found);
  if (!found) return std::nullopt;

  MinQResult result;
  result.q = q;
  result.payments.reserve(active.size());
  for (std::size_t i : active) {
    Rational pay = q * rat(utilities[i]);
    if (pay > budgets[i]) pay = budgets[i];
    result.payments.emplace_back(i, std::move(pay));
  }
  return result;
}

}  // namespace

std::optional<MinQResult> min_q(Money cost, const std::vector<Rational>& budgets,
                                const std::vector<long long>& utilities) {
  std::vector<std::size_t> supporters;
  for (std::size_t i = 0; i < utilities.size(); ++i)
    if (utilities[i] > 0) supporters.push_back(i);
  if (supporters.empty()) return std::nullopt;
  return solve_q(cost, supporters, utilities, budgets);
}

std::optional<MinQResult> min_q(const Project& project,
                                const UtilityProfile& profile,
                                const std::vector<Rational>& budgets,
                                const Instance& instance) {
  auto idx = instance.index_of(project.id);
  if (!idx) throw std::invalid_argument("project not part of the instance");
  std::vector<long long> column(profile.num_voters());
  for (std::size_t i = 0; i < profile.num_voters(); ++i)
    column[i] = profile.utility(i, *idx);
  return min_q(project.cost, budgets, column);
}

Outcome mes_fixed(const Instance& instance, const UtilityProfile& profile,
                  const Rational& start_budget, RuleTag tag) {
  const std::size_t m = instance.projects.size();
  const std::size_t n = profile.num_voters();

  Outcome outcome;
  outcome.rule = tag;
  MesDiagnostics diag;
  diag.final_start_budget = start_budget;
  diag.final_budgets.assign(n, start_budget);
  if (n == 0 || m == 0) {
    outcome.mes = std::move(diag);
    return outcome;
  }

  std::vector<Rational>& budgets = diag.final_budgets;

  // Per-project supporter lists and utility columns, fixed for the whole run.
  std::vector<std::vector<std::size_t>> supporters(m);
  std::vector<std::vector<long long>> column(m, std::vector<long long>(n));
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t i = 0; i < n; ++i) {
      column[p][i] = profile.utility(i, p);
      if (column[p][i] > 0) supporters[p].push_back(i);
    }

  // A cached solve stays exact until some supporter's budget changes; a
  // failed solve stays failed forever because budgets only shrink.
  std::vector<std::optional<MinQResult>> cache(m);
  std::vector<bool> dirty(m, true), dead(m, false), selected(m, false);

  for (std::size_t p = 0; p < m; ++p)
    if (supporters[p].empty()) dead[p] = true;

  while (true) {
    std::size_t best = m;
    int candidates_at_best_q = 0;
    for (std::size_t p = 0; p < m; ++p) {
      if (selected[p] || dead[p]) continue;
      if (dirty[p]) {
        cache[p] = solve_q(instance.projects[p].cost, supporters[p], column[p],
                           budgets);
        dirty[p] = false;
        if (!cache[p]) {
          dead[p] = true;
          continue;
        }
      }
      if (best == m) {
        best = p;
        candidates_at_best_q = 1;
        continue;
      }
      const int c = cmp(cache[p]->q, cache[best]->q);
      if (c > 0) continue;
      if (c < 0) {
        best = p;
        candidates_at_best_q = 1;
        continue;
      }
      ++candidates_at_best_q;
      const Project& cand = instance.projects[p];
      const Project& cur = instance.projects[best];
      if (cand.cost < cur.cost || (cand.cost == cur.cost && cand.id < cur.id))
        best = p;
    }
    if (best == m) break;

    const Project& project = instance.projects[best];
    const MinQResult& solved = *cache[best];
    MesRound round;
    round.project_id = project.id;
    round.q = solved.q;
    round.tie_broken = candidates_at_best_q > 1;
    if (round.tie_broken) outcome.tie_projects.push_back(project.id);
    for (const auto& [voter, pay] : solved.payments) {
      budgets[voter] -= pay;
      round.payments.emplace_back(profile.voter_ids[voter], pay);
    }
    selected[best] = true;
    outcome.winners.push_back(project.id);
    outcome.total_cost += project.cost;

    // Only projects sharing a paying supporter saw a budget change.
    for (std::size_t p = 0; p < m; ++p) {
      if (selected[p] || dead[p] || dirty[p]) continue;
      for (const auto& [voter, pay] : solved.payments) {
        (void)pay;
        if (column[p][voter] > 0) {
          dirty[p] = true;
          break;
        }
      }
    }
    diag.rounds.push_back(std::move(round));
  }

  std::sort(outcome.winners.begin(), outcome.winners.end());
  std::sort(outcome.tie_projects.begin(), outcome.tie_projects.end());
  outcome.mes = std::move(diag);
  return outcome;
}

Outcome mes_add1(const Instance& instance, const UtilityProfile& profile,
                 Add1Options options, RuleTag tag) {
  const std::size_t n = profile.num_voters();
  if (n == 0 || instance.projects.empty()) {
    Outcome outcome;
    outcome.rule = tag;
    MesDiagnostics diag;
    diag.final_start_budget = 0;
    outcome.mes = std::move(diag);
    return outcome;
  }
  if (options.step <= 0) throw std::invalid_argument("step must be positive");

  std::size_t supported = 0;
  for (std::size_t p = 0; p < instance.projects.size(); ++p)
    if (profile.total_utility(p) > 0) ++supported;

  const Rational base = rat(instance.budget) / rat(static_cast<Money>(n));
  Outcome best = mes_fixed(instance, profile, base, tag);
  // The first run never overshoots: n voters times B/n is exactly B.
  Money extra = 0;
  while (best.winners.size() < supported) {
    extra += options.step;
    Outcome candidate = mes_fixed(instance, profile, base + rat(extra), tag);
    if (candidate.total_cost > instance.budget) break;
    best = std::move(candidate);
  }
  return best;
}

Outcome run_rule(const Instance& instance, const std::vector<Ballot>& ballots,
                 RuleTag rule, Add1Options options) {
  ValidationReport report = validate_ballots(ballots, instance);
  if (!report.empty()) throw BallotValidationError(std::move(report));
  UtilityProfile profile = to_utility_profile(ballots, instance, scheme_for(rule));
  switch (rule) {
    case RuleTag::Greedy:
    case RuleTag::EconomicalGreedy:
      return greedy(instance, profile, rule);
    default:
      return mes_add1(instance, profile, options, rule);
  }
}

}  // namespace pbvote
