#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pbvote::oracle {

std::optional<QSolution> min_q_by_enumeration(
    Money cost, const std::vector<Rational>& budgets,
    const std::vector<long long>& utilities) {
  std::vector<std::size_t> supporters;
  for (std::size_t i = 0; i < utilities.size(); ++i)
    if (utilities[i] > 0) supporters.push_back(i);
  if (supporters.empty()) return std::nullopt;

  const Rational cost_r = rat(cost);
  auto evaluate = [&](const Rational& q) {
    Rational total = 0;
    for (std::size_t i : supporters) {
      Rational pay = q * rat(utilities[i]);
      if (pay > budgets[i]) pay = budgets[i];
      total += pay;
    }
    return total;
  };

  // Candidate set: every cap b_i/u_i, plus the solution of the linear
  // equation on every segment between consecutive caps.
  std::vector<Rational> caps;
  for (std::size_t i : supporters) caps.push_back(budgets[i] / rat(utilities[i]));
  std::sort(caps.begin(), caps.end());
  caps.erase(std::unique(caps.begin(), caps.end()), caps.end());

  std::vector<Rational> candidates = caps;
  for (std::size_t k = 0; k <= caps.size(); ++k) {
    // Segment k: voters with cap <= caps[k-1] pay their budget, the rest pay
    // q * u_i.
    Rational capped_budget = 0;
    long long uncapped_util = 0;
    for (std::size_t i : supporters) {
      const Rational cap = budgets[i] / rat(utilities[i]);
      const bool capped = k > 0 && cap <= caps[k - 1];
      if (capped)
        capped_budget += budgets[i];
      else
        uncapped_util += utilities[i];
    }
    if (uncapped_util == 0) continue;
    Rational q = (cost_r - capped_budget) / rat(uncapped_util);
    if (sgn(q) >= 0) candidates.push_back(std::move(q));
  }

  std::optional<Rational> best;
  for (const Rational& q : candidates) {
    if (sgn(q) < 0) continue;
    if (evaluate(q) != cost_r) continue;
    if (!best || q < *best) best = q;
  }
  if (!best) return std::nullopt;

  QSolution solution;
  solution.q = *best;
  for (std::size_t i : supporters) {
    Rational pay = solution.q * rat(utilities[i]);
    if (pay > budgets[i]) pay = budgets[i];
    if (sgn(pay) > 0) solution.payments.emplace_back(i, std::move(pay));
  }
  return solution;
}

std::vector<Round> mes_rounds_by_rescan(const Instance& instance,
                                        const UtilityProfile& profile,
                                        const Rational& start_budget) {
  const std::size_t m = instance.projects.size();
  const std::size_t n = profile.num_voters();
  std::vector<Rational> budgets(n, start_budget);
  std::set<std::size_t> remaining;
  for (std::size_t p = 0; p < m; ++p) remaining.insert(p);

  std::vector<Round> rounds;
  while (true) {
    std::optional<std::size_t> best;
    std::optional<QSolution> best_solution;
    for (std::size_t p : remaining) {
      std::vector<long long> column(n);
      for (std::size_t i = 0; i < n; ++i) column[i] = profile.utility(i, p);
      auto solution =
          min_q_by_enumeration(instance.projects[p].cost, budgets, column);
      if (!solution) continue;
      if (!best) {
        best = p;
        best_solution = std::move(solution);
        continue;
      }
      const int c = cmp(solution->q, best_solution->q);
      if (c > 0) continue;
      const Project& cand = instance.projects[p];
      const Project& cur = instance.projects[*best];
      if (c < 0 || cand.cost < cur.cost ||
          (cand.cost == cur.cost && cand.id < cur.id)) {
        best = p;
        best_solution = std::move(solution);
      }
    }
    if (!best) break;
    Round round;
    round.project_id = instance.projects[*best].id;
    round.q = best_solution->q;
    round.payments = best_solution->payments;
    for (const auto& [voter, pay] : round.payments) budgets[voter] -= pay;
    remaining.erase(*best);
    rounds.push_back(std::move(round));
  }
  return rounds;
}

std::vector<int> greedy_by_vote_counts(const Instance& instance,
                                       const std::vector<Ballot>& ballots) {
  std::map<int, long long> votes;
  for (const Ballot& b : ballots)
    for (int id : b.approvals) votes[id] += 1;

  std::vector<const Project*> order;
  for (const Project& p : instance.projects)
    if (votes.count(p.id) && votes[p.id] > 0) order.push_back(&p);
  std::sort(order.begin(), order.end(), [&](const Project* a, const Project* b) {
    if (votes[a->id] != votes[b->id]) return votes[a->id] > votes[b->id];
    if (a->cost != b->cost) return a->cost < b->cost;
    return a->id < b->id;
  });

  std::vector<int> winners;
  Money spent = 0;
  for (const Project* p : order) {
    if (spent + p->cost <= instance.budget) {
      winners.push_back(p->id);
      spent += p->cost;
    }
  }
  std::sort(winners.begin(), winners.end());
  return winners;
}

}  // namespace pbvote::oracle
