#pragma once

// Reference implementations kept deliberately naive and structurally
// different from the library: candidate enumeration with direct verification
// instead of a prefix walk, full rescans instead of caching. Unit and
// acceptance tests compare the fast paths against these.

#include <optional>
#include <utility>
#include <vector>

#include "pbvote/rules.hpp"

namespace pbvote::oracle {

struct QSolution {
  Rational q;
  std::vector<std::pair<std::size_t, Rational>> payments;  // positive only
};

// Enumerates every per-voter cap and every linear-segment equation as a
// candidate q, keeps those where sum_i min(q*u_i, b_i) literally equals the
// cost, and returns the smallest.
std::optional<QSolution> min_q_by_enumeration(
    Money cost, const std::vector<Rational>& budgets,
    const std::vector<long long>& utilities);

struct Round {
  int project_id = 0;
  Rational q;
  std::vector<std::pair<std::size_t, Rational>> payments;
};

// Equal-shares rounds with a full re-solve of every remaining project each
// round. No caching, no dead-marking.
std::vector<Round> mes_rounds_by_rescan(const Instance& instance,
                                        const UtilityProfile& profile,
                                        const Rational& start_budget);

// Descending approval-count selection with the cost-then-id tie rule,
// skipping projects that no longer fit. Zero-approval projects are ignored.
// Returns ascending winner ids.
std::vector<int> greedy_by_vote_counts(const Instance& instance,
                                       const std::vector<Ballot>& ballots);

}  // namespace pbvote::oracle
