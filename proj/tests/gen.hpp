#pragma once

// Seeded random inputs for property and fuzz tests.

#include <string>
#include <vector>

#include "pbvote/simulation.hpp"

namespace pbvote::testgen {

inline Instance random_instance(Rng& rng, int min_projects, int max_projects,
                                Money max_cost, Money max_budget) {
  Instance instance;
  const int m =
      min_projects +
      static_cast<int>(rng.below(static_cast<std::uint64_t>(max_projects - min_projects + 1)));
  for (int p = 0; p < m; ++p) {
    Project project;
    project.id = p + 1;
    project.name = "P" + std::to_string(p + 1);
    project.cost = 1 + static_cast<Money>(rng.below(static_cast<std::uint64_t>(max_cost)));
    project.district = kAllDistricts[rng.below(4)];
    project.category = kAllCategories[rng.below(3)];
    instance.projects.push_back(std::move(project));
  }
  instance.budget = 1 + static_cast<Money>(rng.below(static_cast<std::uint64_t>(max_budget)));
  return instance;
}

inline Ballot random_ballot(Rng& rng, const Instance& instance, InputFormat format,
                            std::string voter_id) {
  const std::size_t m = instance.projects.size();
  Ballot b;
  b.voter_id = std::move(voter_id);
  b.format = format;
  switch (format) {
    case InputFormat::SN: {
      for (const Project& p : instance.projects)
        if (rng.below(3) == 0) b.approvals.insert(p.id);
      if (b.approvals.empty())
        b.approvals.insert(instance.projects[rng.below(m)].id);
      break;
    }
    case InputFormat::S5: {
      for (std::size_t idx : rng.sample_without_replacement(m, 5))
        b.approvals.insert(instance.projects[idx].id);
      break;
    }
    case InputFormat::D5:
    case InputFormat::D10: {
      const int draws = format == InputFormat::D5 ? 5 : 10;
      for (int d = 0; d < draws; ++d)
        b.points[instance.projects[rng.below(m)].id] += 1;
      break;
    }
    case InputFormat::S5R: {
      for (std::size_t idx : rng.sample_without_replacement(m, 5))
        b.ranking.push_back(instance.projects[idx].id);
      break;
    }
    case InputFormat::S5D10: {
      std::vector<int> five;
      for (std::size_t idx : rng.sample_without_replacement(m, 5)) {
        const int id = instance.projects[idx].id;
        b.points[id] = 0;
        five.push_back(id);
      }
      for (int d = 0; d < 10; ++d) b.points[five[rng.below(5)]] += 1;
      break;
    }
  }
  return b;
}

inline std::vector<Ballot> random_ballots(Rng& rng, const Instance& instance,
                                          InputFormat format, int n) {
  std::vector<Ballot> ballots;
  ballots.reserve(n);
  for (int i = 0; i < n; ++i)
    ballots.push_back(
        random_ballot(rng, instance, format, "v" + std::to_string(i + 1)));
  return ballots;
}

// A format whose shape constraints the instance can satisfy (the five-project
// designs need at least five projects).
inline InputFormat random_feasible_format(Rng& rng, const Instance& instance) {
  if (instance.projects.size() >= 5)
    return kAllFormats[rng.below(kAllFormats.size())];
  return rng.below(2) == 0
             ? InputFormat::SN
             : (rng.below(2) == 0 ? InputFormat::D5 : InputFormat::D10);
}

}  // namespace pbvote::testgen
