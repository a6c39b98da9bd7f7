#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "pbvote/ballots.hpp"

namespace pbvote {

// Deterministic across platforms: mt19937_64's output sequence is pinned by
// the standard, and bounded draws use rejection sampling instead of the
// implementation-defined std::uniform_int_distribution / std::shuffle.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  // Index i with probability weights[i] / sum(weights). Weights must be
  // non-negative with a positive sum.
  std::size_t weighted_index(const std::vector<long long>& weights);
  // First k entries of a uniform random permutation of [0, n).
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// Voter ids are "v1".."vN" in generation order for every generator.

// Each agent approves a uniformly random 5-project subset (S5 ballots).
// Requires at least 5 projects.
std::vector<Ballot> gen_uniform(const Instance& instance, int num_agents,
                                std::uint64_t seed);

struct PolarisedConfig {
  int num_agents = 200;
  long long focus_weight = 6;
  long long base_weight = 1;
  int draws = 5;  // 5 -> D5 ballots, 10 -> D10 ballots
  std::uint64_t seed = 0;
};

struct GeneratedElectorate {
  std::vector<Ballot> ballots;
  std::vector<VoterProfileEntry> profiles;  // per agent, generation order
};

// Each agent draws a home district (uniform) and a favourite category
// (uniform); the two matching projects get focus_weight, all others
// base_weight. The agent then distributes `draws` points by independent
// weighted draws with replacement.
GeneratedElectorate gen_polarised(const Instance& instance,
                                  const PolarisedConfig& config);

struct MultiFormatConfig {
  int num_agents = 200;
  long long focus_weight = 6;
  long long base_weight = 1;
  // Chance (in permille) that an SN ballot also approves any given project
  // outside the agent's top five.
  int sn_extra_permille = 300;
  std::uint64_t seed = 0;
};

struct MultiFormatElectorate {
  std::map<InputFormat, std::vector<Ballot>> ballots_by_format;
  std::vector<VoterProfileEntry> profiles;
};

// One electorate answering in all six formats from shared latent preferences.
// Per agent, in draw order: district, category, then
//   S5R    5 distinct weighted draws without replacement (draw order = rank)
//   S5     the same five projects as approvals
//   D5     5 weighted draws with replacement over all projects
//   D10    10 weighted draws with replacement over all projects
//   S5D10  10 weighted draws over the five S5R projects (zeros kept)
//   SN     the S5 set plus each remaining project with sn_extra_permille odds
// SN's independent extras make it the intentionally noisy outlier format.
MultiFormatElectorate gen_multiformat(const Instance& instance,
                                      const MultiFormatConfig& config);

}  // namespace pbvote
