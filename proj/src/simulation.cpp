#include "pbvote/simulation.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace pbvote {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  // Rejection sampling over the largest multiple of n keeps the draw exactly
  // uniform and independent of library internals.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

std::size_t Rng::weighted_index(const std::vector<long long>& weights) {
  long long total = 0;
  for (long long w : weights) {
    if (w < 0) throw std::invalid_argument("negative weight");
    total += w;
  }
  if (total <= 0) throw std::invalid_argument("weights sum to zero");
  std::uint64_t r = below(static_cast<std::uint64_t>(total));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const std::uint64_t w = static_cast<std::uint64_t>(weights[i]);
    if (r < w) return i;
    r -= w;
  }
  return weights.size() - 1;  // unreachable
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n,
                                                         std::size_t k) {
  if (k > n) throw std::invalid_argument("sample larger than population");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  // Partial Fisher-Yates: the first k slots are a uniform k-permutation.
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t swap_with =
        j + static_cast<std::size_t>(below(static_cast<std::uint64_t>(n - j)));
    std::swap(pool[j], pool[swap_with]);
  }
  pool.resize(k);
  return pool;
}

namespace {

std::string agent_id(int i) { return "v" + std::to_string(i + 1); }

}  // namespace

std::vector<Ballot> gen_uniform(const Instance& instance, int num_agents,
                                std::uint64_t seed) {
  if (num_agents <= 0) throw std::invalid_argument("num_agents must be positive");
  const std::size_t m = instance.projects.size();
  if (m < 5) throw std::invalid_argument("need at least 5 projects");
  Rng rng(seed);
  std::vector<Ballot> ballots;
  ballots.reserve(num_agents);
  for (int a = 0; a < num_agents; ++a) {
    Ballot b;
    b.voter_id = agent_id(a);
    b.format = InputFormat::S5;
    for (std::size_t idx : rng.sample_without_replacement(m, 5))
      b.approvals.insert(instance.projects[idx].id);
    ballots.push_back(std::move(b));
  }
  return ballots;
}

GeneratedElectorate gen_polarised(const Instance& instance,
                                  const PolarisedConfig& config) {
  if (config.num_agents <= 0)
    throw std::invalid_argument("num_agents must be positive");
  if (config.focus_weight <= 0 || config.base_weight <= 0)
    throw std::invalid_argument("weights must be positive");
  InputFormat format;
  if (config.draws == 5) {
    format = InputFormat::D5;
  } else if (config.draws == 10) {
    format = InputFormat::D10;
  } else {
    throw std::invalid_argument("draws must be 5 or 10 to match a point format");
  }

  const std::size_t m = instance.projects.size();
  Rng rng(config.seed);
  GeneratedElectorate out;
  out.ballots.reserve(config.num_agents);
  out.profiles.reserve(config.num_agents);
  std::vector<long long> weights(m);
  for (int a = 0; a < config.num_agents; ++a) {
    const District district =
        kAllDistricts[static_cast<std::size_t>(rng.below(kAllDistricts.size()))];
    const Category category =
        kAllCategories[static_cast<std::size_t>(rng.below(kAllCategories.size()))];
    for (std::size_t p = 0; p < m; ++p) {
      const Project& project = instance.projects[p];
      weights[p] = (project.district == district && project.category == category)
                       ? config.focus_weight
                       : config.base_weight;
    }
    Ballot b;
    b.voter_id = agent_id(a);
    b.format = format;
    for (int d = 0; d < config.draws; ++d)
      b.points[instance.projects[rng.weighted_index(weights)].id] += 1;
    out.ballots.push_back(std::move(b));
    out.profiles.push_back({district, category});
  }
  return out;
}

MultiFormatElectorate gen_multiformat(const Instance& instance,
                                      const MultiFormatConfig& config) {
  if (config.num_agents <= 0)
    throw std::invalid_argument("num_agents must be positive");
  if (config.focus_weight <= 0 || config.base_weight <= 0)
    throw std::invalid_argument("weights must be positive");
  if (config.sn_extra_permille < 0 || config.sn_extra_permille > 1000)
    throw std::invalid_argument("sn_extra_permille must be in 0..1000");
  const std::size_t m = instance.projects.size();
  if (m < 5) throw std::invalid_argument("need at least 5 projects");

  Rng rng(config.seed);
  MultiFormatElectorate out;
  for (InputFormat f : kAllFormats) out.ballots_by_format[f] = {};
  out.profiles.reserve(config.num_agents);

  std::vector<long long> weights(m);
  for (int a = 0; a < config.num_agents; ++a) {
    const std::string voter = agent_id(a);
    const District district =
        kAllDistricts[static_cast<std::size_t>(rng.below(kAllDistricts.size()))];
    const Category category =
        kAllCategories[static_cast<std::size_t>(rng.below(kAllCategories.size()))];
    for (std::size_t p = 0; p < m; ++p) {
      const Project& project = instance.projects[p];
      weights[p] = (project.district == district && project.category == category)
                       ? config.focus_weight
                       : config.base_weight;
    }

    // Five favourites, best first: repeated weighted draws, zeroing out the
    // weight of anything already taken.
    std::vector<long long> remaining = weights;
    Ballot ranked;
    ranked.voter_id = voter;
    ranked.format = InputFormat::S5R;
    for (int k = 0; k < 5; ++k) {
      const std::size_t pick = rng.weighted_index(remaining);
      ranked.ranking.push_back(instance.projects[pick].id);
      remaining[pick] = 0;
    }

    Ballot select5;
    select5.voter_id = voter;
    select5.format = InputFormat::S5;
    select5.approvals.insert(ranked.ranking.begin(), ranked.ranking.end());

    Ballot d5;
    d5.voter_id = voter;
    d5.format = InputFormat::D5;
    for (int d = 0; d < 5; ++d)
      d5.points[instance.projects[rng.weighted_index(weights)].id] += 1;

    Ballot d10;
    d10.voter_id = voter;
    d10.format = InputFormat::D10;
    for (int d = 0; d < 10; ++d)
      d10.points[instance.projects[rng.weighted_index(weights)].id] += 1;

    // Ten points over the five favourites; keep explicit zero entries so the
    // designated set stays visible.
    std::vector<long long> five_weights(m, 0);
    Ballot s5d10;
    s5d10.voter_id = voter;
    s5d10.format = InputFormat::S5D10;
    for (int id : ranked.ranking) {
      s5d10.points[id] = 0;
      five_weights[*instance.index_of(id)] = weights[*instance.index_of(id)];
    }
    for (int d = 0; d < 10; ++d)
      s5d10.points[instance.projects[rng.weighted_index(five_weights)].id] += 1;

    Ballot noisy;
    noisy.voter_id = voter;
    noisy.format = InputFormat::SN;
    noisy.approvals = select5.approvals;
    for (const Project& project : instance.projects) {
      if (noisy.approvals.count(project.id)) continue;
      if (rng.below(1000) <
          static_cast<std::uint64_t>(config.sn_extra_permille))
        noisy.approvals.insert(project.id);
    }

    out.ballots_by_format[InputFormat::SN].push_back(std::move(noisy));
    out.ballots_by_format[InputFormat::S5].push_back(std::move(select5));
    out.ballots_by_format[InputFormat::D5].push_back(std::move(d5));
    out.ballots_by_format[InputFormat::D10].push_back(std::move(d10));
    out.ballots_by_format[InputFormat::S5R].push_back(std::move(ranked));
    out.ballots_by_format[InputFormat::S5D10].push_back(std::move(s5d10));
    out.profiles.push_back({district, category});
  }
  return out;
}

}  // namespace pbvote
