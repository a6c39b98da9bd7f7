#include "pbvote/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <set>
#include <stdexcept>

namespace pbvote {

const std::vector<Money> kDisplayBudgets = {10000, 20000, 60000, 90000};
const std::vector<Money> kHammingBudgets = {10000, 15000, 20000, 25000,
                                            30000, 35000, 40000, 45000, 50000};

PointDistribution point_distribution(const std::vector<Ballot>& ballots,
                                     const Instance& instance) {
  if (ballots.empty()) throw std::invalid_argument("no ballots");
  PointDistribution dist;
  dist.source_format = ballots.front().format;
  std::vector<long long> mass(instance.projects.size(), 0);
  long long total = 0;
  for (const Ballot& b : ballots) {
    if (b.format != dist.source_format)
      throw std::invalid_argument("mixed ballot formats");
    for (const auto& [id, value] : points_view(b)) {
      auto idx = instance.index_of(id);
      if (!idx) throw std::invalid_argument("unknown project id in ballot");
      mass[*idx] += value;
      total += value;
    }
  }
  if (total <= 0) throw std::invalid_argument("ballots carry no points");
  dist.project_ids.reserve(mass.size());
  dist.shares.reserve(mass.size());
  for (std::size_t p = 0; p < mass.size(); ++p) {
    dist.project_ids.push_back(instance.projects[p].id);
    dist.shares.push_back(rat(mass[p], total));
  }
  return dist;
}

double js_divergence(const PointDistribution& p, const PointDistribution& q) {
  if (p.project_ids != q.project_ids)
    throw std::invalid_argument("distributions cover different project sets");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.shares.size(); ++i) {
    const double a = to_double(p.shares[i]);
    const double b = to_double(q.shares[i]);
    const double mid = 0.5 * (a + b);
    if (a > 0.0) acc += 0.5 * a * std::log2(a / mid);
    if (b > 0.0) acc += 0.5 * b * std::log2(b / mid);
  }
  return acc < 0.0 ? 0.0 : acc;
}

int hamming(const std::vector<int>& winners_a, const std::vector<int>& winners_b) {
  const std::set<int> a(winners_a.begin(), winners_a.end());
  const std::set<int> b(winners_b.begin(), winners_b.end());
  int diff = 0;
  for (int id : a) diff += b.count(id) ? 0 : 1;
  for (int id : b) diff += a.count(id) ? 0 : 1;
  return diff;
}

SweepTable budget_sweep(
    const Instance& instance,
    const std::vector<std::pair<InputFormat, std::vector<Ballot>>>& ballot_sets,
    const std::vector<RuleTag>& rules, const std::vector<Money>& budgets,
    int threads) {
  for (Money b : budgets)
    if (b <= 0) throw std::invalid_argument("budgets must be positive");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");

  SweepTable table;
  table.budgets = budgets;
  table.rows.resize(rules.size() * ballot_sets.size());

  auto compute_row = [&](std::size_t row_index) {
    const RuleTag rule = rules[row_index / ballot_sets.size()];
    const auto& [format, ballots] = ballot_sets[row_index % ballot_sets.size()];
    SweepRow row;
    row.rule = rule;
    row.format = format;
    row.cells.reserve(budgets.size());
    for (Money b : budgets) {
      Instance scaled = instance;
      scaled.budget = b;
      Outcome outcome = run_rule(scaled, ballots, rule);
      row.cells.push_back({b, outcome.winners, outcome.total_cost});
    }
    table.rows[row_index] = std::move(row);
  };

  if (threads == 1 || table.rows.size() <= 1) {
    for (std::size_t r = 0; r < table.rows.size(); ++r) compute_row(r);
  } else {
    // Rows are pure functions of (rule, ballots, budget); workers only write
    // their own slot, and assembly order is fixed by the row index.
    std::vector<std::future<void>> workers;
    std::atomic<std::size_t> next{0};
    const int worker_count =
        std::min<std::size_t>(threads, table.rows.size());
    for (int w = 0; w < worker_count; ++w)
      workers.push_back(std::async(std::launch::async, [&] {
        while (true) {
          const std::size_t r = next.fetch_add(1);
          if (r >= table.rows.size()) return;
          compute_row(r);
        }
      }));
    for (auto& f : workers) f.get();
  }
  return table;
}

Rational avg_pairwise_hamming(const SweepTable& table, RuleTag rule) {
  std::vector<const SweepRow*> rows;
  for (const SweepRow& row : table.rows)
    if (row.rule == rule) rows.push_back(&row);
  if (rows.size() < 2)
    throw std::invalid_argument("need at least two formats to compare");
  long long total = 0;
  long long samples = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      for (std::size_t c = 0; c < table.budgets.size(); ++c) {
        total += hamming(rows[i]->cells[c].winners, rows[j]->cells[c].winners);
        ++samples;
      }
  return rat(total, samples);
}

CountStats ballot_count_stats(const std::vector<Ballot>& ballots) {
  if (ballots.empty()) throw std::invalid_argument("no ballots");
  std::vector<int> counts;
  counts.reserve(ballots.size());
  for (const Ballot& b : ballots) {
    int c = 0;
    for (const auto& [id, value] : points_view(b)) {
      (void)id;
      if (value >= 1) ++c;
    }
    counts.push_back(c);
  }
  std::sort(counts.begin(), counts.end());

  CountStats stats;
  stats.num_ballots = counts.size();
  int best_value = counts.front(), best_freq = 0;
  for (std::size_t i = 0; i < counts.size();) {
    std::size_t j = i;
    while (j < counts.size() && counts[j] == counts[i]) ++j;
    // Strictly-greater keeps the smallest count on frequency ties.
    if (static_cast<int>(j - i) > best_freq) {
      best_freq = static_cast<int>(j - i);
      best_value = counts[i];
    }
    i = j;
  }
  stats.mode = best_value;
  stats.mode_freq = best_freq;

  double sum = 0;
  for (int c : counts) sum += c;
  stats.mean = sum / static_cast<double>(counts.size());
  const std::size_t half = counts.size() / 2;
  stats.median = counts.size() % 2 == 1
                     ? counts[half]
                     : 0.5 * (counts[half - 1] + counts[half]);
  double varsum = 0;
  for (int c : counts) {
    const double d = c - stats.mean;
    varsum += d * d;
  }
  stats.stddev = std::sqrt(varsum / static_cast<double>(counts.size()));
  return stats;
}

namespace {

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t half = values.size() / 2;
  return values.size() % 2 == 1 ? values[half]
                                : 0.5 * (values[half - 1] + values[half]);
}

void mean_median_std(const std::vector<double>& values, double& mean,
                     double& median, double& stddev) {
  double sum = 0;
  for (double v : values) sum += v;
  mean = sum / static_cast<double>(values.size());
  median = median_of(values);
  double varsum = 0;
  for (double v : values) varsum += (v - mean) * (v - mean);
  stddev = std::sqrt(varsum / static_cast<double>(values.size()));
}

}  // namespace

ConcentrationResult concentration(
    const std::vector<Ballot>& ballots,
    const std::map<std::string, VoterProfileEntry>& profiles,
    const Instance& instance) {
  if (ballots.empty()) throw std::invalid_argument("no ballots");
  ConcentrationResult result;
  std::vector<double> district_values, category_values;
  for (const Ballot& b : ballots) {
    auto it = profiles.find(b.voter_id);
    if (it == profiles.end())
      throw std::invalid_argument("no profile for voter " + b.voter_id);
    long long total = 0, in_district = 0, in_category = 0;
    for (const auto& [id, value] : points_view(b)) {
      auto idx = instance.index_of(id);
      if (!idx) throw std::invalid_argument("unknown project id in ballot");
      const Project& project = instance.projects[*idx];
      total += value;
      if (project.district == it->second.district) in_district += value;
      if (project.category == it->second.category) in_category += value;
    }
    if (total <= 0) throw std::invalid_argument("ballot carries no points");
    ConcentrationRow row;
    row.voter_id = b.voter_id;
    row.district_fraction = rat(in_district, total);
    row.category_fraction = rat(in_category, total);
    district_values.push_back(to_double(row.district_fraction));
    category_values.push_back(to_double(row.category_fraction));
    result.rows.push_back(std::move(row));
  }
  mean_median_std(district_values, result.summary.district_mean,
                  result.summary.district_median, result.summary.district_std);
  mean_median_std(category_values, result.summary.category_mean,
                  result.summary.category_median, result.summary.category_std);
  return result;
}

ConsistencyReport consistency_checks(
    const std::map<InputFormat, std::vector<Ballot>>& ballots_by_format) {
  for (InputFormat f : kAllFormats)
    if (!ballots_by_format.count(f))
      throw std::invalid_argument("missing ballots for format " + to_string(f));

  std::map<InputFormat, std::map<std::string, const Ballot*>> by_voter;
  for (const auto& [format, ballots] : ballots_by_format)
    for (const Ballot& b : ballots) by_voter[format][b.voter_id] = &b;
  for (InputFormat f : kAllFormats)
    if (by_voter[f].size() != by_voter[InputFormat::SN].size())
      throw std::invalid_argument("formats disagree on the voter set (" +
                                  to_string(f) + ")");

  ConsistencyReport report;
  for (const Ballot& reference : ballots_by_format.at(InputFormat::SN)) {
    const std::string& voter = reference.voter_id;
    std::map<InputFormat, const Ballot*> mine;
    for (InputFormat f : kAllFormats) {
      auto it = by_voter[f].find(voter);
      if (it == by_voter[f].end())
        throw std::invalid_argument("voter " + voter + " missing from format " +
                                    to_string(f));
      mine[f] = it->second;
    }

    ConsistencyFlags flags;
    flags.voter_id = voter;

    const std::set<int>& sn = mine[InputFormat::SN]->approvals;
    const std::set<int>& s5 = mine[InputFormat::S5]->approvals;
    flags.sn_s5_nested =
        std::all_of(s5.begin(), s5.end(), [&](int id) { return sn.count(id); });

    const auto& d5 = mine[InputFormat::D5]->points;
    const auto& d10 = mine[InputFormat::D10]->points;
    flags.d5_d10_pointwise = true;
    for (const auto& [id, value] : d5) {
      auto it = d10.find(id);
      const int ten = it == d10.end() ? 0 : it->second;
      if (ten < value) {
        flags.d5_d10_pointwise = false;
        break;
      }
    }

    std::set<int> ranked(mine[InputFormat::S5R]->ranking.begin(),
                         mine[InputFormat::S5R]->ranking.end());
    flags.s5_s5r_delta = hamming({s5.begin(), s5.end()},
                                 {ranked.begin(), ranked.end()});
    flags.s5_s5r_close = flags.s5_s5r_delta <= 1;

    const auto& designated = mine[InputFormat::S5D10]->points;
    flags.s5r_s5d10_monotone = true;
    int previous = std::numeric_limits<int>::max();
    for (int id : mine[InputFormat::S5R]->ranking) {
      auto it = designated.find(id);
      const int pts = it == designated.end() ? 0 : it->second;
      if (pts > previous) {
        flags.s5r_s5d10_monotone = false;
        break;
      }
      previous = pts;
    }

    report.voters.push_back(std::move(flags));
  }

  const double n = static_cast<double>(report.voters.size());
  if (n > 0) {
    for (const ConsistencyFlags& f : report.voters) {
      report.share_sn_s5_nested += f.sn_s5_nested ? 1 : 0;
      report.share_d5_d10_pointwise += f.d5_d10_pointwise ? 1 : 0;
      report.share_s5_s5r_close += f.s5_s5r_close ? 1 : 0;
      report.share_s5r_s5d10_monotone += f.s5r_s5d10_monotone ? 1 : 0;
    }
    report.share_sn_s5_nested /= n;
    report.share_d5_d10_pointwise /= n;
    report.share_s5_s5r_close /= n;
    report.share_s5r_s5d10_monotone /= n;
  }
  return report;
}

namespace {

OutcomeExplanation explain_one(const Instance& instance,
                               const UtilityProfile& profile,
                               const Outcome& outcome) {
  OutcomeExplanation ex;
  ex.rule = outcome.rule;
  const std::size_t n = profile.num_voters();
  const Money funded = outcome.total_cost;

  long long positive = 0;
  Rational fraction_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long long u = profile.bundle_utility(i, outcome.winners, instance);
    ex.utility_histogram[u] += 1;
    if (u > 0) ++positive;
    if (funded > 0) {
      Money approved_cost = 0;
      for (int id : outcome.winners) {
        auto idx = instance.index_of(id);
        if (profile.utility(i, *idx) > 0) approved_cost += instance.projects[*idx].cost;
      }
      fraction_sum += rat(approved_cost, funded);
    }
  }
  ex.mean_approved_spending_fraction =
      n > 0 ? fraction_sum / rat(static_cast<Money>(n)) : Rational(0);
  ex.share_with_positive_utility =
      n > 0 ? rat(positive, static_cast<Money>(n)) : Rational(0);
  ex.share_with_zero_utility =
      n > 0 ? rat(static_cast<Money>(n) - positive, static_cast<Money>(n))
            : Rational(0);

  for (District d : kAllDistricts) ex.district_budget_shares[d] = 0;
  for (Category c : kAllCategories) ex.category_budget_shares[c] = 0;
  if (funded > 0) {
    for (int id : outcome.winners) {
      const Project* project = instance.find(id);
      ex.district_budget_shares[project->district] += rat(project->cost, funded);
      ex.category_budget_shares[project->category] += rat(project->cost, funded);
    }
  }
  return ex;
}

}  // namespace

ExplanationStats explanation_stats(const Instance& instance,
                                   const std::vector<Ballot>& ballots,
                                   const Outcome& outcome_a,
                                   const Outcome& outcome_b) {
  UtilityProfile profile =
      to_utility_profile(ballots, instance, UtilityScheme::Cost);
  ExplanationStats stats;
  stats.a = explain_one(instance, profile, outcome_a);
  stats.b = explain_one(instance, profile, outcome_b);

  const PointDistribution dist = point_distribution(ballots, instance);
  for (District d : kAllDistricts) stats.district_vote_shares[d] = 0;
  for (Category c : kAllCategories) stats.category_vote_shares[c] = 0;
  for (std::size_t p = 0; p < dist.project_ids.size(); ++p) {
    const Project& project = instance.projects[p];
    stats.district_vote_shares[project.district] += dist.shares[p];
    stats.category_vote_shares[project.category] += dist.shares[p];
  }
  return stats;
}

}  // namespace pbvote
