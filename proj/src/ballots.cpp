#include "pbvote/ballots.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pbvote {

std::string to_string(InputFormat f) {
  switch (f) {
    case InputFormat::SN: return "SN";
    case InputFormat::S5: return "S5";
    case InputFormat::D5: return "D5";
    case InputFormat::D10: return "D10";
    case InputFormat::S5R: return "S5R";
    case InputFormat::S5D10: return "S5D10";
  }
  return "?";
}

std::optional<InputFormat> format_from_string(const std::string& s) {
  for (InputFormat f : kAllFormats)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

std::string to_string(UtilityScheme s) {
  return s == UtilityScheme::Cost ? "cost" : "cardinality";
}

namespace {
std::string join_report(const ValidationReport& report) {
  std::string text = "validation failed";
  for (const Violation& v : report) text += "\n  " + v.where + ": " + v.message;
  return text;
}
}  // namespace

BallotValidationError::BallotValidationError(ValidationReport r)
    : std::runtime_error(join_report(r)), report(std::move(r)) {}

namespace {

bool uses_approvals(InputFormat f) {
  return f == InputFormat::SN || f == InputFormat::S5;
}
bool uses_points(InputFormat f) {
  return f == InputFormat::D5 || f == InputFormat::D10 ||
         f == InputFormat::S5D10;
}

void check_known_ids(const std::map<int, int>& points, const Instance& instance,
                     const std::string& where, ValidationReport& report) {
  for (const auto& [id, value] : points) {
    (void)value;
    if (!instance.find(id)) {
      std::ostringstream msg;
      msg << "unknown project id " << id;
      report.push_back({where, msg.str()});
    }
  }
}

}  // namespace

ValidationReport validate_ballot(const Ballot& ballot, const Instance& instance) {
  ValidationReport report;
  const std::string where = "voter_id=" + ballot.voter_id;
  const InputFormat f = ballot.format;

  if (uses_approvals(f)) {
    if (!ballot.points.empty() || !ballot.ranking.empty())
      report.push_back({where, "approval formats carry approvals only"});
    for (int id : ballot.approvals) {
      if (!instance.find(id)) {
        std::ostringstream msg;
        msg << "unknown project id " << id;
        report.push_back({where, msg.str()});
      }
    }
    if (f == InputFormat::SN && ballot.approvals.empty())
      report.push_back({where, "SN requires at least one approval"});
    if (f == InputFormat::S5 && ballot.approvals.size() != 5) {
      std::ostringstream msg;
      msg << "S5 requires exactly 5 approvals, got " << ballot.approvals.size();
      report.push_back({where, msg.str()});
    }
  } else if (uses_points(f)) {
    if (!ballot.approvals.empty() || !ballot.ranking.empty())
      report.push_back({where, "point formats carry points only"});
    check_known_ids(ballot.points, instance, where, report);
    long long total = 0;
    const int per_project_max = f == InputFormat::D5 ? 5 : 10;
    for (const auto& [id, value] : ballot.points) {
      if (value < 0 || value > per_project_max) {
        std::ostringstream msg;
        msg << "points for project " << id << " must be in 0.."
            << per_project_max << ", got " << value;
        report.push_back({where, msg.str()});
      }
      total += value;
    }
    const long long required = f == InputFormat::D5 ? 5 : 10;
    if (total != required) {
      std::ostringstream msg;
      msg << to_string(f) << " points must sum to " << required << ", got "
          << total;
      report.push_back({where, msg.str()});
    }
    if (f == InputFormat::S5D10 && ballot.points.size() != 5) {
      std::ostringstream msg;
      msg << "S5D10 requires exactly 5 designated projects, got "
          << ballot.points.size();
      report.push_back({where, msg.str()});
    }
  } else {  // S5R
    if (!ballot.approvals.empty() || !ballot.points.empty())
      report.push_back({where, "ranking format carries a ranking only"});
    if (ballot.ranking.size() != 5) {
      std::ostringstream msg;
      msg << "S5R requires exactly 5 ranked projects, got "
          << ballot.ranking.size();
      report.push_back({where, msg.str()});
    }
    std::set<int> seen;
    for (int id : ballot.ranking) {
      if (!instance.find(id)) {
        std::ostringstream msg;
        msg << "unknown project id " << id;
        report.push_back({where, msg.str()});
      }
      if (!seen.insert(id).second) {
        std::ostringstream msg;
        msg << "project " << id << " ranked more than once";
        report.push_back({where, msg.str()});
      }
    }
  }
  return report;
}

ValidationReport validate_ballots(const std::vector<Ballot>& ballots,
                                  const Instance& instance) {
  ValidationReport report;
  std::map<std::string, std::size_t> voters;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    const Ballot& b = ballots[i];
    std::ostringstream where;
    where << "ballots[" << i << "] voter_id=" << b.voter_id;
    if (!ballots.empty() && b.format != ballots.front().format) {
      std::ostringstream msg;
      msg << "format " << to_string(b.format) << " differs from the file format "
          << to_string(ballots.front().format);
      report.push_back({where.str(), msg.str()});
    }
    auto [it, fresh] = voters.emplace(b.voter_id, i);
    if (!fresh) {
      std::ostringstream msg;
      msg << "duplicate voter_id (first used by ballots[" << it->second << "])";
      report.push_back({where.str(), msg.str()});
    }
    for (Violation v : validate_ballot(b, instance)) {
      v.where = where.str();
      report.push_back(std::move(v));
    }
  }
  return report;
}

std::map<int, int> ranking_to_points(const Ballot& ballot) {
  if (ballot.format != InputFormat::S5R)
    throw std::invalid_argument("ranking_to_points expects a ranked ballot");
  std::map<int, int> points;
  for (std::size_t k = 0; k < ballot.ranking.size(); ++k)
    points[ballot.ranking[k]] = 6 - static_cast<int>(k + 1);
  return points;
}

std::map<int, int> points_view(const Ballot& ballot) {
  switch (ballot.format) {
    case InputFormat::SN:
    case InputFormat::S5: {
      std::map<int, int> points;
      for (int id : ballot.approvals) points[id] = 1;
      return points;
    }
    case InputFormat::S5R:
      return ranking_to_points(ballot);
    default:
      return ballot.points;
  }
}

long long UtilityProfile::total_utility(std::size_t project_index) const {
  long long total = 0;
  for (const auto& row : utilities) total += row[project_index];
  return total;
}

long long UtilityProfile::bundle_utility(std::size_t voter,
                                         const std::vector<int>& winner_ids,
                                         const Instance& instance) const {
  long long total = 0;
  for (int id : winner_ids) {
    auto idx = instance.index_of(id);
    if (!idx) throw std::invalid_argument("winner id not in instance");
    total += utilities[voter][*idx];
  }
  return total;
}

UtilityProfile to_utility_profile(const std::vector<Ballot>& ballots,
                                  const Instance& instance,
                                  UtilityScheme scheme) {
  if (ballots.empty())
    throw std::invalid_argument("cannot build a utility profile from zero ballots");
  const InputFormat format = ballots.front().format;
  UtilityProfile profile;
  profile.scheme = scheme;
  profile.voter_ids.reserve(ballots.size());
  profile.utilities.reserve(ballots.size());
  std::set<std::string> seen;
  for (const Ballot& b : ballots) {
    if (b.format != format)
      throw std::invalid_argument("mixed ballot formats in one profile");
    if (!seen.insert(b.voter_id).second)
      throw std::invalid_argument("duplicate voter_id " + b.voter_id);
    std::vector<long long> row(instance.projects.size(), 0);
    for (const auto& [id, value] : points_view(b)) {
      auto idx = instance.index_of(id);
      if (!idx)
        throw std::invalid_argument("ballot for voter " + b.voter_id +
                                    " references unknown project id " +
                                    std::to_string(id));
      const long long s = value;
      row[*idx] = scheme == UtilityScheme::Cost
                      ? s * instance.projects[*idx].cost
                      : s;
    }
    profile.voter_ids.push_back(b.voter_id);
    profile.utilities.push_back(std::move(row));
  }
  return profile;
}

}  // namespace pbvote
