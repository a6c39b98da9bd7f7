#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbvote/core.hpp"

namespace pbvote {

// The six ballot designs. Constraints enforced by validate_ballot:
//   SN     approve any non-empty subset
//   S5     approve exactly 5 distinct projects
//   D5     integer points summing to exactly 5
//   D10    integer points summing to exactly 10
//   S5R    rank exactly 5 distinct projects, best first
//   S5D10  points 0..10 over exactly 5 designated projects, summing to 10
enum class InputFormat { SN, S5, D5, D10, S5R, S5D10 };

inline constexpr std::array<InputFormat, 6> kAllFormats = {
    InputFormat::SN,  InputFormat::S5,  InputFormat::D5,
    InputFormat::D10, InputFormat::S5R, InputFormat::S5D10};

std::string to_string(InputFormat f);
std::optional<InputFormat> format_from_string(const std::string& s);

struct Ballot {
  std::string voter_id;
  InputFormat format = InputFormat::SN;
  std::set<int> approvals;     // SN, S5
  std::map<int, int> points;   // D5, D10, S5D10 (zero entries allowed)
  std::vector<int> ranking;    // S5R, best first

  bool operator==(const Ballot&) const = default;
};

ValidationReport validate_ballot(const Ballot& ballot, const Instance& instance);

// Per-ballot checks plus file-level ones: all ballots share one format and
// voter ids are unique.
ValidationReport validate_ballots(const std::vector<Ballot>& ballots,
                                  const Instance& instance);

// Rank k (1-based) becomes 6-k points, so the best-ranked project gets 5.
// Throws std::invalid_argument if the ballot is not S5R.
std::map<int, int> ranking_to_points(const Ballot& ballot);

// Uniform points view used by the analyses: approvals count as 1 point each,
// rankings convert via ranking_to_points, point maps pass through.
std::map<int, int> points_view(const Ballot& ballot);

// Ballot or instance content failed validation; carries the full report.
struct BallotValidationError : std::runtime_error {
  explicit BallotValidationError(ValidationReport r);
  ValidationReport report;
};

enum class UtilityScheme { Cost, Cardinality };
std::string to_string(UtilityScheme s);

struct UtilityProfile {
  UtilityScheme scheme = UtilityScheme::Cost;
  std::vector<std::string> voter_ids;
  // utilities[voter][project index in instance order]
  std::vector<std::vector<long long>> utilities;

  std::size_t num_voters() const { return voter_ids.size(); }
  long long utility(std::size_t voter, std::size_t project_index) const {
    return utilities[voter][project_index];
  }
  long long total_utility(std::size_t project_index) const;
  long long bundle_utility(std::size_t voter, const std::vector<int>& winner_ids,
                           const Instance& instance) const;
};

// Translates one-format ballot lists. Cost scheme: approving or pointing at p
// is worth cost(p) (times the points for point formats). Cardinality scheme:
// 1 per approval, or the raw points. S5R ballots convert to points first.
// Throws std::invalid_argument on empty input, mixed formats, unknown project
// ids or duplicate voter ids.
UtilityProfile to_utility_profile(const std::vector<Ballot>& ballots,
                                  const Instance& instance, UtilityScheme scheme);

}  // namespace pbvote
