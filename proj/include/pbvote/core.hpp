#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pbvote/rational.hpp"

namespace pbvote {

enum class District { Nord, Ost, Sued, West };
enum class Category { Transportation, Culture, Nature };

inline constexpr std::array<District, 4> kAllDistricts = {
    District::Nord, District::Ost, District::Sued, District::West};
inline constexpr std::array<Category, 3> kAllCategories = {
    Category::Transportation, Category::Culture, Category::Nature};

std::string to_string(District d);
std::string to_string(Category c);
std::optional<District> district_from_string(const std::string& s);
std::optional<Category> category_from_string(const std::string& s);

struct Project {
  int id = 0;
  std::string name;
  Money cost = 0;  // must be > 0
  District district = District::Nord;
  Category category = Category::Transportation;

  bool operator==(const Project&) const = default;
};

struct Instance {
  std::vector<Project> projects;
  Money budget = 0;

  const Project* find(int project_id) const;
  std::optional<std::size_t> index_of(int project_id) const;
  Money total_cost() const;

  bool operator==(const Instance&) const = default;
};

struct Violation {
  std::string where;    // e.g. "projects[3]" or "ballots[7] voter_id=v8"
  std::string message;
};
using ValidationReport = std::vector<Violation>;

// Flags duplicate project ids, non-positive costs and a non-positive budget.
ValidationReport validate_instance(const Instance& instance);

// The 24-project benchmark city: two projects (5000 and 10000 CHF) for every
// district/category pair, 60000 CHF total budget.
Instance zurich_fixture();

// A voter's home district and favourite category, used by the polarised
// generator and the concentration analysis.
struct VoterProfileEntry {
  District district = District::Nord;
  Category category = Category::Transportation;

  bool operator==(const VoterProfileEntry&) const = default;
};

}  // namespace pbvote
