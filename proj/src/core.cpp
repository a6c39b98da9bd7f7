#include "pbvote/core.hpp"

#include <map>
#include <sstream>

namespace pbvote {

std::string to_string(District d) {
  switch (d) {
    case District::Nord: return "Nord";
    case District::Ost: return "Ost";
    case District::Sued: return "Süd";
    case District::West: return "West";
  }
  return "?";
}

std::string to_string(Category c) {
  switch (c) {
    case Category::Transportation: return "Transportation";
    case Category::Culture: return "Culture";
    case Category::Nature: return "Nature";
  }
  return "?";
}

std::optional<District> district_from_string(const std::string& s) {
  for (District d : kAllDistricts)
    if (to_string(d) == s) return d;
  return std::nullopt;
}

std::optional<Category> category_from_string(const std::string& s) {
  for (Category c : kAllCategories)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

const Project* Instance::find(int project_id) const {
  for (const Project& p : projects)
    if (p.id == project_id) return &p;
  return nullptr;
}

std::optional<std::size_t> Instance::index_of(int project_id) const {
  for (std::size_t i = 0; i < projects.size(); ++i)
    if (projects[i].id == project_id) return i;
  return std::nullopt;
}

Money Instance::total_cost() const {
  Money total = 0;
  for (const Project& p : projects) total += p.cost;
  return total;
}

ValidationReport validate_instance(const Instance& instance) {
  ValidationReport report;
  std::map<int, std::size_t> first_seen;
  for (std::size_t i = 0; i < instance.projects.size(); ++i) {
    const Project& p = instance.projects[i];
    std::ostringstream where;
    where << "projects[" << i << "]";
    auto [it, fresh] = first_seen.emplace(p.id, i);
    if (!fresh) {
      std::ostringstream msg;
      msg << "duplicate project id " << p.id << " (first used by projects["
          << it->second << "])";
      report.push_back({where.str(), msg.str()});
    }
    if (p.cost <= 0) {
      std::ostringstream msg;
      msg << "cost must be a positive whole amount, got " << p.cost;
      report.push_back({where.str(), msg.str()});
    }
  }
  if (instance.budget <= 0)
    report.push_back({"budget", "budget must be positive"});
  return report;
}

Instance zurich_fixture() {
  // Four districts, three categories, one 5000 and one 10000 CHF project per
  // pair. Ids run district-major (Nord, Sued, Ost, West), inside a district
  // Nature, Culture, Transportation, cheap before expensive.
  Instance instance;
  instance.budget = 60000;
  instance.projects = {
      {1, "Fixture: Community Garden in Affoltern", 5000, District::Nord,
       Category::Nature},
      {2, "Fixture: Greening Oerlikon Train Square", 10000, District::Nord,
       Category::Nature},
      {3, "Fixture: Open-Air Cinema Night in Seebach", 5000, District::Nord,
       Category::Culture},
      {4, "Fixture: Neighbourhood Music Pavilion in Affoltern", 10000,
       District::Nord, Category::Culture},
      {5, "Safe Bike Paths around Irchel Park", 5000, District::Nord,
       Category::Transportation},
      {6, "More Night Buses to Oerlikon", 10000, District::Nord,
       Category::Transportation},
      {7, "Free Open Badi Space in Wollishofen", 5000, District::Sued,
       Category::Nature},
      {8, "Fixture: Lakeside Tree Planting in Enge", 10000, District::Sued,
       Category::Nature},
      {9, "Fixture: Street Art Festival in Leimbach", 5000, District::Sued,
       Category::Culture},
      {10, "Fixture: Community Concert Hall Events in Enge", 10000,
       District::Sued, Category::Culture},
      {11, "Fixture: Better Bus Stop Shelters in Leimbach", 5000,
       District::Sued, Category::Transportation},
      {12, "Car Sharing System for Young People", 10000, District::Sued,
       Category::Transportation},
      {13, "Fixture: Wildflower Meadows in Hottingen", 5000, District::Ost,
       Category::Nature},
      {14, "More Trees in Bellevue Sechseläutenplatz", 10000,
       District::Ost, Category::Nature},
      {15, "Fixture: Open Library Boxes in Hirslanden", 5000, District::Ost,
       Category::Culture},
      {16, "Multicultural Festival at Sechseläutenplatz", 10000,
       District::Ost, Category::Culture},
      {17, "Bike Lanes on Seefeldstrasse", 5000, District::Ost,
       Category::Transportation},
      {18, "Fixture: Accessible Tram Stops in Hirslanden", 10000,
       District::Ost, Category::Transportation},
      {19, "Fixture: Pocket Park on Hardstrasse", 5000, District::West,
       Category::Nature},
      {20, "Fixture: Green Roofs for Altstetten School Buildings", 10000,
       District::West, Category::Nature},
      {21, "Fixture: Youth Theatre Workshop in Albisrieden", 5000,
       District::West, Category::Culture},
      {22, "Sustainable Cooking Workshop with Kids", 10000, District::West,
       Category::Culture},
      {23, "Fixture: Safer Crossings on Badenerstrasse", 5000, District::West,
       Category::Transportation},
      {24, "Fixture: Bike Parking Garage at Hardbrücke", 10000,
       District::West, Category::Transportation},
  };
  return instance;
}

}  // namespace pbvote
