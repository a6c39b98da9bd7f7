#include "pbvote/io.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

namespace pbvote {

const char* const kEngineVersion = "1.0.0";

// --- small helpers -----------------------------------------------------------

namespace {

[[noreturn]] void shape_error(const std::string& ctx, const std::string& what) {
  throw SchemaError(ctx + ": " + what);
}

const Json& require_key(const Json& j, const char* key, const std::string& ctx) {
  if (!j.is_object()) shape_error(ctx, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) shape_error(ctx, std::string("missing key '") + key + "'");
  return *it;
}

long long require_int(const Json& j, const char* key, const std::string& ctx) {
  const Json& v = require_key(j, key, ctx);
  if (!v.is_number_integer())
    shape_error(ctx, std::string("'") + key + "' must be an integer");
  return v.get<long long>();
}

std::string require_string(const Json& j, const char* key,
                           const std::string& ctx) {
  const Json& v = require_key(j, key, ctx);
  if (!v.is_string())
    shape_error(ctx, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

const Json& require_array(const Json& j, const char* key,
                          const std::string& ctx) {
  const Json& v = require_key(j, key, ctx);
  if (!v.is_array())
    shape_error(ctx, std::string("'") + key + "' must be an array");
  return v;
}

int parse_project_key(const std::string& key, const std::string& ctx) {
  if (key.empty()) shape_error(ctx, "empty project id key");
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(key, &pos);
  } catch (const std::exception&) {
    shape_error(ctx, "project id key '" + key + "' is not an integer");
  }
  if (pos != key.size())
    shape_error(ctx, "project id key '" + key + "' is not an integer");
  return value;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string join_ids(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(ids[i]);
  }
  return out;
}

Json rational_json(const Rational& r) { return Json(to_fraction_string(r)); }

}  // namespace

// --- instance ---------------------------------------------------------------

Json instance_to_json(const Instance& instance) {
  Json j;
  j["budget"] = instance.budget;
  Json projects = Json::array();
  for (const Project& p : instance.projects) {
    Json pj;
    pj["id"] = p.id;
    pj["name"] = p.name;
    pj["cost"] = p.cost;
    pj["district"] = to_string(p.district);
    pj["category"] = to_string(p.category);
    projects.push_back(std::move(pj));
  }
  j["projects"] = std::move(projects);
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance instance;
  instance.budget = require_int(j, "budget", "instance");
  const Json& projects = require_array(j, "projects", "instance");
  std::size_t i = 0;
  for (const Json& pj : projects) {
    const std::string ctx = "projects[" + std::to_string(i) + "]";
    Project p;
    p.id = static_cast<int>(require_int(pj, "id", ctx));
    p.name = require_string(pj, "name", ctx);
    p.cost = require_int(pj, "cost", ctx);
    const std::string district = require_string(pj, "district", ctx);
    auto d = district_from_string(district);
    if (!d) shape_error(ctx, "unknown district '" + district + "'");
    p.district = *d;
    const std::string category = require_string(pj, "category", ctx);
    auto c = category_from_string(category);
    if (!c) shape_error(ctx, "unknown category '" + category + "'");
    p.category = *c;
    instance.projects.push_back(std::move(p));
    ++i;
  }
  return instance;
}

// --- ballots ------------------------------------------------------------------

namespace {

bool format_uses_approvals(InputFormat f) {
  return f == InputFormat::SN || f == InputFormat::S5;
}
bool format_uses_points(InputFormat f) {
  return f == InputFormat::D5 || f == InputFormat::D10 ||
         f == InputFormat::S5D10;
}

}  // namespace

Json ballots_to_json(InputFormat format, const std::vector<Ballot>& ballots) {
  Json j;
  j["format"] = to_string(format);
  Json list = Json::array();
  for (const Ballot& b : ballots) {
    Json bj;
    bj["voter_id"] = b.voter_id;
    if (format_uses_approvals(b.format)) {
      Json arr = Json::array();
      for (int id : b.approvals) arr.push_back(id);
      bj["approvals"] = std::move(arr);
    } else if (format_uses_points(b.format)) {
      Json pts = Json::object();
      for (const auto& [id, value] : b.points)
        pts[std::to_string(id)] = value;
      bj["points"] = std::move(pts);
    } else {
      Json arr = Json::array();
      for (int id : b.ranking) arr.push_back(id);
      bj["ranking"] = std::move(arr);
    }
    list.push_back(std::move(bj));
  }
  j["ballots"] = std::move(list);
  return j;
}

std::pair<InputFormat, std::vector<Ballot>> ballots_from_json(const Json& j) {
  const std::string format_name = require_string(j, "format", "ballots file");
  auto format = format_from_string(format_name);
  if (!format)
    shape_error("ballots file", "unknown format '" + format_name + "'");

  std::vector<Ballot> ballots;
  const Json& list = require_array(j, "ballots", "ballots file");
  std::size_t i = 0;
  for (const Json& bj : list) {
    const std::string ctx = "ballots[" + std::to_string(i) + "]";
    Ballot b;
    b.voter_id = require_string(bj, "voter_id", ctx);
    b.format = *format;

    const bool has_approvals = bj.contains("approvals");
    const bool has_points = bj.contains("points");
    const bool has_ranking = bj.contains("ranking");
    if (has_approvals + has_points + has_ranking != 1)
      shape_error(ctx, "need exactly one of approvals, points, ranking");

    if (format_uses_approvals(*format)) {
      if (!has_approvals)
        shape_error(ctx, "format " + format_name + " requires 'approvals'");
      const Json& arr = bj["approvals"];
      if (!arr.is_array()) shape_error(ctx, "'approvals' must be an array");
      for (const Json& v : arr) {
        if (!v.is_number_integer())
          shape_error(ctx, "approval entries must be integers");
        if (!b.approvals.insert(v.get<int>()).second)
          shape_error(ctx, "duplicate approval for project " +
                               std::to_string(v.get<int>()));
      }
    } else if (format_uses_points(*format)) {
      if (!has_points)
        shape_error(ctx, "format " + format_name + " requires 'points'");
      const Json& pts = bj["points"];
      if (!pts.is_object()) shape_error(ctx, "'points' must be an object");
      for (auto it = pts.begin(); it != pts.end(); ++it) {
        const int id = parse_project_key(it.key(), ctx);
        if (!it.value().is_number_integer())
          shape_error(ctx, "points values must be integers");
        b.points[id] = it.value().get<int>();
      }
    } else {
      if (!has_ranking)
        shape_error(ctx, "format " + format_name + " requires 'ranking'");
      const Json& arr = bj["ranking"];
      if (!arr.is_array()) shape_error(ctx, "'ranking' must be an array");
      for (const Json& v : arr) {
        if (!v.is_number_integer())
          shape_error(ctx, "ranking entries must be integers");
        b.ranking.push_back(v.get<int>());
      }
    }
    ballots.push_back(std::move(b));
    ++i;
  }
  return {*format, std::move(ballots)};
}

// --- outcome ------------------------------------------------------------------

Json outcome_to_json(const Outcome& outcome) {
  Json j;
  j["rule"] = to_string(outcome.rule);
  j["winners"] = outcome.winners;
  j["total_cost"] = outcome.total_cost;
  if (outcome.mes) {
    Json mj;
    mj["final_start_budget"] = rational_json(outcome.mes->final_start_budget);
    Json rounds = Json::array();
    for (const MesRound& r : outcome.mes->rounds) {
      Json rj;
      rj["project"] = r.project_id;
      rj["q"] = rational_json(r.q);
      Json payments = Json::object();
      for (const auto& [voter, amount] : r.payments)
        payments[voter] = to_fraction_string(amount);
      rj["payments"] = std::move(payments);
      if (r.tie_broken) rj["tie_broken"] = true;
      rounds.push_back(std::move(rj));
    }
    mj["rounds"] = std::move(rounds);
    Json balances = Json::array();
    for (const Rational& b : outcome.mes->final_budgets)
      balances.push_back(to_fraction_string(b));
    mj["final_budgets"] = std::move(balances);
    j["mes"] = std::move(mj);
  }
  if (!outcome.tie_projects.empty()) j["ties"] = outcome.tie_projects;
  return j;
}

Outcome outcome_from_json(const Json& j) {
  Outcome outcome;
  const std::string rule = require_string(j, "rule", "outcome");
  auto tag = rule_from_string(rule);
  if (!tag) shape_error("outcome", "unknown rule '" + rule + "'");
  outcome.rule = *tag;
  for (const Json& v : require_array(j, "winners", "outcome")) {
    if (!v.is_number_integer())
      shape_error("outcome", "winners must be integers");
    outcome.winners.push_back(v.get<int>());
  }
  outcome.total_cost = require_int(j, "total_cost", "outcome");
  if (j.contains("mes")) {
    const Json& mj = j["mes"];
    MesDiagnostics diag;
    try {
      diag.final_start_budget = fraction_from_string(
          require_string(mj, "final_start_budget", "outcome.mes"));
    } catch (const std::invalid_argument& e) {
      shape_error("outcome.mes", e.what());
    }
    std::size_t i = 0;
    for (const Json& rj : require_array(mj, "rounds", "outcome.mes")) {
      const std::string ctx = "outcome.mes.rounds[" + std::to_string(i) + "]";
      MesRound round;
      round.project_id = static_cast<int>(require_int(rj, "project", ctx));
      try {
        round.q = fraction_from_string(require_string(rj, "q", ctx));
        const Json& payments = require_key(rj, "payments", ctx);
        if (!payments.is_object()) shape_error(ctx, "'payments' must be an object");
        for (auto it = payments.begin(); it != payments.end(); ++it) {
          if (!it.value().is_string())
            shape_error(ctx, "payment amounts must be strings");
          round.payments.emplace_back(
              it.key(), fraction_from_string(it.value().get<std::string>()));
        }
      } catch (const std::invalid_argument& e) {
        shape_error(ctx, e.what());
      }
      if (rj.contains("tie_broken")) round.tie_broken = rj["tie_broken"].get<bool>();
      diag.rounds.push_back(std::move(round));
      ++i;
    }
    for (const Json& v : require_array(mj, "final_budgets", "outcome.mes")) {
      if (!v.is_string())
        shape_error("outcome.mes", "final_budgets entries must be strings");
      try {
        diag.final_budgets.push_back(fraction_from_string(v.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        shape_error("outcome.mes.final_budgets", e.what());
      }
    }
    outcome.mes = std::move(diag);
  }
  if (j.contains("ties")) {
    for (const Json& v : j["ties"]) outcome.tie_projects.push_back(v.get<int>());
  }
  return outcome;
}

// --- voter profiles -----------------------------------------------------------

Json profiles_to_json(
    const std::vector<std::pair<std::string, VoterProfileEntry>>& profiles) {
  Json j;
  Json list = Json::array();
  for (const auto& [voter, entry] : profiles) {
    Json pj;
    pj["voter_id"] = voter;
    pj["district"] = to_string(entry.district);
    pj["category"] = to_string(entry.category);
    list.push_back(std::move(pj));
  }
  j["profiles"] = std::move(list);
  return j;
}

std::map<std::string, VoterProfileEntry> profiles_from_json(const Json& j) {
  std::map<std::string, VoterProfileEntry> out;
  std::size_t i = 0;
  for (const Json& pj : require_array(j, "profiles", "profiles file")) {
    const std::string ctx = "profiles[" + std::to_string(i) + "]";
    const std::string voter = require_string(pj, "voter_id", ctx);
    VoterProfileEntry entry;
    const std::string district = require_string(pj, "district", ctx);
    auto d = district_from_string(district);
    if (!d) shape_error(ctx, "unknown district '" + district + "'");
    entry.district = *d;
    const std::string category = require_string(pj, "category", ctx);
    auto c = category_from_string(category);
    if (!c) shape_error(ctx, "unknown category '" + category + "'");
    entry.category = *c;
    if (!out.emplace(voter, entry).second)
      shape_error(ctx, "duplicate voter_id " + voter);
    ++i;
  }
  return out;
}

// --- files --------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading " + path.string());
  return buffer.str();
}

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::error_code ec;
  const std::filesystem::path parent = path.parent_path();
  if (!parent.empty()) {
    std::filesystem::create_directories(parent, ec);
    if (ec)
      throw IoError("cannot create directory " + parent.string() + ": " +
                    ec.message());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out.good()) throw IoError("failed while writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

Json parse_json_text(const std::string& text, const std::string& label) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    const std::size_t limit = e.byte == 0 ? 0 : e.byte - 1;
    for (std::size_t i = 0; i < limit && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw SchemaError(label + ":" + std::to_string(line) +
                      ": JSON parse error: " + e.what());
  }
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- manifests ------------------------------------------------------------------

std::string utc_timestamp_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

Json manifest_to_json(const Manifest& m) {
  Json j;
  j["command"] = m.command;
  j["engine_version"] = m.engine_version;
  Json inputs = Json::object();
  for (const auto& [label, digest] : m.inputs) inputs[label] = digest;
  j["inputs"] = std::move(inputs);
  j["params"] = m.params.is_null() ? Json::object() : m.params;
  if (m.seed) j["seed"] = *m.seed;
  j["timestamp"] = m.timestamp;
  return j;
}

Json report_document(const Manifest& manifest, Json body) {
  Json j;
  j["manifest"] = manifest_to_json(manifest);
  j["body"] = std::move(body);
  return j;
}

// --- sweep report ----------------------------------------------------------------

namespace {

Json sweep_rows_json(const SweepTable& table) {
  Json rows = Json::array();
  for (const SweepRow& row : table.rows) {
    Json rj;
    rj["rule"] = to_string(row.rule);
    rj["format"] = to_string(row.format);
    Json cells = Json::array();
    for (const SweepCell& cell : row.cells) {
      Json cj;
      cj["budget"] = cell.budget;
      cj["winners"] = cell.winners;
      cj["total_cost"] = cell.total_cost;
      cells.push_back(std::move(cj));
    }
    rj["cells"] = std::move(cells);
    rows.push_back(std::move(rj));
  }
  return rows;
}

std::vector<RuleTag> rules_in_order(const SweepTable& table) {
  std::vector<RuleTag> rules;
  for (const SweepRow& row : table.rows)
    if (std::find(rules.begin(), rules.end(), row.rule) == rules.end())
      rules.push_back(row.rule);
  return rules;
}

}  // namespace

Json sweep_body(const Instance& instance, const SweepTable& display,
                const SweepTable& hamming_sweep) {
  Json body;
  Json legend = Json::array();
  for (const Project& p : instance.projects) {
    Json pj;
    pj["id"] = p.id;
    pj["name"] = p.name;
    pj["cost"] = p.cost;
    legend.push_back(std::move(pj));
  }
  body["projects"] = std::move(legend);
  body["budgets"] = display.budgets;
  body["rows"] = sweep_rows_json(display);

  Json hj;
  hj["budgets"] = hamming_sweep.budgets;
  hj["rows"] = sweep_rows_json(hamming_sweep);
  Json pairs = Json::array();
  Json rule_means = Json::array();
  for (RuleTag rule : rules_in_order(hamming_sweep)) {
    std::vector<const SweepRow*> rows;
    for (const SweepRow& row : hamming_sweep.rows)
      if (row.rule == rule) rows.push_back(&row);
    if (rows.size() < 2) continue;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        long long total = 0;
        for (std::size_t c = 0; c < hamming_sweep.budgets.size(); ++c)
          total += hamming(rows[i]->cells[c].winners, rows[j]->cells[c].winners);
        Json pj;
        pj["rule"] = to_string(rule);
        pj["format_a"] = to_string(rows[i]->format);
        pj["format_b"] = to_string(rows[j]->format);
        pj["mean_hamming"] = to_fraction_string(
            rat(total, static_cast<Money>(hamming_sweep.budgets.size())));
        pairs.push_back(std::move(pj));
      }
    Json mj;
    mj["rule"] = to_string(rule);
    mj["mean_hamming"] =
        to_fraction_string(avg_pairwise_hamming(hamming_sweep, rule));
    rule_means.push_back(std::move(mj));
  }
  hj["pairs"] = std::move(pairs);
  hj["rule_means"] = std::move(rule_means);
  body["hamming"] = std::move(hj);
  return body;
}

std::string sweep_csv(const SweepTable& display) {
  std::string csv = "rule,format";
  for (Money b : display.budgets) csv += ",budget_" + std::to_string(b);
  csv += "\n";
  for (const SweepRow& row : display.rows) {
    csv += to_string(row.rule) + "," + to_string(row.format);
    for (const SweepCell& cell : row.cells) csv += "," + join_ids(cell.winners);
    csv += "\n";
  }
  return csv;
}

std::string sweep_hamming_csv(const SweepTable& hamming_sweep) {
  std::string csv = "rule,format_a,format_b,mean_hamming\n";
  for (RuleTag rule : rules_in_order(hamming_sweep)) {
    std::vector<const SweepRow*> rows;
    for (const SweepRow& row : hamming_sweep.rows)
      if (row.rule == rule) rows.push_back(&row);
    if (rows.size() < 2) continue;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        long long total = 0;
        for (std::size_t c = 0; c < hamming_sweep.budgets.size(); ++c)
          total += hamming(rows[i]->cells[c].winners, rows[j]->cells[c].winners);
        csv += to_string(rule) + "," + to_string(rows[i]->format) + "," +
               to_string(rows[j]->format) + "," +
               format_double(static_cast<double>(total) /
                             static_cast<double>(hamming_sweep.budgets.size())) +
               "\n";
      }
    csv += to_string(rule) + ",*,*," +
           format_double(to_double(avg_pairwise_hamming(hamming_sweep, rule))) +
           "\n";
  }
  return csv;
}

// --- divergence report -------------------------------------------------------------

Json divergence_body(const std::vector<PointDistribution>& distributions) {
  Json body;
  Json formats = Json::array();
  for (const PointDistribution& d : distributions)
    formats.push_back(to_string(d.source_format));
  body["formats"] = std::move(formats);
  Json shares = Json::array();
  for (const PointDistribution& d : distributions) {
    Json sj;
    sj["format"] = to_string(d.source_format);
    Json by_project = Json::object();
    for (std::size_t p = 0; p < d.project_ids.size(); ++p)
      by_project[std::to_string(d.project_ids[p])] =
          to_fraction_string(d.shares[p]);
    sj["shares"] = std::move(by_project);
    shares.push_back(std::move(sj));
  }
  body["distributions"] = std::move(shares);
  Json matrix = Json::array();
  for (const PointDistribution& a : distributions) {
    Json row = Json::array();
    for (const PointDistribution& b : distributions)
      row.push_back(js_divergence(a, b));
    matrix.push_back(std::move(row));
  }
  body["jsd_matrix"] = std::move(matrix);
  return body;
}

std::string divergence_csv(const std::vector<PointDistribution>& distributions) {
  std::string csv = "format";
  for (const PointDistribution& d : distributions)
    csv += "," + to_string(d.source_format);
  csv += "\n";
  for (const PointDistribution& a : distributions) {
    csv += to_string(a.source_format);
    for (const PointDistribution& b : distributions)
      csv += "," + format_double(js_divergence(a, b));
    csv += "\n";
  }
  return csv;
}

// --- stats report ------------------------------------------------------------------

Json stats_body(const std::vector<std::pair<InputFormat, CountStats>>& stats) {
  Json body;
  Json rows = Json::array();
  for (const auto& [format, s] : stats) {
    Json rj;
    rj["format"] = to_string(format);
    rj["num_ballots"] = s.num_ballots;
    rj["mode"] = s.mode;
    rj["mode_freq"] = s.mode_freq;
    rj["mean"] = s.mean;
    rj["median"] = s.median;
    rj["stddev"] = s.stddev;
    rows.push_back(std::move(rj));
  }
  body["selected_counts"] = std::move(rows);
  return body;
}

std::string stats_csv(const std::vector<std::pair<InputFormat, CountStats>>& stats) {
  std::string csv = "format,num_ballots,mode,mode_freq,mean,median,stddev\n";
  for (const auto& [format, s] : stats) {
    csv += to_string(format) + "," + std::to_string(s.num_ballots) + "," +
           std::to_string(s.mode) + "," + std::to_string(s.mode_freq) + "," +
           format_double(s.mean) + "," + format_double(s.median) + "," +
           format_double(s.stddev) + "\n";
  }
  return csv;
}

// --- concentration report -------------------------------------------------------------

Json concentration_body(
    const std::vector<std::pair<InputFormat, ConcentrationResult>>& results) {
  Json body;
  Json rows = Json::array();
  for (const auto& [format, result] : results) {
    Json rj;
    rj["format"] = to_string(format);
    Json summary;
    summary["district"] = {{"mean", result.summary.district_mean},
                           {"median", result.summary.district_median},
                           {"stddev", result.summary.district_std}};
    summary["category"] = {{"mean", result.summary.category_mean},
                           {"median", result.summary.category_median},
                           {"stddev", result.summary.category_std}};
    rj["summary"] = std::move(summary);
    Json voters = Json::array();
    for (const ConcentrationRow& row : result.rows) {
      Json vj;
      vj["voter_id"] = row.voter_id;
      vj["district_fraction"] = to_fraction_string(row.district_fraction);
      vj["category_fraction"] = to_fraction_string(row.category_fraction);
      voters.push_back(std::move(vj));
    }
    rj["voters"] = std::move(voters);
    rows.push_back(std::move(rj));
  }
  body["formats"] = std::move(rows);
  return body;
}

std::string concentration_csv(
    const std::vector<std::pair<InputFormat, ConcentrationResult>>& results) {
  std::string csv = "format,voter_id,district_fraction,category_fraction\n";
  for (const auto& [format, result] : results)
    for (const ConcentrationRow& row : result.rows)
      csv += to_string(format) + "," + csv_escape(row.voter_id) + "," +
             format_double(to_double(row.district_fraction)) + "," +
             format_double(to_double(row.category_fraction)) + "\n";
  return csv;
}

// --- consistency report -------------------------------------------------------------

Json consistency_body(const ConsistencyReport& report) {
  Json body;
  body["num_voters"] = report.voters.size();
  Json shares;
  shares["sn_contains_s5"] = report.share_sn_s5_nested;
  shares["d10_covers_d5"] = report.share_d5_d10_pointwise;
  shares["s5_s5r_within_1"] = report.share_s5_s5r_close;
  shares["s5r_s5d10_aligned"] = report.share_s5r_s5d10_monotone;
  body["shares"] = std::move(shares);
  Json voters = Json::array();
  for (const ConsistencyFlags& f : report.voters) {
    Json vj;
    vj["voter_id"] = f.voter_id;
    vj["sn_contains_s5"] = f.sn_s5_nested;
    vj["d10_covers_d5"] = f.d5_d10_pointwise;
    vj["s5_s5r_within_1"] = f.s5_s5r_close;
    vj["s5_s5r_delta"] = f.s5_s5r_delta;
    vj["s5r_s5d10_aligned"] = f.s5r_s5d10_monotone;
    voters.push_back(std::move(vj));
  }
  body["voters"] = std::move(voters);
  return body;
}

std::string consistency_csv(const ConsistencyReport& report) {
  std::string csv =
      "voter_id,sn_contains_s5,d10_covers_d5,s5_s5r_within_1,s5_s5r_delta,"
      "s5r_s5d10_aligned\n";
  for (const ConsistencyFlags& f : report.voters) {
    csv += csv_escape(f.voter_id);
    csv += std::string(",") + (f.sn_s5_nested ? "1" : "0");
    csv += std::string(",") + (f.d5_d10_pointwise ? "1" : "0");
    csv += std::string(",") + (f.s5_s5r_close ? "1" : "0");
    csv += "," + std::to_string(f.s5_s5r_delta);
    csv += std::string(",") + (f.s5r_s5d10_monotone ? "1" : "0");
    csv += "\n";
  }
  return csv;
}

// --- explain report ----------------------------------------------------------------

namespace {

Json explanation_json(const OutcomeExplanation& ex) {
  Json j;
  Json hist = Json::array();
  for (const auto& [utility, voters] : ex.utility_histogram) {
    Json hj;
    hj["utility"] = utility;
    hj["voters"] = voters;
    hist.push_back(std::move(hj));
  }
  j["utility_histogram"] = std::move(hist);
  j["mean_approved_spending_fraction"] =
      to_fraction_string(ex.mean_approved_spending_fraction);
  j["share_with_positive_utility"] =
      to_fraction_string(ex.share_with_positive_utility);
  j["share_with_zero_utility"] = to_fraction_string(ex.share_with_zero_utility);
  Json districts = Json::object();
  for (const auto& [d, share] : ex.district_budget_shares)
    districts[to_string(d)] = to_fraction_string(share);
  j["district_budget_shares"] = std::move(districts);
  Json categories = Json::object();
  for (const auto& [c, share] : ex.category_budget_shares)
    categories[to_string(c)] = to_fraction_string(share);
  j["category_budget_shares"] = std::move(categories);
  return j;
}

}  // namespace

Json explain_body(const ExplanationStats& stats, const Outcome& outcome_a,
                  const Outcome& outcome_b) {
  Json body;
  Json labels;
  labels["A"] = to_string(outcome_a.rule);
  labels["B"] = to_string(outcome_b.rule);
  body["labels"] = std::move(labels);
  Json outcomes;
  outcomes["A"] = outcome_to_json(outcome_a);
  outcomes["B"] = outcome_to_json(outcome_b);
  body["outcomes"] = std::move(outcomes);
  Json individual;
  individual["A"] = explanation_json(stats.a);
  individual["B"] = explanation_json(stats.b);
  body["individual"] = std::move(individual);

  Json group;
  Json district;
  Json district_votes = Json::object();
  for (const auto& [d, share] : stats.district_vote_shares)
    district_votes[to_string(d)] = to_fraction_string(share);
  district["population_vote_shares"] = std::move(district_votes);
  Json district_a = Json::object();
  for (const auto& [d, share] : stats.a.district_budget_shares)
    district_a[to_string(d)] = to_fraction_string(share);
  district["budget_shares_a"] = std::move(district_a);
  Json district_b = Json::object();
  for (const auto& [d, share] : stats.b.district_budget_shares)
    district_b[to_string(d)] = to_fraction_string(share);
  district["budget_shares_b"] = std::move(district_b);
  group["district"] = std::move(district);

  Json category;
  Json category_votes = Json::object();
  for (const auto& [c, share] : stats.category_vote_shares)
    category_votes[to_string(c)] = to_fraction_string(share);
  category["population_vote_shares"] = std::move(category_votes);
  Json category_a = Json::object();
  for (const auto& [c, share] : stats.a.category_budget_shares)
    category_a[to_string(c)] = to_fraction_string(share);
  category["budget_shares_a"] = std::move(category_a);
  Json category_b = Json::object();
  for (const auto& [c, share] : stats.b.category_budget_shares)
    category_b[to_string(c)] = to_fraction_string(share);
  category["budget_shares_b"] = std::move(category_b);
  group["category"] = std::move(category);
  body["group"] = std::move(group);
  return body;
}

std::string explain_individual_csv(const ExplanationStats& stats) {
  std::set<Money> utilities;
  for (const auto& [u, c] : stats.a.utility_histogram) {
    (void)c;
    utilities.insert(u);
  }
  for (const auto& [u, c] : stats.b.utility_histogram) {
    (void)c;
    utilities.insert(u);
  }
  std::string csv = "utility,voters_a,voters_b\n";
  for (Money u : utilities) {
    const auto ia = stats.a.utility_histogram.find(u);
    const auto ib = stats.b.utility_histogram.find(u);
    csv += std::to_string(u) + "," +
           std::to_string(ia == stats.a.utility_histogram.end() ? 0 : ia->second) +
           "," +
           std::to_string(ib == stats.b.utility_histogram.end() ? 0 : ib->second) +
           "\n";
  }
  return csv;
}

std::string explain_group_csv(const ExplanationStats& stats) {
  std::string csv = "dimension,slice,vote_share,budget_share_a,budget_share_b\n";
  for (District d : kAllDistricts) {
    csv += "district," + to_string(d) + "," +
           format_double(to_double(stats.district_vote_shares.at(d))) + "," +
           format_double(to_double(stats.a.district_budget_shares.at(d))) + "," +
           format_double(to_double(stats.b.district_budget_shares.at(d))) + "\n";
  }
  for (Category c : kAllCategories) {
    csv += "category," + to_string(c) + "," +
           format_double(to_double(stats.category_vote_shares.at(c))) + "," +
           format_double(to_double(stats.a.category_budget_shares.at(c))) + "," +
           format_double(to_double(stats.b.category_budget_shares.at(c))) + "\n";
  }
  return csv;
}

}  // namespace pbvote
