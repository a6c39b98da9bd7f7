#include "pbvote/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pbvote/io.hpp"

namespace pbvote {

namespace {

std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

std::filesystem::path resolve_out(const std::filesystem::path& path) {
  if (path.is_absolute()) return path;
  const char* base = std::getenv("PBVOTE_OUT_DIR");
  if (!base || !*base) return path;
  return std::filesystem::path(base) / path;
}

// CSV and sidecar names derive from the main output path: out.json becomes
// out_table.csv, out.manifest.json and so on.
std::filesystem::path sibling(const std::filesystem::path& out,
                              const std::string& suffix,
                              const std::string& extension) {
  std::filesystem::path p = out;
  const std::string stem = p.stem().string();
  p.replace_filename(stem + suffix + extension);
  return p;
}

struct LoadedJson {
  std::string path;
  std::string bytes;
  Json parsed;
};

LoadedJson load_json(const std::string& path) {
  LoadedJson loaded;
  loaded.path = path;
  loaded.bytes = read_text_file(path);
  loaded.parsed = parse_json_text(loaded.bytes, path);
  return loaded;
}

void print_violations(const std::string& path, const ValidationReport& report) {
  for (const Violation& v : report)
    std::cerr << path << ": " << v.where << ": " << v.message << "\n";
}

Instance load_instance(const LoadedJson& doc) {
  Instance instance = instance_from_json(doc.parsed);
  ValidationReport report = validate_instance(instance);
  if (!report.empty()) {
    print_violations(doc.path, report);
    throw BallotValidationError(std::move(report));
  }
  return instance;
}

std::pair<InputFormat, std::vector<Ballot>> load_ballots(
    const LoadedJson& doc, const Instance& instance) {
  auto [format, ballots] = ballots_from_json(doc.parsed);
  ValidationReport report = validate_ballots(ballots, instance);
  if (!report.empty()) {
    print_violations(doc.path, report);
    throw BallotValidationError(std::move(report));
  }
  return {format, std::move(ballots)};
}

std::string join_command(int argc, const char* const* argv) {
  std::string cmd;
  for (int i = 0; i < argc; ++i) {
    if (i) cmd += ' ';
    cmd += argv[i];
  }
  return cmd;
}

Manifest base_manifest(const std::string& command) {
  Manifest m;
  m.command = command;
  m.engine_version = kEngineVersion;
  m.params = Json::object();
  m.timestamp = utc_timestamp_now();
  return m;
}

void write_manifest_sidecar(const std::filesystem::path& out,
                            const Manifest& manifest) {
  atomic_write_file(sibling(out, ".manifest", ".json"),
                    dump_document(manifest_to_json(manifest)));
}

// --- aggregate -----------------------------------------------------------------

struct AggregateArgs {
  std::string instance_path;
  std::string ballots_path;
  std::string rule;
  std::optional<Money> budget_override;
  Money step = 1;
  std::string out;
};

int cmd_aggregate(const AggregateArgs& args, const std::string& command) {
  const LoadedJson instance_doc = load_json(args.instance_path);
  Instance instance = load_instance(instance_doc);
  if (args.budget_override) {
    if (*args.budget_override <= 0) {
      std::cerr << "--budget must be positive\n";
      return kExitValidation;
    }
    instance.budget = *args.budget_override;
  }
  const LoadedJson ballots_doc = load_json(args.ballots_path);
  const auto [format, ballots] = load_ballots(ballots_doc, instance);
  (void)format;

  const RuleTag rule = *rule_from_string(args.rule);
  const Outcome outcome = run_rule(instance, ballots, rule, {args.step});

  Manifest manifest = base_manifest(command);
  manifest.inputs.emplace_back("instance", fnv1a_digest(instance_doc.bytes));
  manifest.inputs.emplace_back("ballots", fnv1a_digest(ballots_doc.bytes));
  manifest.params["rule"] = args.rule;
  manifest.params["budget"] = instance.budget;
  manifest.params["step"] = args.step;

  const std::filesystem::path out = resolve_out(args.out);
  atomic_write_file(out, dump_document(outcome_to_json(outcome)));
  write_manifest_sidecar(out, manifest);
  return kExitOk;
}

// --- simulate ------------------------------------------------------------------

struct SimulateArgs {
  std::string instance_path;
  std::string model;
  std::optional<int> agents;
  std::optional<std::uint64_t> seed;
  std::optional<long long> focus_weight;
  std::optional<long long> base_weight;
  std::optional<int> draws;
  std::string config_path;
  std::string profiles_out;
  std::string out;
};

int cmd_simulate(const SimulateArgs& args, const std::string& command) {
  const LoadedJson instance_doc = load_json(args.instance_path);
  const Instance instance = load_instance(instance_doc);

  PolarisedConfig config;
  bool config_has_seed = false;
  std::string config_digest;
  if (!args.config_path.empty()) {
    const LoadedJson config_doc = load_json(args.config_path);
    config_digest = fnv1a_digest(config_doc.bytes);
    const Json& cj = config_doc.parsed;
    if (!cj.is_object()) throw SchemaError(args.config_path + ": expected an object");
    if (cj.contains("num_agents")) config.num_agents = cj["num_agents"].get<int>();
    if (cj.contains("focus_weight"))
      config.focus_weight = cj["focus_weight"].get<long long>();
    if (cj.contains("base_weight"))
      config.base_weight = cj["base_weight"].get<long long>();
    if (cj.contains("draws")) config.draws = cj["draws"].get<int>();
    if (cj.contains("seed")) {
      config.seed = cj["seed"].get<std::uint64_t>();
      config_has_seed = true;
    }
  }
  if (args.agents) config.num_agents = *args.agents;
  if (args.focus_weight) config.focus_weight = *args.focus_weight;
  if (args.base_weight) config.base_weight = *args.base_weight;
  if (args.draws) config.draws = *args.draws;
  if (args.seed) {
    config.seed = *args.seed;
    config_has_seed = true;
  }
  if (!config_has_seed) {
    std::cerr << "--seed is required (or provide one in --config)\n";
    return kExitValidation;
  }
  if (config.num_agents < 1) {
    std::cerr << "--agents must be at least 1\n";
    return kExitValidation;
  }

  InputFormat format;
  std::vector<Ballot> ballots;
  std::vector<VoterProfileEntry> profiles;
  if (args.model == "uniform") {
    format = InputFormat::S5;
    ballots = gen_uniform(instance, config.num_agents, config.seed);
  } else {
    GeneratedElectorate generated = gen_polarised(instance, config);
    format = generated.ballots.front().format;
    ballots = std::move(generated.ballots);
    profiles = std::move(generated.profiles);
  }

  Manifest manifest = base_manifest(command);
  manifest.inputs.emplace_back("instance", fnv1a_digest(instance_doc.bytes));
  if (!config_digest.empty())
    manifest.inputs.emplace_back("config", config_digest);
  manifest.params["model"] = args.model;
  manifest.params["agents"] = config.num_agents;
  if (args.model == "polarised") {
    manifest.params["focus_weight"] = config.focus_weight;
    manifest.params["base_weight"] = config.base_weight;
    manifest.params["draws"] = config.draws;
  }
  manifest.seed = config.seed;

  const std::filesystem::path out = resolve_out(args.out);
  atomic_write_file(out, dump_document(ballots_to_json(format, ballots)));
  write_manifest_sidecar(out, manifest);

  if (!args.profiles_out.empty()) {
    if (profiles.empty()) {
      std::cerr << "--profiles-out is only available for the polarised model\n";
      return kExitValidation;
    }
    std::vector<std::pair<std::string, VoterProfileEntry>> rows;
    rows.reserve(profiles.size());
    for (std::size_t i = 0; i < profiles.size(); ++i)
      rows.emplace_back(ballots[i].voter_id, profiles[i]);
    atomic_write_file(resolve_out(args.profiles_out),
                      dump_document(profiles_to_json(rows)));
  }
  return kExitOk;
}

// --- report --------------------------------------------------------------------

struct ReportArgs {
  std::string kind;
  std::string instance_path;
  std::vector<std::string> ballots_paths;
  std::string profiles_path;
  std::vector<std::string> rules = {"greedy", "mes", "eco-greedy", "eco-mes"};
  std::vector<Money> budgets;
  std::vector<Money> hamming_budgets;
  std::string rule_a = "greedy";
  std::string rule_b = "mes";
  int threads = 1;
  std::string out;
};

std::vector<RuleTag> parse_rules(const std::vector<std::string>& tokens) {
  std::vector<RuleTag> rules;
  for (const std::string& token : tokens) {
    auto rule = rule_from_string(token);
    if (!rule) throw std::invalid_argument("unknown rule '" + token + "'");
    if (std::find(rules.begin(), rules.end(), *rule) == rules.end())
      rules.push_back(*rule);
  }
  return rules;
}

std::vector<Money> normalize_budgets(std::vector<Money> budgets,
                                     const std::vector<Money>& fallback) {
  if (budgets.empty()) return fallback;
  std::sort(budgets.begin(), budgets.end());
  budgets.erase(std::unique(budgets.begin(), budgets.end()), budgets.end());
  for (Money b : budgets)
    if (b <= 0) throw std::invalid_argument("budgets must be positive");
  return budgets;
}

int cmd_report(const ReportArgs& args, const std::string& command) {
  const LoadedJson instance_doc = load_json(args.instance_path);
  const Instance instance = load_instance(instance_doc);

  std::vector<LoadedJson> ballots_docs;
  std::vector<std::pair<InputFormat, std::vector<Ballot>>> ballot_sets;
  for (const std::string& path : args.ballots_paths) {
    ballots_docs.push_back(load_json(path));
    ballot_sets.push_back(load_ballots(ballots_docs.back(), instance));
  }

  Manifest manifest = base_manifest(command);
  manifest.inputs.emplace_back("instance", fnv1a_digest(instance_doc.bytes));
  for (std::size_t i = 0; i < ballots_docs.size(); ++i)
    manifest.inputs.emplace_back("ballots[" + std::to_string(i) + "]",
                                 fnv1a_digest(ballots_docs[i].bytes));
  manifest.params["kind"] = args.kind;

  const std::filesystem::path out = resolve_out(args.out);
  Json body;
  std::vector<std::pair<std::filesystem::path, std::string>> csv_files;

  if (args.kind == "sweep") {
    if (ballot_sets.empty())
      throw std::invalid_argument("sweep needs at least one ballots file");
    const std::vector<RuleTag> rules = parse_rules(args.rules);
    const std::vector<Money> budgets =
        normalize_budgets(args.budgets, kDisplayBudgets);
    const std::vector<Money> hamming_budgets =
        normalize_budgets(args.hamming_budgets, kHammingBudgets);
    Json rule_names = Json::array();
    for (RuleTag r : rules) rule_names.push_back(to_string(r));
    manifest.params["rules"] = std::move(rule_names);
    manifest.params["budgets"] = budgets;
    manifest.params["hamming_budgets"] = hamming_budgets;

    const SweepTable display =
        budget_sweep(instance, ballot_sets, rules, budgets, args.threads);
    const SweepTable hamming_sweep =
        budget_sweep(instance, ballot_sets, rules, hamming_budgets, args.threads);
    body = sweep_body(instance, display, hamming_sweep);
    csv_files.emplace_back(sibling(out, "_table", ".csv"), sweep_csv(display));
    csv_files.emplace_back(sibling(out, "_hamming", ".csv"),
                           sweep_hamming_csv(hamming_sweep));
  } else if (args.kind == "divergence") {
    if (ballot_sets.size() < 2)
      throw std::invalid_argument("divergence needs at least two ballots files");
    std::vector<PointDistribution> distributions;
    for (const auto& [format, ballots] : ballot_sets) {
      (void)format;
      distributions.push_back(point_distribution(ballots, instance));
    }
    body = divergence_body(distributions);
    csv_files.emplace_back(sibling(out, "", ".csv"), divergence_csv(distributions));
  } else if (args.kind == "stats") {
    if (ballot_sets.empty())
      throw std::invalid_argument("stats needs at least one ballots file");
    std::vector<std::pair<InputFormat, CountStats>> stats;
    for (const auto& [format, ballots] : ballot_sets)
      stats.emplace_back(format, ballot_count_stats(ballots));
    body = stats_body(stats);
    csv_files.emplace_back(sibling(out, "", ".csv"), stats_csv(stats));
  } else if (args.kind == "concentration") {
    if (ballot_sets.empty())
      throw std::invalid_argument("concentration needs at least one ballots file");
    if (args.profiles_path.empty())
      throw std::invalid_argument("concentration needs --profiles");
    const LoadedJson profiles_doc = load_json(args.profiles_path);
    const auto profiles = profiles_from_json(profiles_doc.parsed);
    manifest.inputs.emplace_back("profiles", fnv1a_digest(profiles_doc.bytes));
    std::vector<std::pair<InputFormat, ConcentrationResult>> results;
    for (const auto& [format, ballots] : ballot_sets)
      results.emplace_back(format, concentration(ballots, profiles, instance));
    body = concentration_body(results);
    csv_files.emplace_back(sibling(out, "", ".csv"), concentration_csv(results));
  } else if (args.kind == "consistency") {
    std::map<InputFormat, std::vector<Ballot>> by_format;
    for (auto& [format, ballots] : ballot_sets) {
      if (by_format.count(format))
        throw std::invalid_argument("duplicate ballots file for format " +
                                    to_string(format));
      by_format.emplace(format, std::move(ballots));
    }
    const ConsistencyReport report = consistency_checks(by_format);
    body = consistency_body(report);
    csv_files.emplace_back(sibling(out, "", ".csv"), consistency_csv(report));
  } else if (args.kind == "explain") {
    if (ballot_sets.size() != 1)
      throw std::invalid_argument("explain needs exactly one ballots file");
    auto rule_a = rule_from_string(args.rule_a);
    auto rule_b = rule_from_string(args.rule_b);
    if (!rule_a) throw std::invalid_argument("unknown rule '" + args.rule_a + "'");
    if (!rule_b) throw std::invalid_argument("unknown rule '" + args.rule_b + "'");
    manifest.params["rule_a"] = args.rule_a;
    manifest.params["rule_b"] = args.rule_b;
    const auto& ballots = ballot_sets.front().second;
    const Outcome outcome_a = run_rule(instance, ballots, *rule_a);
    const Outcome outcome_b = run_rule(instance, ballots, *rule_b);
    const ExplanationStats stats =
        explanation_stats(instance, ballots, outcome_a, outcome_b);
    body = explain_body(stats, outcome_a, outcome_b);
    csv_files.emplace_back(sibling(out, "_individual", ".csv"),
                           explain_individual_csv(stats));
    csv_files.emplace_back(sibling(out, "_group", ".csv"),
                           explain_group_csv(stats));
  } else {
    throw std::invalid_argument("unknown report kind '" + args.kind + "'");
  }

  atomic_write_file(out, dump_document(report_document(manifest, std::move(body))));
  for (const auto& [path, content] : csv_files) atomic_write_file(path, content);
  return kExitOk;
}

}  // namespace

int run_main(int argc, const char* const* argv) {
  const std::string command = join_command(argc, argv);

  CLI::App app{"Participatory budgeting aggregation and experiment toolkit"};
  app.require_subcommand(1);

  AggregateArgs agg;
  CLI::App* aggregate = app.add_subcommand(
      "aggregate", "Run one aggregation rule over one ballots file");
  aggregate->add_option("--instance", agg.instance_path, "Instance JSON (.pb.json)")
      ->required();
  aggregate->add_option("--ballots", agg.ballots_path, "Ballots JSON")->required();
  aggregate->add_option("--rule", agg.rule, "greedy | mes | eco-greedy | eco-mes")
      ->required()
      ->check(CLI::IsMember({"greedy", "mes", "eco-greedy", "eco-mes"}));
  aggregate->add_option("--budget", agg.budget_override,
                        "Override the instance budget");
  aggregate->add_option("--step", agg.step,
                        "Per-voter budget increment for the MES completion")
      ->check(CLI::PositiveNumber);
  aggregate->add_option("--out", agg.out, "Outcome JSON path")->required();

  SimulateArgs sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Generate a synthetic electorate");
  simulate->add_option("--instance", sim.instance_path, "Instance JSON")->required();
  simulate->add_option("--model", sim.model, "uniform | polarised")
      ->required()
      ->check(CLI::IsMember({"uniform", "polarised"}));
  simulate->add_option("--agents", sim.agents, "Number of agents");
  simulate->add_option("--seed", sim.seed, "RNG seed (required here or in --config)");
  simulate->add_option("--focus-weight", sim.focus_weight,
                       "Weight of the two focus projects (polarised)");
  simulate->add_option("--base-weight", sim.base_weight,
                       "Weight of every other project (polarised)");
  simulate->add_option("--draws", sim.draws, "Points drawn per agent (5 or 10)");
  simulate->add_option("--config", sim.config_path,
                       "JSON config with the same knobs; flags win");
  simulate->add_option("--profiles-out", sim.profiles_out,
                       "Also write agent district/category profiles (polarised)");
  simulate->add_option("--out", sim.out, "Ballots JSON path")->required();

  ReportArgs rep;
  CLI::App* report = app.add_subcommand("report", "Produce an analysis report");
  report
      ->add_option("--kind", rep.kind,
                   "sweep | divergence | stats | concentration | consistency | "
                   "explain")
      ->required()
      ->check(CLI::IsMember({"sweep", "divergence", "stats", "concentration",
                             "consistency", "explain"}));
  report->add_option("--instance", rep.instance_path, "Instance JSON")->required();
  report->add_option("--ballots", rep.ballots_paths, "Ballots JSON (repeatable)")
      ->required()
      ->take_all();
  report->add_option("--profiles", rep.profiles_path,
                     "Voter profiles JSON (concentration)");
  report->add_option("--rules", rep.rules, "Rules for sweep (default: all four)")
      ->take_all();
  report->add_option("--budgets", rep.budgets, "Budgets for the sweep table")
      ->take_all();
  report->add_option("--hamming-budgets", rep.hamming_budgets,
                     "Budgets for the distance averages")
      ->take_all();
  report->add_option("--rule-a", rep.rule_a, "Left rule for explain");
  report->add_option("--rule-b", rep.rule_b, "Right rule for explain");
  report->add_option("--threads", rep.threads, "Worker threads for sweeps")
      ->check(CLI::PositiveNumber);
  report->add_option("--out", rep.out, "Report JSON path")->required();

  std::string fixture_out = "zurich.pb.json";
  CLI::App* fixture = app.add_subcommand(
      "fixture", "Write the built-in 24-project benchmark instance");
  fixture->add_option("--out", fixture_out, "Instance JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (aggregate->parsed()) return cmd_aggregate(agg, command);
    if (simulate->parsed()) return cmd_simulate(sim, command);
    if (report->parsed()) return cmd_report(rep, command);
    if (fixture->parsed()) {
      atomic_write_file(resolve_out(fixture_out),
                        dump_document(instance_to_json(zurich_fixture())));
      return kExitOk;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const BallotValidationError&) {
    // Individual violations were already printed where they were found.
    return kExitValidation;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace pbvote
