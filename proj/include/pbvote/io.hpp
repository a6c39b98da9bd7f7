#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pbvote/analysis.hpp"
#include "pbvote/simulation.hpp"

namespace pbvote {

// Insertion-ordered JSON keeps emitted key order stable, which the
// byte-determinism guarantees rely on.
using Json = nlohmann::ordered_json;

// Reading or writing a file failed (missing, unreadable, rename failed...).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input parsed as JSON but does not match the expected document shape.
// Messages carry a line number when one is known.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- canonical document schemas -------------------------------------------

// {"budget": int, "projects": [{"id", "name", "cost", "district", "category"}]}
Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& j);

// {"format": str, "ballots": [{"voter_id", approvals|points|ranking}]}
// The per-ballot content key must match the file's format.
Json ballots_to_json(InputFormat format, const std::vector<Ballot>& ballots);
std::pair<InputFormat, std::vector<Ballot>> ballots_from_json(const Json& j);

// {"rule": str, "winners": [int], "total_cost": int, "mes": {...}?}
Json outcome_to_json(const Outcome& outcome);
Outcome outcome_from_json(const Json& j);

// {"profiles": [{"voter_id", "district", "category"}]}
Json profiles_to_json(
    const std::vector<std::pair<std::string, VoterProfileEntry>>& profiles);
std::map<std::string, VoterProfileEntry> profiles_from_json(const Json& j);

// --- files ------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);
// Whole-file write via a temp file in the target directory plus rename, so a
// crash never leaves a half-written document behind.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

// Parses with line-addressed errors: parse failures and shape mismatches
// throw SchemaError mentioning `label` (usually the file name).
Json parse_json_text(const std::string& text, const std::string& label);

// 64-bit FNV-1a of the raw bytes, as 16 hex digits.
std::string fnv1a_digest(const std::string& bytes);

// --- run manifests ----------------------------------------------------------

struct Manifest {
  std::string command;          // full CLI invocation, joined argv
  std::string engine_version;
  // input label -> digest of the file bytes
  std::vector<std::pair<std::string, std::string>> inputs;
  Json params;                  // command-specific knobs
  std::optional<std::uint64_t> seed;
  std::string timestamp;        // ISO 8601 UTC
};

extern const char* const kEngineVersion;

std::string utc_timestamp_now();
Json manifest_to_json(const Manifest& m);

// Reports are {"manifest": {...}, "body": {...}}; everything except
// manifest.timestamp is a pure function of the inputs, so equal invocations
// produce byte-identical bodies.
Json report_document(const Manifest& manifest, Json body);

// --- report bodies and CSV views ---------------------------------------------

Json sweep_body(const Instance& instance, const SweepTable& display,
                const SweepTable& hamming_sweep);
std::string sweep_csv(const SweepTable& display);
std::string sweep_hamming_csv(const SweepTable& hamming_sweep);

Json divergence_body(const std::vector<PointDistribution>& distributions);
std::string divergence_csv(const std::vector<PointDistribution>& distributions);

Json stats_body(const std::vector<std::pair<InputFormat, CountStats>>& stats);
std::string stats_csv(const std::vector<std::pair<InputFormat, CountStats>>& stats);

Json concentration_body(
    const std::vector<std::pair<InputFormat, ConcentrationResult>>& results);
std::string concentration_csv(
    const std::vector<std::pair<InputFormat, ConcentrationResult>>& results);

Json consistency_body(const ConsistencyReport& report);
std::string consistency_csv(const ConsistencyReport& report);

Json explain_body(const ExplanationStats& stats, const Outcome& outcome_a,
                  const Outcome& outcome_b);
std::string explain_individual_csv(const ExplanationStats& stats);
std::string explain_group_csv(const ExplanationStats& stats);

}  // namespace pbvote
