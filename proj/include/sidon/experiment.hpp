#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sidon/bounds.hpp"
#include "sidon/integer_set.hpp"
#include "sidon/packing.hpp"
#include "sidon/params.hpp"
#include "sidon/pipeline.hpp"
#include "sidon/repfunc.hpp"

namespace sidon {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Process exit codes shared by every CLI subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,
    kExitVerdict = 3,
    kExitBudget = 4,
};

const char* build_id();

std::string sha256_hex(std::string_view data);

/// Reproducibility unit. Only schema_version, operation, params and options
/// enter the hash; build_id and created are annotations.
struct Manifest {
    int schema_version = kSchemaVersion;
    std::string operation;
    Params params;
    std::size_t trials = 1;
    json options = json::object();
    std::string build_id;
    std::string created;
};

const std::vector<std::string>& known_operations();

// Throws ValidationError on schema mismatch, unknown operation or bad params.
Manifest parse_manifest(const json& j);
json to_json(const Manifest& m);
std::string manifest_hash(const Manifest& m);

struct ResultBundle {
    std::string manifest_hash;
    std::map<std::string, std::string> files;  // name -> content
    std::string content_hash;
    int status = kExitOk;  // kExitVerdict when a verdict inside the run failed
};

/// Executes the manifest's operation entirely in memory. Deterministic: the
/// same manifest always yields the same files and content hash.
ResultBundle run_manifest(const Manifest& m);

// Writes the files, manifest.json and bundle.json into `dir`.
void write_bundle(const ResultBundle& bundle, const Manifest& m, const std::filesystem::path& dir);

// Re-runs the manifest and compares with bundle.json in `dir`. Throws
// AssertionFailure on a hash mismatch.
void verify_bundle(const Manifest& m, const std::filesystem::path& dir);

std::string content_hash(const std::map<std::string, std::string>& files);

// --- formats ---

std::string to_jsonl(const std::vector<IntegerSet>& sets);
// One JSON array per line; elements above N are dropped.
std::vector<IntegerSet> parse_jsonl(std::string_view text, Int N);

std::string profile_csv(const RepProfile& p, const std::string& manifest_sha);
std::string rstar_csv(const std::vector<PackingResult>& values, const std::string& manifest_sha);
std::string decay_csv(const DecayEstimate& est, const std::string& manifest_sha);
json to_json(const DecayEstimate& est);
json to_json(const GrowthEstimate& est);
json to_json(const ExponentTable& table);
json to_json(const GChain& chain);
json to_json(const Prop2Result& result);

json to_json(const RepairReport& report);
// Reads back the inputs of a report (params, config, A) and re-runs repair.
RepairReport rerun_report(const json& j);
std::string dump(const json& j);  // canonical: sorted keys, two-space indent, trailing newline

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace sidon
