// experiments.hpp
// Run configuration, the command implementations behind the CLI, the
// reproduction scenarios and run manifests.
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sievelab/integer.hpp"
#include "sievelab/patterns.hpp"
#include "sievelab/residues.hpp"
#include "sievelab/total_sieve.hpp"

namespace sievelab {

enum class ExitStatus : int { ok = 0, validation = 1, mismatch = 2, cap_exceeded = 3 };

enum class OutputFormat { csv, json };

// How the sieving prefix is given. Exactly one source may be set:
// explicit primes+residues, a regular (alpha, kappa) with residues or a seed,
// an Eratosthenes depth, or a named preset ("figure1").
struct PrefixSpec {
    std::vector<std::int64_t> primes;
    std::vector<std::int64_t> residues;
    std::optional<std::size_t> alpha;
    std::optional<std::size_t> kappa;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> length;  // classes to draw when seeded
    std::optional<std::size_t> eratosthenes;
    std::optional<std::string> preset;
};

struct RunConfig {
    std::string command;
    PrefixSpec prefix;
    std::optional<std::size_t> depth;
    std::optional<std::string> from;
    std::optional<std::string> to;
    std::string z = "0";
    std::optional<std::size_t> n_max;
    BoundKind bound = BoundKind::gamma;
    std::string tuple;
    std::optional<std::size_t> d;
    std::optional<std::string> m;
    std::size_t g = 1;
    std::optional<std::size_t> survivors_n;
    std::string scenario;
    std::uint64_t limit = 100;
    OutputFormat format = OutputFormat::csv;
    std::uint64_t period_cap = kDefaultPeriodCap;
    std::uint64_t scan_cap = kDefaultScanCap;
};

// Missing keys keep their defaults; unknown keys are rejected (InvalidConfig).
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
nlohmann::json config_to_json(const RunConfig& config);

// Throws InvalidConfig when caps are zero or the prefix source is ambiguous.
void validate_config(const RunConfig& config);

// Builds the prefix; `needed` is the number of classes the command will use
// (seeded prefixes draw max(length, needed) classes).
SievingPrefix build_prefix(const PrefixSpec& spec, std::size_t needed = 0);

SievingPrefix figure1_prefix();

struct CommandResult {
    ExitStatus status = ExitStatus::ok;
    std::size_t rows = 0;
};

// Each command writes data rows to `out` and human-readable diagnostics to
// `log`. Library errors propagate as exceptions; run_command maps them to
// exit statuses.
CommandResult cmd_pattern(const RunConfig& config, std::ostream& out, std::ostream& log);
CommandResult cmd_total_sieve(const RunConfig& config, std::ostream& out, std::ostream& log);
CommandResult cmd_tuple(const RunConfig& config, std::ostream& out, std::ostream& log);
CommandResult cmd_reproduce(const RunConfig& config, std::ostream& out, std::ostream& log);
CommandResult cmd_primes(const RunConfig& config, std::ostream& out, std::ostream& log);

CommandResult run_command(const RunConfig& config, std::ostream& out, std::ostream& log);

struct ReproduceCheck {
    std::string name;
    bool pass = false;
    std::string expected;
    std::string actual;
};

// "figure1" or "guiding-example"; InvalidConfig otherwise.
std::vector<ReproduceCheck> reproduce_scenario(std::string_view scenario);

struct GrowthJob {
    SievingPrefix prefix;
    Integer z;
    std::size_t n_max = 0;
    ExpandOptions options;
};

// Independent growth runs spread over worker_count(); results in job order.
std::vector<GrowthSeries> run_growth_batch(std::span<const GrowthJob> jobs);

std::uint64_t fnv1a64(std::string_view data);

struct RunManifest {
    nlohmann::json config;
    std::string version;
    std::string started_at;
    std::string finished_at;
    std::string input_hash;  // fnv1a64 of the canonical config dump, hex
    std::size_t rows = 0;
    int exit_status = 0;
};

RunManifest make_manifest(const RunConfig& config, const std::string& started_at,
                          const std::string& finished_at, const CommandResult& result);
nlohmann::json manifest_json(const RunManifest& manifest);
std::string utc_timestamp();

}  // namespace sievelab
