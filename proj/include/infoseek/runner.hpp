#pragma once

// Batch benchmark execution: one episode per dataset case on a worker pool,
// streamed to JSONL in case order, plus the aggregate report.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infoseek/dataset.hpp"
#include "infoseek/llm_client.hpp"
#include "infoseek/metrics.hpp"

namespace infoseek {

enum class OracleMode { Attribute, Llm };

OracleMode parse_oracle_mode(std::string_view name);

struct RunConfig {
    StrategyConfig strategy;
    bool open_set = false;
    std::size_t open_set_size = 0;  // 0: scenario default
    std::uint64_t seed = 0;
    std::size_t max_cases = 0;      // 0: every case; otherwise a seeded sample
    std::optional<int> max_turns;   // overrides the dataset's limit
    int workers = 1;
    OracleMode oracle = OracleMode::Attribute;
    OracleEndpointConfig endpoint;
    std::shared_ptr<HttpTransport> transport;  // tests inject a stub here
    std::optional<std::filesystem::path> out_dir;

    void validate() const;
};

struct RunOutcome {
    BenchmarkReport report;
    std::vector<EpisodeResult> results;
    std::vector<std::string> records;  // JSONL lines, case order
};

// Indices of the cases a run visits, ascending.
std::vector<std::size_t> select_cases(std::size_t case_count, std::size_t max_cases, std::uint64_t seed);

// Seed for the episode of case `case_index`.
std::uint64_t episode_seed(std::uint64_t run_seed, std::size_t case_index) noexcept;

// Episode failures are recorded on the result and never abort the batch.
// With out_dir set, writes episodes.jsonl, report.json and report.csv there.
RunOutcome run_benchmark(const Dataset& dataset, const RunConfig& config);

nlohmann::json episode_record_json(const EpisodeResult& result, std::size_t case_index, std::string_view strategy,
                                   std::uint64_t run_seed, std::uint64_t episode_seed);

// Throws LoadError naming the offending field.
void validate_episode_record(const nlohmann::json& record);

std::vector<nlohmann::json> read_episode_log(const std::filesystem::path& path);

// Per-run values of `metric` ("sr", "msc", "mcl") from log records, one per
// distinct run seed. A log with a single run falls back to per-episode
// values (success as 0/100 for "sr", charged rounds otherwise).
std::vector<double> metric_samples(const std::vector<nlohmann::json>& records, std::string_view metric);

// One value of `metric` over all records. Throws InputError when it is
// undefined (no records, or "msc" without successes).
double aggregate_metric(const std::vector<nlohmann::json>& records, std::string_view metric);

std::string report_csv(const BenchmarkReport& report);

}  // namespace infoseek
