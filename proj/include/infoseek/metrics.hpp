#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infoseek/dialogue.hpp"

namespace infoseek {

struct BenchmarkReport {
    std::string dataset;
    std::string strategy;
    double sr_percent = 0.0;
    std::optional<double> msc;  // absent without successes
    double mcl = 0.0;
    int episodes = 0;
    int successes = 0;
    long long total_rounds = 0;
    long long success_rounds = 0;
    std::uint64_t oracle_calls = 0;
};

// How failed episodes are charged in total_rounds; recorded in reports so
// logs can be re-aggregated under another convention.
inline constexpr const char* kFailureRoundsConvention =
    "failures count max_turns rounds, except contradictions which count turns used";

// Rounds an episode contributes under kFailureRoundsConvention.
int charged_rounds(const EpisodeResult& r) noexcept;

// Throws InputError on an empty list.
BenchmarkReport compute_metrics(const std::vector<EpisodeResult>& results, std::string dataset = {},
                                std::string strategy = {});

nlohmann::json report_to_json(const BenchmarkReport& report);

struct WelchResult {
    double t = 0.0;
    double df = 0.0;        // NaN when both samples have zero variance
    double p_value = 1.0;   // two-sided; 1 or 0 when both variances are zero
    bool zero_variance = false;
};

// Welch unequal-variance t-test. Each sample needs at least two values.
WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace infoseek
