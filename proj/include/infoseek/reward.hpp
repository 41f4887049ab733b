#pragma once

#include <string>
#include <string_view>

#include "infoseek/possibility.hpp"

namespace infoseek {

enum class RewardScaling {
    UR,   // uncertainty-based reward: IG / (1 + |pA - pN| / lambda)
    IG,   // raw information gain
    LTS,  // logarithmic transformation
    STS,  // sigmoid transformation
    PFS,  // piecewise in pA
};

struct RewardConfig {
    RewardScaling scaling = RewardScaling::UR;
    double lambda = 0.4;
    double k = 1.0;
    double tau = 10.0;
    double theta = 0.5;
    double pfs_lambda = 0.5;
    double log_base = kDefaultLogBase;

    // Throws InputError on out-of-range parameters.
    void validate() const;
};

// Closed form of the expected entropy reduction of a binary answer:
// -pA log pA - pN log pN, with 0 log 0 = 0.
double information_gain(double p_affirm, double p_negate, double log_base = kDefaultLogBase);

// The same quantity computed the long way, as the parent entropy minus the
// probability-weighted entropies of the two sides.
double information_gain_by_definition(const PossibilitySet& parent, const Partition& partition,
                                      double log_base = kDefaultLogBase);

double uncertainty_reward(double p_affirm, double p_negate, double lambda,
                          double log_base = kDefaultLogBase);
double lts_scale(double ig, double k);
double sts_scale(double ig, double tau, double theta);
double pfs_scale(double ig, double p_affirm, double lambda);

double scaled_reward(double p_affirm, double p_negate, const RewardConfig& config);
inline double scaled_reward(const Partition& p, const RewardConfig& config) {
    return scaled_reward(p.p_affirm, p.p_negate, config);
}

RewardScaling parse_reward_scaling(std::string_view name);
std::string_view to_string(RewardScaling s) noexcept;

}  // namespace infoseek
