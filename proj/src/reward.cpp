#include "infoseek/reward.hpp"

#include <cmath>

#include "infoseek/errors.hpp"

namespace infoseek {

void RewardConfig::validate() const {
    if (!(lambda > 0.0)) throw InputError("reward lambda must be positive");
    if (!(k > 0.0)) throw InputError("LTS k must be positive");
    if (!(tau > 0.0)) throw InputError("STS tau must be positive");
    if (!(theta >= 0.0 && theta <= 1.0)) throw InputError("STS theta must lie in [0,1]");
    if (!(pfs_lambda > 0.0 && pfs_lambda < 1.0)) throw InputError("PFS lambda must lie in (0,1)");
    if (!(log_base > 1.0)) throw InputError("log base must exceed 1");
}

namespace {

void check_probabilities(double pa, double pn) {
    if (!(pa >= 0.0 && pa <= 1.0 && pn >= 0.0 && pn <= 1.0) || std::abs(pa + pn - 1.0) > 1e-12) {
        throw InputError("answer probabilities must lie in [0,1] and sum to one");
    }
}

double plogp(double p, double inv_log_base) {
    return p > 0.0 ? p * std::log(p) * inv_log_base : 0.0;
}

}  // namespace

double information_gain(double p_affirm, double p_negate, double log_base) {
    check_probabilities(p_affirm, p_negate);
    if (!(log_base > 1.0)) throw InputError("log base must exceed 1");
    const double inv = 1.0 / std::log(log_base);
    const double ig = -plogp(p_affirm, inv) - plogp(p_negate, inv);
    return ig > 0.0 ? ig : 0.0;
}

double information_gain_by_definition(const PossibilitySet& parent, const Partition& partition,
                                      double log_base) {
    validate_partition(parent, partition);
    double ig = entropy(parent, log_base);
    if (!partition.affirmative.exhausted() && partition.affirmative.mass() > 0.0) {
        ig -= partition.p_affirm * entropy(partition.affirmative, log_base);
    }
    if (!partition.negative.exhausted() && partition.negative.mass() > 0.0) {
        ig -= partition.p_negate * entropy(partition.negative, log_base);
    }
    return ig;
}

double uncertainty_reward(double p_affirm, double p_negate, double lambda, double log_base) {
    if (!(lambda > 0.0)) throw InputError("reward lambda must be positive");
    const double ig = information_gain(p_affirm, p_negate, log_base);
    return ig / (1.0 + std::abs(p_affirm - p_negate) / lambda);
}

double lts_scale(double ig, double k) {
    return std::log1p(k * ig) / std::log1p(k);
}

double sts_scale(double ig, double tau, double theta) {
    return 1.0 / (1.0 + std::exp(-tau * (ig - theta)));
}

double pfs_scale(double ig, double p_affirm, double lambda) {
    if (p_affirm <= lambda) return ig / lambda * p_affirm;
    return ig / (1.0 - lambda) * (1.0 - p_affirm);
}

double scaled_reward(double p_affirm, double p_negate, const RewardConfig& config) {
    switch (config.scaling) {
        case RewardScaling::UR:
            return uncertainty_reward(p_affirm, p_negate, config.lambda, config.log_base);
        case RewardScaling::IG:
            return information_gain(p_affirm, p_negate, config.log_base);
        case RewardScaling::LTS:
            return lts_scale(information_gain(p_affirm, p_negate, config.log_base), config.k);
        case RewardScaling::STS:
            return sts_scale(information_gain(p_affirm, p_negate, config.log_base), config.tau,
                             config.theta);
        case RewardScaling::PFS:
            return pfs_scale(information_gain(p_affirm, p_negate, config.log_base), p_affirm,
                             config.pfs_lambda);
    }
    throw InputError("unknown reward scaling");
}

RewardScaling parse_reward_scaling(std::string_view name) {
    if (name == "ur") return RewardScaling::UR;
    if (name == "ig") return RewardScaling::IG;
    if (name == "lts") return RewardScaling::LTS;
    if (name == "sts") return RewardScaling::STS;
    if (name == "pfs") return RewardScaling::PFS;
    throw InputError("unknown reward scaling '" + std::string(name) + "'");
}

std::string_view to_string(RewardScaling s) noexcept {
    switch (s) {
        case RewardScaling::UR: return "ur";
        case RewardScaling::IG: return "ig";
        case RewardScaling::LTS: return "lts";
        case RewardScaling::STS: return "sts";
        case RewardScaling::PFS: return "pfs";
    }
    return "?";
}

}  // namespace infoseek
