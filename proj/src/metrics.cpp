#include "infoseek/metrics.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "infoseek/errors.hpp"

namespace infoseek {

int charged_rounds(const EpisodeResult& r) noexcept {
    if (r.success || r.failure_reason == FailureReason::Contradiction) return r.turns_used;
    return std::max(r.max_turns, r.turns_used);
}

BenchmarkReport compute_metrics(const std::vector<EpisodeResult>& results, std::string dataset,
                                std::string strategy) {
    if (results.empty()) throw InputError("compute_metrics needs at least one episode");
    BenchmarkReport rep;
    rep.dataset = std::move(dataset);
    rep.strategy = std::move(strategy);
    rep.episodes = static_cast<int>(results.size());
    for (const auto& r : results) {
        const int rounds = charged_rounds(r);
        rep.total_rounds += rounds;
        rep.oracle_calls += r.oracle_calls;
        if (r.success) {
            ++rep.successes;
            rep.success_rounds += rounds;
        }
    }
    rep.sr_percent = 100.0 * rep.successes / rep.episodes;
    if (rep.successes > 0) rep.msc = static_cast<double>(rep.success_rounds) / rep.successes;
    rep.mcl = static_cast<double>(rep.total_rounds) / rep.episodes;
    return rep;
}

nlohmann::json report_to_json(const BenchmarkReport& r) {
    nlohmann::json j = {{"dataset", r.dataset},
                        {"strategy", r.strategy},
                        {"sr_percent", r.sr_percent},
                        {"msc", r.msc ? nlohmann::json(*r.msc) : nlohmann::json(nullptr)},
                        {"mcl", r.mcl},
                        {"episodes", r.episodes},
                        {"successes", r.successes},
                        {"total_rounds", r.total_rounds},
                        {"success_rounds", r.success_rounds},
                        {"oracle_calls", r.oracle_calls},
                        {"failure_rounds", kFailureRoundsConvention}};
    return j;
}

WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) throw InputError("welch_t_test needs at least two values per sample");
    auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
    auto var = [](const std::vector<double>& v, double m) {
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return s / (v.size() - 1);
    };
    const double ma = mean(a), mb = mean(b);
    const double va = var(a, ma) / a.size(), vb = var(b, mb) / b.size();
    const double se2 = va + vb;

    WelchResult res;
    if (se2 == 0.0) {
        res.zero_variance = true;
        res.df = std::numeric_limits<double>::quiet_NaN();
        if (ma == mb) {
            res.t = 0.0;
            res.p_value = 1.0;
        } else {
            res.t = ma < mb ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
            res.p_value = 0.0;
        }
        return res;
    }
    res.t = (ma - mb) / std::sqrt(se2);
    res.df = se2 * se2 / (va * va / (a.size() - 1) + vb * vb / (b.size() - 1));
    boost::math::students_t dist(res.df);
    res.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(res.t)));
    return res;
}

}  // namespace infoseek
