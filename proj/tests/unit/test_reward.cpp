#include <doctest.h>

#include <random>

#include "infoseek/errors.hpp"
#include "infoseek/reward.hpp"
#include "reference.hpp"

using namespace infoseek;

namespace {

RewardConfig with(RewardScaling s) {
    RewardConfig c;
    c.scaling = s;
    return c;
}

}  // namespace

TEST_CASE("information gain closed form") {
    CHECK(information_gain(0.5, 0.5, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(information_gain(1.0, 0.0, 2.0) == 0.0);
    CHECK(information_gain(0.0, 1.0, 2.0) == 0.0);
    CHECK(information_gain(0.75, 0.25, 2.0) == doctest::Approx(0.811278).epsilon(1e-6));
    CHECK(information_gain(0.75, 0.25, 2.0) == doctest::Approx(static_cast<double>(ref::binary_ig(0.75L))).epsilon(1e-14));
    CHECK_THROWS_AS(information_gain(0.7, 0.7, 2.0), InputError);
    CHECK_THROWS_AS(information_gain(-0.1, 1.1, 2.0), InputError);
}

TEST_CASE("information gain by definition") {
    auto space = PossibilitySpace::make({{"a", "a", {}, 1}, {"b", "b", {}, 1}, {"c", "c", {}, 1}, {"d", "d", {}, 1}});
    auto set = PossibilitySet::full(space);
    Question q;
    q.text = "?";
    auto halves = make_partition(set, q, {0, 1});
    CHECK(information_gain_by_definition(set, halves, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    auto none = make_partition(set, q, {0, 1, 2, 3});
    CHECK(information_gain_by_definition(set, none, 2.0) == doctest::Approx(0.0).epsilon(1e-12));

    auto other = PossibilitySet::full(PossibilitySpace::make({{"x", "x", {}, 1}, {"y", "y", {}, 1}}));
    CHECK_THROWS_AS(information_gain_by_definition(other, halves, 2.0), InputError);
}

TEST_CASE("property: closed form equals definition on random partitions") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> w(0.0, 3.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        std::vector<Possibility> ps;
        std::vector<double> weights;
        std::vector<bool> mask;
        std::vector<std::size_t> a;
        for (int i = 0; i < n; ++i) {
            weights.push_back(w(rng) + 1e-6);
            ps.push_back({std::to_string(i), std::to_string(i), {}, weights.back()});
            mask.push_back(rng() % 2);
            if (mask.back()) a.push_back(i);
        }
        auto set = PossibilitySet::full(PossibilitySpace::make(ps));
        auto part = make_partition(set, Question{}, a);
        const double closed = information_gain(part.p_affirm, part.p_negate, 2.0);
        const double def = information_gain_by_definition(set, part, 2.0);
        CHECK(std::fabs(closed - def) <= 1e-9);
        CHECK(std::fabs(def - static_cast<double>(ref::info_gain_by_enumeration(weights, mask))) <= 1e-9);
    }
}

TEST_CASE("scaled reward examples") {
    const auto ur = with(RewardScaling::UR);
    CHECK(scaled_reward(0.5, 0.5, ur) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(scaled_reward(0.75, 0.25, ur) == doctest::Approx(0.360568).epsilon(1e-6));
    CHECK(scaled_reward(0.75, 0.25, ur) == doctest::Approx(static_cast<double>(ref::ur(0.75L))).epsilon(1e-13));
    for (double lambda : {0.1, 0.4, 1.0, 7.0}) {
        auto c = ur;
        c.lambda = lambda;
        CHECK(scaled_reward(1.0, 0.0, c) == 0.0);
    }
    CHECK(lts_scale(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sts_scale(0.5, 10.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    const double ig = information_gain(0.25, 0.75, 2.0);
    CHECK(pfs_scale(ig, 0.25, 0.5) == doctest::Approx(0.405639).epsilon(1e-6));
    CHECK(pfs_scale(0.811278, 0.25, 0.5) == doctest::Approx(0.405639).epsilon(1e-6));
    CHECK(scaled_reward(0.25, 0.75, with(RewardScaling::PFS)) == doctest::Approx(0.405639).epsilon(1e-6));
    // Upper branch of the piecewise form: IG / (1 - lambda) * (1 - pA).
    CHECK(pfs_scale(ig, 0.75, 0.5) == doctest::Approx(ig / 0.5 * 0.25));
    CHECK(scaled_reward(0.75, 0.25, with(RewardScaling::IG)) == doctest::Approx(0.811278).epsilon(1e-6));
}

TEST_CASE("property: UR is symmetric") {
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        CHECK(scaled_reward(p, 1.0 - p, RewardConfig{}) == doctest::Approx(scaled_reward(1.0 - p, p, RewardConfig{})).epsilon(1e-14));
    }
}

TEST_CASE("property: UR grid maximum is unique at one half") {
    int argmax = -1;
    double best = -1.0;
    int count_at_best = 0;
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        const double r = scaled_reward(p, 1.0 - p, RewardConfig{});
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
        if (r > best) {
            best = r;
            argmax = i;
            count_at_best = 1;
        } else if (r == best) {
            ++count_at_best;
        }
    }
    CHECK(argmax == 50);
    CHECK(count_at_best == 1);
    CHECK(best == 1.0);
}

TEST_CASE("property: every scaling is finite and nonnegative on the grid") {
    for (auto s : {RewardScaling::UR, RewardScaling::IG, RewardScaling::LTS, RewardScaling::STS, RewardScaling::PFS}) {
        for (int i = 0; i <= 100; ++i) {
            const double p = i / 100.0;
            const double r = scaled_reward(p, 1.0 - p, with(s));
            CHECK(std::isfinite(r));
            CHECK(r >= 0.0);
        }
    }
}

TEST_CASE("reward config validation and names") {
    RewardConfig c;
    c.lambda = 0.0;
    CHECK_THROWS_AS(c.validate(), InputError);
    c = RewardConfig{};
    c.pfs_lambda = 1.0;
    CHECK_THROWS_AS(c.validate(), InputError);
    CHECK(parse_reward_scaling("lts") == RewardScaling::LTS);
    CHECK(to_string(RewardScaling::PFS) == std::string("pfs"));
    CHECK_THROWS_AS(parse_reward_scaling("xyz"), InputError);
}
