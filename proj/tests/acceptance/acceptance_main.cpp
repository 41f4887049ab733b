// Exit-gate checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "infoseek/dataset.hpp"
#include "infoseek/dialogue.hpp"
#include "infoseek/errors.hpp"
#include "infoseek/llm_parse.hpp"
#include "infoseek/metrics.hpp"
#include "infoseek/prompts.hpp"
#include "infoseek/reward.hpp"
#include "infoseek/runner.hpp"
#include "infoseek/simtree.hpp"
#include "reference.hpp"

using namespace infoseek;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

SpacePtr random_space(std::mt19937_64& rng, int max_n) {
    std::uniform_int_distribution<int> size(2, max_n);
    std::uniform_real_distribution<double> weight(0.01, 5.0);
    const int n = size(rng);
    std::vector<Possibility> ps;
    for (int i = 0; i < n; ++i) ps.push_back({"p" + std::to_string(i), "p" + std::to_string(i), {}, weight(rng)});
    return PossibilitySpace::make(ps);
}

Outcome criterion1() {
    std::mt19937_64 rng(1001);
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        auto space = random_space(rng, 12);
        auto set = PossibilitySet::full(space);
        std::vector<std::size_t> a;
        std::bernoulli_distribution coin(0.5);
        for (auto i : set.members())
            if (coin(rng)) a.push_back(i);
        auto part = make_partition(set, Question{}, a);
        const double d = std::fabs(information_gain_by_definition(set, part) -
                                   information_gain(part.p_affirm, part.p_negate));
        worst = std::max(worst, d);
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && secs < 5.0, fmt("max |delta| = %.3g over 10000 partitions in %.2f s", worst, secs)};
}

Outcome criterion2() {
    RewardConfig cfg;
    bool ok = true;
    int argmax = -1, count_at_max = 0;
    double best = -1.0;
    std::vector<double> values;
    for (int i = 0; i <= 100; ++i) {
        const double pa = i / 100.0;
        const double v = scaled_reward(pa, 1.0 - pa, cfg);
        values.push_back(v);
        if (!(v >= 0.0 && v <= 1.0)) ok = false;
        if (v > best) {
            best = v;
            argmax = i;
        }
    }
    for (double v : values) count_at_max += v == best;
    ok = ok && argmax == 50 && best == 1.0 && count_at_max == 1 && values.front() == 0.0 && values.back() == 0.0;
    return {ok, fmt("argmax at pA=%.2f, max %.17g, %d grid point(s) at max, endpoints %g/%g", argmax / 100.0, best,
                    count_at_max, values.front(), values.back())};
}

Outcome criterion3() {
    RewardConfig ur;
    const double u = scaled_reward(0.75, 0.25, ur);
    const double ig = information_gain(0.75, 0.25);
    const double lts = lts_scale(1.0, 1.0);
    const double sts = sts_scale(0.5, 10.0, 0.5);
    const double pfs = pfs_scale(0.811278, 0.25, 0.5);
    const bool ok = std::fabs(u - 0.360568) <= 1e-6 && std::fabs(ig - 0.811278) <= 1e-6 && lts == 1.0 &&
                    sts == 0.5 && std::fabs(pfs - 0.405639) <= 1e-6;
    return {ok, fmt("UR=%.7f IG=%.7f LTS=%.7f STS=%.7f PFS=%.7f", u, ig, lts, sts, pfs)};
}

Outcome criterion4() {
    std::mt19937_64 rng(4004);
    double worst = 0.0;
    int max_below = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto set = PossibilitySet::full(random_space(rng, 12));
        ref::RandomSplitOracle oracle(rng());
        TreeConfig cfg;
        cfg.depth_limit = 1 + static_cast<int>(rng() % 3);
        cfg.branching = 1 + static_cast<int>(rng() % 3);
        auto tree = build_tree(oracle.random_candidate(set), set, {}, oracle, oracle, cfg);
        accumulate_rewards(tree);
        auto copy = tree;
        const double expected = propagate_expected(tree, PropagationScheme::Expected);
        const double max = propagate_expected(copy, PropagationScheme::Max);
        worst = std::max(worst, std::fabs(expected - static_cast<double>(ref::expected_by_paths(tree.root))));
        if (max < expected - 1e-12 * std::max(1.0, std::fabs(expected))) ++max_below;
    }
    return {worst <= 1e-9 && max_below == 0,
            fmt("max |r_e - path enumeration| = %.3g over 1000 trees; Max < Expected on %d", worst, max_below)};
}

// Lookahead never proposes; reaching this is a bug in the check itself.
class NoProposer final : public QuestionProposer {
public:
    std::optional<Question> propose(const History&, const PossibilitySet&, const std::vector<Question>&,
                                    Rng&) override {
        throw ContractViolation("proposer used during lookahead");
    }
};

Outcome criterion5() {
    std::mt19937_64 rng(5005);
    NoProposer no_proposer;
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto set = PossibilitySet::full(random_space(rng, 12));
        ref::RandomSplitOracle oracle(rng(), 5);
        std::vector<Candidate> cands;
        const int m = 2 + static_cast<int>(rng() % 4);
        for (int k = 0; k < m; ++k) cands.push_back(oracle.random_candidate(set));
        StrategyConfig s;
        s.depth = 1;
        s.branching = m;
        DialogueState state{{}, set, 10, Scenario::TwentyQ};
        const auto values = evaluate_candidates(state, cands, s, Oracles{oracle, oracle, no_proposer, nullptr});
        const auto uot = select_best_question(values);
        std::size_t greedy = 0;
        long double best = -1;
        for (std::size_t k = 0; k < cands.size(); ++k) {
            const long double pa = ref::set_mass(cands[k].partition->affirmative) / ref::set_mass(set);
            const long double v = ref::ur(pa);
            if (v > best + 1e-15L) {
                best = v;
                greedy = k;
            }
        }
        mismatches += uot != greedy;
    }
    return {mismatches == 0, fmt("%d of 1000 instances disagree", mismatches)};
}

Dataset common_like() { return load_dataset(fs::path(INFOSEEK_DATA_DIR) / "common-like.json"); }

RunConfig uot_config(StrategyKind kind = StrategyKind::UoT) {
    RunConfig cfg;
    cfg.strategy.kind = kind;
    cfg.strategy.depth = 3;
    cfg.strategy.branching = 3;
    cfg.strategy.reward.lambda = 0.4;
    cfg.seed = 1;
    return cfg;
}

struct Shared {
    std::optional<RunOutcome> uot;
};
Shared shared;

Outcome criterion6() {
    const auto ds = common_like();
    const auto t0 = Clock::now();
    shared.uot = run_benchmark(ds, uot_config());
    const auto& u = shared.uot->report;
    double dp_sr = 0.0, dp_mcl = 0.0;
    for (int seed = 1; seed <= 30; ++seed) {
        auto cfg = uot_config(StrategyKind::DirectRandom);
        cfg.seed = static_cast<std::uint64_t>(seed);
        const auto r = run_benchmark(ds, cfg).report;
        dp_sr += r.sr_percent / 30.0;
        dp_mcl += r.mcl / 30.0;
    }
    const double secs = seconds_since(t0);
    const double msc = u.msc.value_or(INFINITY);
    const bool ok = u.sr_percent == 100.0 && msc <= 8.0 && dp_sr < u.sr_percent && dp_mcl > u.mcl && secs < 60.0;
    return {ok, fmt("UoT SR %.2f MSC %.3f MCL %.3f; DirectRandom x30 mean SR %.2f MCL %.3f; %.1f s", u.sr_percent,
                    msc, u.mcl, dp_sr, dp_mcl, secs)};
}

Outcome criterion7() {
    const auto ds = common_like();
    if (!shared.uot) shared.uot = run_benchmark(ds, uot_config());
    const auto full = shared.uot->report;
    const auto pruned = run_benchmark(ds, uot_config(StrategyKind::PrunedUoT)).report;
    const double ratio = static_cast<double>(pruned.oracle_calls) / static_cast<double>(full.oracle_calls);
    const bool ok = ratio <= 0.60 && std::fabs(pruned.sr_percent - full.sr_percent) <= 10.0;
    return {ok, fmt("pruned calls %llu vs full %llu (%.1f%%); SR %.2f vs %.2f",
                    static_cast<unsigned long long>(pruned.oracle_calls),
                    static_cast<unsigned long long>(full.oracle_calls), 100.0 * ratio, pruned.sr_percent,
                    full.sr_percent)};
}

Outcome criterion8() {
    auto ep = [](bool success, int turns) {
        EpisodeResult r;
        r.success = success;
        r.turns_used = turns;
        r.max_turns = 10;
        if (!success) r.failure_reason = FailureReason::TurnLimit;
        return r;
    };
    const auto m = compute_metrics({ep(true, 4), ep(true, 6), ep(false, 10), ep(false, 10)});
    const auto w = welch_t_test({1, 2, 3}, {4, 5, 6});
    const bool ok = m.sr_percent == 50.0 && m.msc && *m.msc == 5.0 && m.mcl == 7.5 &&
                    std::fabs(w.t + 3.6742) <= 1e-3 && std::fabs(w.df - 4.0) <= 1e-6;
    return {ok, fmt("SR %.4f MSC %.4f MCL %.4f; t %.5f df %.7f", m.sr_percent, m.msc.value_or(NAN), m.mcl, w.t, w.df)};
}

SpacePtr labelled(const std::vector<std::string>& names) {
    std::vector<Possibility> ps;
    for (const auto& n : names) ps.push_back({n, n, {}, 1.0});
    return PossibilitySpace::make(ps);
}

Outcome criterion9() {
    const fs::path golden = INFOSEEK_GOLDEN_DIR;
    int prompt_ok = 0, prompt_total = 0;
    auto check_prompt = [&](const std::string& rendered, const char* file) {
        ++prompt_total;
        prompt_ok += rendered == slurp(golden / "prompts" / file);
    };
    auto turn = [](std::string q, std::string a) {
        Question question;
        question.text = std::move(q);
        return Turn{question, Answer{resolve_polarity(a), a}};
    };
    check_prompt(render_generation_prompt(Scenario::TwentyQ, {},
                                          PossibilitySet::full(labelled({"dog", "cat", "apple", "rock"})), 3),
                 "20q_first.txt");
    {
        History h;
        h.turns.push_back(turn("Is X an animal?", "Yes."));
        check_prompt(render_generation_prompt(Scenario::TwentyQ, h, PossibilitySet::full(labelled({"dog", "cat"})), 2),
                     "20q_asked.txt");
    }
    {
        History h;
        h.self_report = "I have had a burning stomach ache since yesterday.";
        h.turns.push_back(turn("Do you feel nauseous?", "Yes, a little."));
        h.turns.push_back(turn("Do you have a fever?", "No, I don't."));
        check_prompt(render_generation_prompt(Scenario::Medical, h,
                                              PossibilitySet::full(labelled({"Gastritis", "Enteritis"})), 2),
                     "medical_reminder.txt");
    }
    {
        History h;
        h.self_report = "My laptop will not turn on.";
        check_prompt(render_generation_prompt(
                         Scenario::Trouble, h,
                         PossibilitySet::full(labelled({"Dead battery", "Faulty charger", "Broken screen"})), 3),
                     "trouble_first.txt");
    }

    const auto expected = nlohmann::json::parse(slurp(golden / "responses/wellformed/expected.json"));
    auto space = labelled(expected["items"].get<std::vector<std::string>>());
    auto set = PossibilitySet::full(space);
    int parse_ok = 0, parse_total = 0;
    for (const auto& [file, cands] : expected["cases"].items()) {
        ++parse_total;
        const auto parsed = parse_llm_generation(slurp(golden / "responses/wellformed" / file), set);
        bool same = parsed.candidates.size() == cands.size();
        for (std::size_t k = 0; same && k < cands.size(); ++k) {
            std::vector<std::size_t> yes;
            for (const auto& id : cands[k]["yes"]) yes.push_back(space->index_of(id.get<std::string>()));
            std::sort(yes.begin(), yes.end());
            same = parsed.candidates[k].question.text == cands[k]["question"].get<std::string>() &&
                   parsed.candidates[k].partition->affirmative.members() == yes;
        }
        parse_ok += same;
    }
    int rejected = 0, malformed = 0;
    for (const auto& entry : fs::directory_iterator(golden / "responses/malformed")) {
        ++malformed;
        try {
            parse_llm_generation(slurp(entry.path()), set);
        } catch (const ParseError&) {
            ++rejected;
        }
    }
    const bool ok = prompt_ok == prompt_total && parse_ok == parse_total && rejected == malformed && malformed > 0;
    return {ok, fmt("prompts %d/%d identical; well-formed %d/%d exact; malformed %d/%d rejected", prompt_ok,
                    prompt_total, parse_ok, parse_total, rejected, malformed)};
}

Outcome criterion10() {
    const auto ds = common_like();
    const auto root = fs::temp_directory_path() / "infoseek_acceptance";
    fs::remove_all(root);
    std::string logs[2];
    for (int i = 0; i < 2; ++i) {
        auto cfg = uot_config();
        cfg.out_dir = root / ("run" + std::to_string(i));
        run_benchmark(ds, cfg);
        logs[i] = slurp(*cfg.out_dir / "episodes.jsonl");
    }
    fs::remove_all(root);
    const bool ok = !logs[0].empty() && logs[0] == logs[1];
    return {ok, fmt("episodes.jsonl %zu vs %zu bytes, %s", logs[0].size(), logs[1].size(),
                    logs[0] == logs[1] ? "identical" : "different")};
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
    };
    int failures = 0;
    for (const auto& [n, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
