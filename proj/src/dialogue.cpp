#include "infoseek/dialogue.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>

#include "infoseek/attribute_oracle.hpp"
#include "infoseek/errors.hpp"

namespace infoseek {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Question guess_member(const PossibilitySet& set, std::size_t index, Scenario scenario) {
    const auto& p = (*set.space())[index];
    return Question::guess(p.id, guess_text(scenario, p.label));
}

double balance_score(const Partition& p) {
    const double hi = std::max(p.p_affirm, p.p_negate);
    return hi > 0.0 ? std::min(p.p_affirm, p.p_negate) / hi : 0.0;
}

TreeConfig tree_config(const StrategyConfig& s) {
    TreeConfig cfg;
    cfg.depth_limit = s.kind == StrategyKind::GreedyIG ? 1 : s.depth;
    cfg.branching = s.branching;
    cfg.reward = s.reward;
    if (s.kind == StrategyKind::PrunedUoT) cfg.keep_fraction = s.keep_fraction;
    return cfg;
}

Question decide_lookahead(const DialogueState& state, const StrategyConfig& strategy, Oracles oracles) {
    auto candidates = oracles.generator.generate(state.history, state.possibility_set,
                                                 static_cast<std::size_t>(strategy.branching));
    if (candidates.size() > static_cast<std::size_t>(strategy.branching)) candidates.resize(strategy.branching);
    if (candidates.empty()) return guess_member(state.possibility_set, state.possibility_set.most_probable(), state.scenario);

    if (strategy.kind == StrategyKind::PrunedUoT && candidates.size() > 1) {
        // Same rule as inside the trees: keep the best-rewarded share of the
        // root candidates, in generation order.
        std::vector<double> rewards;
        for (const auto& c : candidates) {
            const auto part = c.partition ? *c.partition
                                          : oracles.partitioner.partition(state.history, state.possibility_set,
                                                                          c.question);
            rewards.push_back(scaled_reward(part, strategy.reward));
        }
        std::vector<Candidate> kept;
        for (auto i : prune_indices(rewards, strategy.keep_fraction)) kept.push_back(candidates[i]);
        candidates = std::move(kept);
    }
    const auto values = evaluate_candidates(state, candidates, strategy, oracles);
    return candidates[select_best_question(values)].question;
}

Question decide_reflexion(const DialogueState& state, const StrategyConfig& strategy, Oracles oracles, Rng& rng) {
    std::vector<Question> proposed;
    std::optional<Question> best;
    double best_score = -1.0;
    for (int k = 0; k < strategy.reflexion_proposals; ++k) {
        auto q = oracles.proposer.propose(state.history, state.possibility_set, proposed, rng);
        if (!q) break;
        const auto part = oracles.partitioner.partition(state.history, state.possibility_set, *q);
        const double s = balance_score(part);
        if (s > strategy.reflexion_threshold) return *q;
        if (s > best_score) {
            best_score = s;
            best = *q;
        }
        proposed.push_back(std::move(*q));
    }
    if (best) return *best;
    return guess_member(state.possibility_set, state.possibility_set.most_probable(), state.scenario);
}

bool guess_hits(const Question& q, const Possibility& target) {
    if (!q.is_terminal_guess || !q.guessed_id) return false;
    return *q.guessed_id == target.id || lower(*q.guessed_id) == lower(target.label);
}

}  // namespace

StrategyKind parse_strategy(std::string_view name) {
    const auto n = lower(std::string(name));
    if (n == "dp" || n == "direct" || n == "direct-random") return StrategyKind::DirectRandom;
    if (n == "greedy" || n == "greedy-ig") return StrategyKind::GreedyIG;
    if (n == "uot") return StrategyKind::UoT;
    if (n == "pruned-uot" || n == "pruned") return StrategyKind::PrunedUoT;
    if (n == "reflexion") return StrategyKind::ReflexionScore;
    throw InputError("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(StrategyKind k) noexcept {
    switch (k) {
        case StrategyKind::DirectRandom: return "dp";
        case StrategyKind::GreedyIG: return "greedy";
        case StrategyKind::UoT: return "uot";
        case StrategyKind::PrunedUoT: return "pruned-uot";
        case StrategyKind::ReflexionScore: return "reflexion";
    }
    return "?";
}

std::string_view to_string(FailureReason r) noexcept {
    switch (r) {
        case FailureReason::TurnLimit: return "turn_limit";
        case FailureReason::Contradiction: return "contradiction";
        case FailureReason::OracleFailure: return "oracle_failure";
    }
    return "?";
}

void StrategyConfig::validate() const {
    if (depth < 1) throw InputError("depth must be >= 1");
    if (branching < 1) throw InputError("branching must be >= 1");
    if (!(reflexion_threshold >= 0.0 && reflexion_threshold <= 1.0))
        throw InputError("reflexion threshold must be in [0, 1]");
    if (reflexion_proposals < 1) throw InputError("reflexion proposals must be >= 1");
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) throw InputError("keep fraction must be in (0, 1]");
    if (dp_warmup_rounds < 0) throw InputError("dp warm-up rounds must be >= 0");
    reward.validate();
}

void EpisodeConfig::validate() const {
    if (max_turns < 1) throw InputError("max_turns must be >= 1");
    strategy.validate();
}

std::vector<double> evaluate_candidates(const DialogueState& state, const std::vector<Candidate>& candidates,
                                        const StrategyConfig& strategy, Oracles oracles) {
    const auto cfg = tree_config(strategy);
    std::vector<double> values;
    values.reserve(candidates.size());
    for (const auto& c : candidates) {
        auto tree = build_tree(c, state.possibility_set, state.history, oracles.generator, oracles.partitioner, cfg);
        accumulate_rewards(tree);
        values.push_back(propagate_expected(tree, strategy.propagation));
    }
    return values;
}

Question decide_action(const DialogueState& state, const StrategyConfig& strategy, Oracles oracles, Rng& rng) {
    const auto& set = state.possibility_set;
    if (state.turns_remaining < 1) throw InputError("decide_action with no turns remaining");
    if (set.exhausted()) throw InputError("decide_action on an exhausted set");
    if (set.size() == 1) return guess_member(set, set.members().front(), state.scenario);
    if (state.turns_remaining == 1) return guess_member(set, set.most_probable(), state.scenario);

    switch (strategy.kind) {
        case StrategyKind::DirectRandom: {
            auto q = oracles.proposer.propose(state.history, set, {}, rng);
            return q ? *q : guess_member(set, set.most_probable(), state.scenario);
        }
        case StrategyKind::GreedyIG:
        case StrategyKind::UoT:
        case StrategyKind::PrunedUoT:
            return decide_lookahead(state, strategy, oracles);
        case StrategyKind::ReflexionScore:
            return decide_reflexion(state, strategy, oracles, rng);
    }
    throw InputError("unhandled strategy");
}

PossibilitySet update_possibility_set(const PossibilitySet& set, const History& history, const Question& question,
                                      const Answer& answer, AnswerPartitioner& partitioner) {
    const auto part = partitioner.partition(history, set, question);
    validate_partition(set, part);
    const auto& side = part.side(answer.polarity);
    if (side.exhausted() || side.mass() <= 0.0)
        throw ContradictionError("answer '" + answer.raw_text + "' to '" + question.text +
                                 "' leaves no consistent possibility");
    return side;
}

EpisodeResult run_episode(const EpisodeConfig& config, const SpacePtr& space,
                          const std::optional<std::string>& target_id, Oracles oracles, Answerer& answerer,
                          OpenSetInitializer* initializer) {
    config.validate();
    if (!space) throw InputError("run_episode needs a possibility space");
    if (config.open_set && !initializer) throw InputError("open-set episodes need an initializer");
    const Possibility* target = nullptr;
    if (target_id) {
        const auto idx = space->index_of(*target_id);
        if (idx == space->size()) throw InputError("unknown target '" + *target_id + "'");
        target = &(*space)[idx];
    }

    EpisodeResult result;
    result.max_turns = config.max_turns;
    result.target_id = target_id.value_or("");
    result.history.self_report = config.self_report;
    const auto calls_at_start = oracles.calls();
    const std::size_t set_size = config.open_set_size ? config.open_set_size : default_open_set_size(config.scenario);

    StrategyConfig warmup = config.strategy;
    warmup.kind = StrategyKind::DirectRandom;
    const int warmup_rounds =
        config.open_set && config.scenario == Scenario::TwentyQ ? config.strategy.dp_warmup_rounds : 0;

    Rng rng(config.seed);
    PossibilitySet set = config.open_set ? PossibilitySet{} : PossibilitySet::full(space);
    auto finish = [&](std::optional<FailureReason> reason, std::string detail = {}) {
        result.failure_reason = reason;
        result.failure_detail = std::move(detail);
        result.oracle_calls = oracles.calls() - calls_at_start;
        return result;
    };

    for (int turn = 1; turn <= config.max_turns; ++turn) {
        Question q;
        try {
            if (config.open_set) set = initializer->initialize(result.history, set_size);
            const DialogueState state{result.history, set, config.max_turns - turn + 1, config.scenario};
            q = decide_action(state, turn <= warmup_rounds ? warmup : config.strategy, oracles, rng);
        } catch (const ContradictionError& e) {
            return finish(FailureReason::Contradiction, e.what());
        } catch (const OracleError& e) {
            return finish(FailureReason::OracleFailure, e.what());
        }

        Answer a;
        try {
            a = answerer.answer(result.history, q);
        } catch (const OracleError& e) {
            return finish(FailureReason::OracleFailure, e.what());
        }
        const History before = result.history;
        result.history = result.history.extended(q, a);
        result.turns_used = turn;

        if (q.is_terminal_guess && (target ? guess_hits(q, *target) : a.affirmative())) {
            result.success = true;
            return finish(std::nullopt);
        }
        if (!config.open_set) {
            try {
                set = update_possibility_set(set, before, q, a, oracles.partitioner);
            } catch (const ContradictionError& e) {
                return finish(FailureReason::Contradiction, e.what());
            } catch (const OracleError& e) {
                return finish(FailureReason::OracleFailure, e.what());
            }
        }
    }
    return finish(FailureReason::TurnLimit);
}

HumanAnswerer::HumanAnswerer(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

Answer HumanAnswerer::answer(const History& history, const Question& question) {
    out_ << "Q" << history.size() + 1 << ": " << question.text << "\n> " << std::flush;
    std::string line;
    if (!std::getline(in_, line)) throw OracleError("input closed");
    const auto t = lower(line);
    if (t == "y" || t == "yes") return Answer::yes(line);
    if (t == "n" || t == "no") return Answer::no(line);
    return Answer{resolve_polarity(line), line};
}

}  // namespace infoseek
