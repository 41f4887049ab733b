#pragma once

// One questioner/answerer episode: strategy dispatch, set updates after
// each answer, the forced-guess rule and success bookkeeping.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "infoseek/open_set.hpp"
#include "infoseek/simtree.hpp"

namespace infoseek {

enum class StrategyKind { DirectRandom, GreedyIG, UoT, PrunedUoT, ReflexionScore };

// Accepts the CLI names dp, greedy, uot, pruned-uot, reflexion.
StrategyKind parse_strategy(std::string_view name);
std::string_view to_string(StrategyKind k) noexcept;

struct StrategyConfig {
    StrategyKind kind = StrategyKind::UoT;
    int depth = 3;
    int branching = 3;
    RewardConfig reward;
    PropagationScheme propagation = PropagationScheme::Expected;
    double reflexion_threshold = 0.7;
    int reflexion_proposals = 3;
    // Fraction of generated questions kept per expansion by PrunedUoT.
    double keep_fraction = 0.5;
    // Open-set 20 questions: rounds of direct prompting before lookahead.
    int dp_warmup_rounds = 3;

    void validate() const;
};

struct EpisodeConfig {
    Scenario scenario = Scenario::TwentyQ;
    int max_turns = 20;
    StrategyConfig strategy;
    bool open_set = false;
    std::size_t open_set_size = 0;  // 0: scenario default
    std::uint64_t seed = 0;
    std::optional<std::string> self_report;

    void validate() const;
};

enum class FailureReason { TurnLimit, Contradiction, OracleFailure };

std::string_view to_string(FailureReason r) noexcept;

struct EpisodeResult {
    bool success = false;
    int turns_used = 0;
    int max_turns = 0;
    std::string target_id;
    History history;
    std::uint64_t oracle_calls = 0;
    std::optional<FailureReason> failure_reason;
    std::string failure_detail;
};

struct DialogueState {
    History history;
    PossibilitySet possibility_set;
    int turns_remaining = 1;
    Scenario scenario = Scenario::TwentyQ;
};

// Lookahead value of each candidate under `strategy` (GreedyIG uses depth 1).
std::vector<double> evaluate_candidates(const DialogueState& state, const std::vector<Candidate>& candidates,
                                        const StrategyConfig& strategy, Oracles oracles);

// Next question. Guesses the lone member of a singleton set, and the most
// probable member on the last turn, whatever the strategy.
Question decide_action(const DialogueState& state, const StrategyConfig& strategy, Oracles oracles, Rng& rng);

// Side of the question's partition matching the answer. Throws
// ContradictionError when that side is empty.
PossibilitySet update_possibility_set(const PossibilitySet& set, const History& history, const Question& question,
                                      const Answer& answer, AnswerPartitioner& partitioner);

// Runs to a correct guess or the turn limit. `space` is the known possibility
// space in closed-set mode and the hidden catalog otherwise (in which case
// `initializer` is required). Without a target, an affirmative answer to a
// guess counts as success.
EpisodeResult run_episode(const EpisodeConfig& config, const SpacePtr& space,
                          const std::optional<std::string>& target_id, Oracles oracles, Answerer& answerer,
                          OpenSetInitializer* initializer = nullptr);

// Reads answers for a person at a terminal: y/n, or free text mapped by
// resolve_polarity.
class HumanAnswerer final : public Answerer {
public:
    HumanAnswerer(std::istream& in, std::ostream& out);
    Answer answer(const History& history, const Question& question) override;

private:
    std::istream& in_;
    std::ostream& out_;
};

}  // namespace infoseek
