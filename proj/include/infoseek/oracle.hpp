#pragma once

// The two oracle roles a questioner relies on (question generation and answer
// partitioning), plus single-question proposal used by the baseline
// strategies and the answerer side of a dialogue.

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infoseek/possibility.hpp"
#include "infoseek/question.hpp"
#include "infoseek/rng.hpp"

namespace infoseek {

enum class Scenario { TwentyQ, Medical, Trouble };

Scenario parse_scenario(std::string_view name);
std::string_view to_string(Scenario s) noexcept;
// Turn limit used by the benchmark for each scenario.
int default_max_turns(Scenario s) noexcept;

struct Candidate {
    Question question;
    // Generators that classify while generating fill this in.
    std::optional<Partition> partition;
};

// Thread-safe call tally shared by an oracle's roles.
class CallCounter {
public:
    void add(std::uint64_t n = 1) noexcept { calls_.fetch_add(n, std::memory_order_relaxed); }
    std::uint64_t value() const noexcept { return calls_.load(std::memory_order_relaxed); }

private:
    std::atomic<std::uint64_t> calls_{0};
};

class QuestionGenerator {
public:
    virtual ~QuestionGenerator() = default;
    // Up to m candidate next questions for `set` given `history`.
    virtual std::vector<Candidate> generate(const History& history, const PossibilitySet& set,
                                            std::size_t m) = 0;
};

class AnswerPartitioner {
public:
    virtual ~AnswerPartitioner() = default;
    virtual Partition partition(const History& history, const PossibilitySet& set,
                                const Question& question) = 0;
};

class QuestionProposer {
public:
    virtual ~QuestionProposer() = default;
    // One question, chosen without lookahead. Returns nullopt when nothing is left to ask.
    virtual std::optional<Question> propose(const History& history, const PossibilitySet& set,
                                            const std::vector<Question>& excluded, Rng& rng) = 0;
};

class Answerer {
public:
    virtual ~Answerer() = default;
    virtual Answer answer(const History& history, const Question& question) = 0;
};

// Bundle handed to the dialogue layer.
struct Oracles {
    QuestionGenerator& generator;
    AnswerPartitioner& partitioner;
    QuestionProposer& proposer;
    const CallCounter* counter = nullptr;

    std::uint64_t calls() const noexcept { return counter ? counter->value() : 0; }
};

// Guess phrasing per scenario, e.g. "Is X a 'dog'?".
std::string guess_text(Scenario scenario, const std::string& label);

}  // namespace infoseek
