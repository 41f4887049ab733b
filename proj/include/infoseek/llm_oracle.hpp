#pragma once

// Oracle roles played by a chat model: generation with classification in one
// call, standalone classification, direct single-question proposal, and the
// answerer side.

#include <map>
#include <mutex>
#include <string>

#include "infoseek/llm_client.hpp"
#include "infoseek/llm_parse.hpp"

namespace infoseek {

struct LlmOracleOptions {
    Scenario scenario = Scenario::TwentyQ;
    // Extra attempts after an unparseable response.
    int parse_retries = 2;
    // Show the candidate list to the direct-prompting proposer.
    bool closed_set_direct = true;
};

class LlmOracle final : public QuestionGenerator, public AnswerPartitioner, public QuestionProposer {
public:
    LlmOracle(LlmClient& client, LlmOracleOptions options);

    std::vector<Candidate> generate(const History& history, const PossibilitySet& set,
                                    std::size_t m) override;
    // Guesses are split locally; other questions reuse the classification
    // that came with their generation, or ask the model to classify.
    Partition partition(const History& history, const PossibilitySet& set,
                        const Question& question) override;
    std::optional<Question> propose(const History& history, const PossibilitySet& set,
                                    const std::vector<Question>& excluded, Rng& rng) override;

    const CallCounter& counter() const noexcept { return counter_; }
    CallCounter& counter() noexcept { return counter_; }
    Oracles oracles() { return Oracles{*this, *this, *this, &counter_}; }
    // Parser warnings collected so far (unknown items, omitted members...).
    std::vector<std::string> warnings() const;

private:
    std::string ask(const std::vector<ChatMessage>& messages);
    GenerationParse ask_and_parse(const std::string& prompt, const PossibilitySet& set);
    void remember(const PossibilitySet& set, const Candidate& c);

    LlmClient& client_;
    LlmOracleOptions options_;
    CallCounter counter_;
    mutable std::mutex mu_;
    std::map<std::pair<std::string, std::vector<std::size_t>>, std::vector<std::size_t>> cache_;
    std::vector<std::string> warnings_;
};

class LlmAnswerer final : public Answerer {
public:
    LlmAnswerer(LlmClient& client, Scenario scenario, std::string target_label);

    Answer answer(const History& history, const Question& question) override;

private:
    LlmClient& client_;
    Scenario scenario_;
    std::string target_label_;
};

}  // namespace infoseek
