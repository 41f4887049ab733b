#pragma once

// Deterministic oracle backed by a boolean attribute table: every
// possibility carries a truth value for every attribute, so partitions are
// exact table lookups and question generation ranks attributes by reward.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "infoseek/oracle.hpp"
#include "infoseek/reward.hpp"

namespace infoseek {

// Attribute name -> question text. Attributes without an entry get
// "Is X <name with spaces>?".
using QuestionBook = std::map<std::string, std::string>;

std::string attribute_question_text(const QuestionBook& book, const std::string& attribute);

// Attribute names carried by the set's members, sorted.
std::vector<std::string> attribute_names(const PossibilitySet& set);

// Affirmative = members whose attribute is true. Throws InputError naming
// the first member that lacks the attribute.
Partition attribute_partition(const PossibilitySet& set, const Question& question);

struct AttributeGenerateOptions {
    RewardConfig reward;
    Scenario scenario = Scenario::TwentyQ;
    const QuestionBook* book = nullptr;
};

// Top-m unasked attributes by scaled reward (ties to attribute name order).
// Attributes that do not split the set are skipped. With nothing left to
// split on, returns terminal guesses over the most probable members.
std::vector<Candidate> attribute_generate(const History& history, const PossibilitySet& set,
                                          std::size_t m, const std::set<std::string>& asked,
                                          const AttributeGenerateOptions& options);

// Terminal guesses for the m most probable members (ties by id).
std::vector<Candidate> guess_candidates(const PossibilitySet& set, std::size_t m, Scenario scenario);

// Guess for one member, partitioned {member} vs rest.
Candidate guess_candidate(const PossibilitySet& set, std::size_t member_index, Scenario scenario);

class AttributeOracle final : public QuestionGenerator,
                              public AnswerPartitioner,
                              public QuestionProposer {
public:
    explicit AttributeOracle(AttributeGenerateOptions options, QuestionBook book = {});

    std::vector<Candidate> generate(const History& history, const PossibilitySet& set,
                                    std::size_t m) override;
    Partition partition(const History& history, const PossibilitySet& set,
                        const Question& question) override;
    // Uniformly random unasked attribute, or a guess at the most probable
    // member once every attribute has been asked.
    std::optional<Question> propose(const History& history, const PossibilitySet& set,
                                    const std::vector<Question>& excluded, Rng& rng) override;

    const CallCounter& counter() const noexcept { return counter_; }
    Oracles oracles() { return Oracles{*this, *this, *this, &counter_}; }

private:
    AttributeGenerateOptions options_;
    QuestionBook book_;
    CallCounter counter_;
};

// Answers from the hidden target's attribute row.
class SimulatedAnswerer final : public Answerer {
public:
    SimulatedAnswerer(SpacePtr space, std::string target_id, Scenario scenario);

    Answer answer(const History& history, const Question& question) override;

private:
    SpacePtr space_;
    std::string target_id_;
    std::size_t target_index_;
    Scenario scenario_;
};

// Confirmation line an answerer gives on a correct guess.
std::string confirmation_text(Scenario scenario, const std::string& label);

}  // namespace infoseek
