#pragma once

// Open-set mode: the questioner does not know the possibility space and
// rebuilds a small candidate set from the transcript before every decision.

#include <cstddef>

#include "infoseek/llm_client.hpp"
#include "infoseek/oracle.hpp"

namespace infoseek {

// 10 for 20 questions, 5 for diagnosis and troubleshooting.
std::size_t default_open_set_size(Scenario scenario) noexcept;

// Rounds of direct prompting before lookahead starts (20 questions only).
int default_dp_warmup_rounds(Scenario scenario) noexcept;

// True when `p` agrees with every attribute answer and guess outcome in the
// history. Free-form questions carry no table information and are ignored,
// as are attributes the item does not list.
bool consistent_with(const Possibility& p, const History& history);

// Top `size` history-consistent catalog items by prior (ties by id), as a
// fresh space with uniform priors. Throws ContradictionError when nothing
// is consistent.
PossibilitySet open_set_reinitialize(Scenario scenario, const History& history,
                                     const PossibilitySpace& catalog, std::size_t size);

class OpenSetInitializer {
public:
    virtual ~OpenSetInitializer() = default;
    virtual PossibilitySet initialize(const History& history, std::size_t size) = 0;
};

class CatalogInitializer final : public OpenSetInitializer {
public:
    CatalogInitializer(SpacePtr catalog, Scenario scenario);
    PossibilitySet initialize(const History& history, std::size_t size) override;

private:
    SpacePtr catalog_;
    Scenario scenario_;
};

// Asks the model for the most likely candidates, one per line. Items carry
// no attributes, so this pairs with the model-backed oracle.
class LlmInitializer final : public OpenSetInitializer {
public:
    LlmInitializer(LlmClient& client, Scenario scenario, CallCounter* counter = nullptr);
    PossibilitySet initialize(const History& history, std::size_t size) override;

private:
    LlmClient& client_;
    Scenario scenario_;
    CallCounter* counter_;
};

}  // namespace infoseek
