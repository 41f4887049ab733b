#pragma once

// Prompt rendering from the versioned templates under assets/prompts/v1.
// Rendering is a pure function of its inputs.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "infoseek/oracle.hpp"

namespace infoseek {

struct ChatMessage {
    std::string role;
    std::string content;
    bool operator==(const ChatMessage&) const = default;
};

inline constexpr std::string_view kPromptVersion = "v1";

// Raw template text, e.g. prompt_asset("20q/generation"). Throws InputError
// for unknown keys.
const std::string& prompt_asset(std::string_view key);

// Substitutes {name} placeholders. Braces not enclosing an identifier are
// copied through; an identifier without a value throws InputError.
std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& vars);

// Member labels joined with ", ".
std::string item_list(const PossibilitySet& set);

// "Q1: ...\nA1: ..." lines, one pair per turn.
std::string render_transcript(const History& history);

// True from the turn where the templates start reminding the questioner to
// commit to a guess (Q14 for 20q and troubleshooting, Q3 for diagnosis).
bool in_final_phase(Scenario scenario, std::size_t turn_number);

std::string render_prologue(Scenario scenario, const History& history);

// Question generation and simulation prompt asking for m classified questions.
std::string render_generation_prompt(Scenario scenario, const History& history,
                                     const PossibilitySet& set, std::size_t m);

// Chat transcript for the direct-prompting questioner; closed_set controls
// whether the candidate list is shown.
std::vector<ChatMessage> render_direct_messages(Scenario scenario, const History& history,
                                                const PossibilitySet* set);

// Asks the model to sort the set's members into YES/NO lists for one question.
std::string render_classification_prompt(Scenario scenario, const History& history,
                                         const PossibilitySet& set, const Question& question);

// Chat transcript for a model playing the answerer with `target_label`.
std::vector<ChatMessage> render_answerer_messages(Scenario scenario, const std::string& target_label,
                                                  const History& history, const Question& question);

std::string render_open_set_prompt(Scenario scenario, const History& history, std::size_t size);

}  // namespace infoseek
