#pragma once

// Parser for the classified-question response format:
//
//   Question 1: Is X an animal?
//   YES: dog, cat
//   Count of YES: 2
//   NO: rock
//   Count of NO: 1
//
// Items are matched to set members by label or id, ignoring case and
// surrounding quotes. Unknown items are dropped with a warning; members the
// model forgot go to the larger side (the negative side on a tie).

#include <string>
#include <vector>

#include "infoseek/oracle.hpp"

namespace infoseek {

struct GenerationParse {
    std::vector<Candidate> candidates;  // every entry has a partition
    std::vector<std::string> warnings;
};

// Throws ParseError when no question block has a YES or NO list.
GenerationParse parse_llm_generation(const std::string& text, const PossibilitySet& set,
                                     Scenario scenario = Scenario::TwentyQ);

// Inverse of the parser for well-formed partitions.
std::string render_generation_response(const std::vector<Candidate>& candidates);

// Recognizes "Is X a 'dog'?", "You may have 'Gastritis'." and similar
// phrasings naming exactly one member. Returns that member's index.
std::optional<std::size_t> detect_guess(const std::string& question_text, const PossibilitySet& set);

// Lines of a free-text list ("1. dog", "- cat", "rock"), stripped of
// numbering and bullets.
std::vector<std::string> parse_item_lines(const std::string& text);

// Extracts the question from a direct-prompting reply (the last line ending
// in '?', or the whole reply).
std::string extract_question(const std::string& reply);

}  // namespace infoseek
