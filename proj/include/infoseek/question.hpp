#pragma once

#include <optional>
#include <string>
#include <vector>

namespace infoseek {

struct Question {
    std::string text;
    // Set by the attribute-table oracle; absent for free-form questions.
    std::optional<std::string> attribute;
    bool is_terminal_guess = false;
    std::optional<std::string> guessed_id;

    static Question about_attribute(std::string attribute, std::string text);
    static Question guess(std::string id, std::string text);

    bool operator==(const Question&) const = default;
};

enum class Polarity { Affirmative, Negative };

struct Answer {
    Polarity polarity = Polarity::Negative;
    std::string raw_text;

    static Answer yes(std::string raw = "Yes.") { return {Polarity::Affirmative, std::move(raw)}; }
    static Answer no(std::string raw = "No.") { return {Polarity::Negative, std::move(raw)}; }

    bool affirmative() const noexcept { return polarity == Polarity::Affirmative; }
    bool operator==(const Answer&) const = default;
};

struct Turn {
    Question question;
    Answer answer;
    bool operator==(const Turn&) const = default;
};

struct History {
    std::vector<Turn> turns;
    std::optional<std::string> self_report;

    std::size_t size() const noexcept { return turns.size(); }
    bool empty() const noexcept { return turns.empty(); }

    // Copy with one more turn appended; used for simulated branches.
    History extended(const Question& q, const Answer& a) const;

    bool asked_attribute(const std::string& attribute) const;
    bool asked_text(const std::string& text) const;

    bool operator==(const History&) const = default;
};

// Maps free text ("I already vomited twice", "No, I haven't") onto a polarity.
Polarity resolve_polarity(const std::string& raw_text);

const char* to_string(Polarity p) noexcept;

}  // namespace infoseek
