#include "infoseek/question.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string_view>

namespace infoseek {

Question Question::about_attribute(std::string attribute, std::string text) {
    Question q;
    q.text = std::move(text);
    q.attribute = std::move(attribute);
    return q;
}

Question Question::guess(std::string id, std::string text) {
    Question q;
    q.text = std::move(text);
    q.is_terminal_guess = true;
    q.guessed_id = std::move(id);
    return q;
}

History History::extended(const Question& q, const Answer& a) const {
    History h = *this;
    h.turns.push_back({q, a});
    return h;
}

bool History::asked_attribute(const std::string& attribute) const {
    return std::any_of(turns.begin(), turns.end(), [&](const Turn& t) {
        return t.question.attribute && *t.question.attribute == attribute;
    });
}

bool History::asked_text(const std::string& text) const {
    return std::any_of(turns.begin(), turns.end(),
                       [&](const Turn& t) { return t.question.text == text; });
}

namespace {

std::vector<std::string> words_of(const std::string& text) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : text) {
        auto uc = static_cast<unsigned char>(c);
        if (std::isalpha(uc) || c == '\'') {
            cur.push_back(static_cast<char>(std::tolower(uc)));
        } else if (!cur.empty()) {
            words.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(std::move(cur));
    return words;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

Polarity resolve_polarity(const std::string& raw_text) {
    static constexpr std::array<std::string_view, 8> kAffirmLeads = {
        "yes", "yeah", "yep", "correct", "right", "sure", "indeed", "affirmative"};
    static constexpr std::array<std::string_view, 7> kNegations = {
        "no", "not", "nope", "never", "none", "nothing", "neither"};

    const auto words = words_of(raw_text);
    if (words.empty()) return Polarity::Negative;

    if (std::find(kAffirmLeads.begin(), kAffirmLeads.end(), words.front()) != kAffirmLeads.end()) {
        return Polarity::Affirmative;
    }
    if (words.size() >= 2 && words[0] == "you" && (words[1] == "guessed" || words[1] == "are")) {
        return Polarity::Affirmative;
    }
    for (const auto& w : words) {
        if (std::find(kNegations.begin(), kNegations.end(), w) != kNegations.end()) {
            return Polarity::Negative;
        }
        if (ends_with(w, "n't")) return Polarity::Negative;
    }
    // Open-ended statements without negation ("I already vomited twice").
    return Polarity::Affirmative;
}

const char* to_string(Polarity p) noexcept {
    return p == Polarity::Affirmative ? "affirmative" : "negative";
}

}  // namespace infoseek
