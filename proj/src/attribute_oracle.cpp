#include "infoseek/attribute_oracle.hpp"

#include <algorithm>

#include "infoseek/errors.hpp"

namespace infoseek {

Scenario parse_scenario(std::string_view name) {
    if (name == "20q" || name == "twentyq") return Scenario::TwentyQ;
    if (name == "medical") return Scenario::Medical;
    if (name == "trouble") return Scenario::Trouble;
    throw InputError("unknown scenario '" + std::string(name) + "'");
}

std::string_view to_string(Scenario s) noexcept {
    switch (s) {
        case Scenario::TwentyQ: return "20q";
        case Scenario::Medical: return "medical";
        case Scenario::Trouble: return "trouble";
    }
    return "?";
}

int default_max_turns(Scenario s) noexcept {
    return s == Scenario::Medical ? 5 : 20;
}

std::string guess_text(Scenario scenario, const std::string& label) {
    switch (scenario) {
        case Scenario::TwentyQ: return "Is X a '" + label + "'?";
        case Scenario::Medical: return "You may have a '" + label + "'?";
        case Scenario::Trouble: return "Are you a '" + label + "'?";
    }
    return label;
}

std::string confirmation_text(Scenario scenario, const std::string& label) {
    switch (scenario) {
        case Scenario::TwentyQ: return "You guessed it. X is '" + label + "'.";
        case Scenario::Medical: return "You are right. I am experiencing '" + label + "'.";
        case Scenario::Trouble: return "You are right. My device has '" + label + "'.";
    }
    return "Yes.";
}

std::string attribute_question_text(const QuestionBook& book, const std::string& attribute) {
    if (auto it = book.find(attribute); it != book.end()) return it->second;
    std::string words = attribute;
    std::replace(words.begin(), words.end(), '_', ' ');
    return "Is X " + words + "?";
}

std::vector<std::string> attribute_names(const PossibilitySet& set) {
    std::set<std::string> names;
    for (auto i : set.members()) {
        for (const auto& [name, value] : (*set.space())[i].attributes) names.insert(name);
    }
    return {names.begin(), names.end()};
}

Partition attribute_partition(const PossibilitySet& set, const Question& question) {
    std::vector<std::size_t> yes;
    if (question.is_terminal_guess) {
        if (!question.guessed_id) throw InputError("terminal guess without a guessed id");
        const auto idx = set.space()->index_of(*question.guessed_id);
        if (set.contains(idx)) yes.push_back(idx);
        return make_partition(set, question, std::move(yes));
    }
    if (!question.attribute) {
        throw InputError("question '" + question.text + "' has no attribute to look up");
    }
    for (auto i : set.members()) {
        const auto& p = (*set.space())[i];
        auto it = p.attributes.find(*question.attribute);
        if (it == p.attributes.end()) {
            throw InputError("possibility '" + p.id + "' lacks attribute '" + *question.attribute + "'");
        }
        if (it->second) yes.push_back(i);
    }
    return make_partition(set, question, std::move(yes));
}

Candidate guess_candidate(const PossibilitySet& set, std::size_t member_index, Scenario scenario) {
    const auto& p = (*set.space())[member_index];
    auto q = Question::guess(p.id, guess_text(scenario, p.label));
    auto part = attribute_partition(set, q);
    return Candidate{std::move(q), std::move(part)};
}

std::vector<Candidate> guess_candidates(const PossibilitySet& set, std::size_t m, Scenario scenario) {
    std::vector<std::size_t> order = set.members();
    const auto& space = *set.space();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (space[a].prior_weight != space[b].prior_weight) return space[a].prior_weight > space[b].prior_weight;
        return space[a].id < space[b].id;
    });
    if (order.size() > m) order.resize(m);
    std::vector<Candidate> out;
    out.reserve(order.size());
    for (auto i : order) out.push_back(guess_candidate(set, i, scenario));
    return out;
}

std::vector<Candidate> attribute_generate(const History& history, const PossibilitySet& set,
                                          std::size_t m, const std::set<std::string>& asked,
                                          const AttributeGenerateOptions& options) {
    if (m == 0) throw InputError("attribute_generate needs m >= 1");
    if (set.exhausted()) throw InputError("attribute_generate on an exhausted set");

    static const QuestionBook kEmptyBook;
    const QuestionBook& book = options.book ? *options.book : kEmptyBook;

    struct Scored {
        double reward;
        Candidate candidate;
    };
    std::vector<Scored> scored;
    for (const auto& name : attribute_names(set)) {
        if (asked.count(name) || history.asked_attribute(name)) continue;
        auto q = Question::about_attribute(name, attribute_question_text(book, name));
        auto part = attribute_partition(set, q);
        if (part.degenerate()) continue;
        const double r = scaled_reward(part, options.reward);
        scored.push_back({r, Candidate{std::move(q), std::move(part)}});
    }
    if (scored.empty()) return guess_candidates(set, m, options.scenario);

    // Attribute names are already sorted, so a stable sort keeps name order on ties.
    std::stable_sort(scored.begin(), scored.end(),
                     [](const Scored& a, const Scored& b) { return a.reward > b.reward; });
    if (scored.size() > m) scored.resize(m);
    std::vector<Candidate> out;
    out.reserve(scored.size());
    for (auto& s : scored) out.push_back(std::move(s.candidate));
    return out;
}

AttributeOracle::AttributeOracle(AttributeGenerateOptions options, QuestionBook book)
    : options_(std::move(options)), book_(std::move(book)) {
    options_.reward.validate();
    options_.book = &book_;
}

std::vector<Candidate> AttributeOracle::generate(const History& history, const PossibilitySet& set,
                                                 std::size_t m) {
    counter_.add();
    return attribute_generate(history, set, m, {}, options_);
}

Partition AttributeOracle::partition(const History&, const PossibilitySet& set, const Question& question) {
    counter_.add();
    return attribute_partition(set, question);
}

std::optional<Question> AttributeOracle::propose(const History& history, const PossibilitySet& set,
                                                 const std::vector<Question>& excluded, Rng& rng) {
    counter_.add();
    auto is_excluded = [&](const std::string& name) {
        return history.asked_attribute(name) ||
               std::any_of(excluded.begin(), excluded.end(), [&](const Question& q) {
                   return q.attribute && *q.attribute == name;
               });
    };
    std::vector<std::string> open;
    for (const auto& name : attribute_names(set)) {
        if (!is_excluded(name)) open.push_back(name);
    }
    if (open.empty()) {
        if (set.exhausted()) return std::nullopt;
        const auto& p = (*set.space())[set.most_probable()];
        return Question::guess(p.id, guess_text(options_.scenario, p.label));
    }
    const auto& pick = open[rng.below(open.size())];
    return Question::about_attribute(pick, attribute_question_text(book_, pick));
}

SimulatedAnswerer::SimulatedAnswerer(SpacePtr space, std::string target_id, Scenario scenario)
    : space_(std::move(space)), target_id_(std::move(target_id)), scenario_(scenario) {
    target_index_ = space_->index_of(target_id_);
    if (target_index_ == space_->size()) throw InputError("unknown target '" + target_id_ + "'");
}

Answer SimulatedAnswerer::answer(const History&, const Question& question) {
    const auto& target = (*space_)[target_index_];
    if (question.is_terminal_guess) {
        if (question.guessed_id && *question.guessed_id == target_id_) {
            return Answer::yes(confirmation_text(scenario_, target.label));
        }
        return Answer::no();
    }
    if (!question.attribute) {
        throw OracleError("simulated answerer cannot evaluate free-form question '" + question.text + "'");
    }
    auto it = target.attributes.find(*question.attribute);
    if (it == target.attributes.end()) {
        throw OracleError("target '" + target_id_ + "' lacks attribute '" + *question.attribute + "'");
    }
    return it->second ? Answer::yes() : Answer::no();
}

}  // namespace infoseek
