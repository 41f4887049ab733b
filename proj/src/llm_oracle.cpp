#include "infoseek/llm_oracle.hpp"

#include <algorithm>

#include "infoseek/errors.hpp"

namespace infoseek {

LlmOracle::LlmOracle(LlmClient& client, LlmOracleOptions options)
    : client_(client), options_(options) {
    if (options_.parse_retries < 0) throw InputError("parse_retries must be >= 0");
}

std::string LlmOracle::ask(const std::vector<ChatMessage>& messages) {
    counter_.add();
    return client_.complete(messages);
}

GenerationParse LlmOracle::ask_and_parse(const std::string& prompt, const PossibilitySet& set) {
    for (int attempt = 0;; ++attempt) {
        const auto reply = ask({{"user", prompt}});
        try {
            auto parsed = parse_llm_generation(reply, set, options_.scenario);
            std::lock_guard lock(mu_);
            warnings_.insert(warnings_.end(), parsed.warnings.begin(), parsed.warnings.end());
            return parsed;
        } catch (const ParseError& e) {
            if (attempt >= options_.parse_retries)
                throw OracleError(std::string(e.what()) + " after " + std::to_string(attempt + 1) + " attempt(s)");
        }
    }
}

void LlmOracle::remember(const PossibilitySet& set, const Candidate& c) {
    if (!c.partition) return;
    std::lock_guard lock(mu_);
    cache_[{c.question.text, set.members()}] = c.partition->affirmative.members();
}

std::vector<Candidate> LlmOracle::generate(const History& history, const PossibilitySet& set, std::size_t m) {
    auto parsed = ask_and_parse(render_generation_prompt(options_.scenario, history, set, m), set);
    auto& out = parsed.candidates;
    if (out.size() > m) out.resize(m);
    for (const auto& c : out) remember(set, c);
    return std::move(out);
}

Partition LlmOracle::partition(const History& history, const PossibilitySet& set, const Question& question) {
    if (question.is_terminal_guess && question.guessed_id) {
        const auto idx = set.space()->index_of(*question.guessed_id);
        std::vector<std::size_t> affirm;
        if (set.contains(idx)) affirm.push_back(idx);
        return make_partition(set, question, std::move(affirm));
    }
    {
        std::lock_guard lock(mu_);
        auto it = cache_.find({question.text, set.members()});
        if (it != cache_.end()) return make_partition(set, question, it->second);
    }
    auto parsed = ask_and_parse(render_classification_prompt(options_.scenario, history, set, question), set);
    auto affirm = parsed.candidates.front().partition->affirmative.members();
    Candidate c{question, make_partition(set, question, affirm)};
    remember(set, c);
    return *c.partition;
}

std::optional<Question> LlmOracle::propose(const History& history, const PossibilitySet& set,
                                           const std::vector<Question>& excluded, Rng&) {
    const auto messages = render_direct_messages(options_.scenario, history,
                                                 options_.closed_set_direct ? &set : nullptr);
    // A repeated proposal is retried once; the model is not deterministic.
    Question q;
    for (int attempt = 0; attempt < 2; ++attempt) {
        q = Question{};
        q.text = extract_question(ask(messages));
        if (q.text.empty()) continue;
        if (auto g = detect_guess(q.text, set)) {
            q.is_terminal_guess = true;
            q.guessed_id = (*set.space())[*g].id;
        }
        const bool repeated = std::any_of(excluded.begin(), excluded.end(),
                                          [&](const Question& e) { return e.text == q.text; });
        if (!repeated) break;
    }
    if (q.text.empty()) return std::nullopt;
    return q;
}

std::vector<std::string> LlmOracle::warnings() const {
    std::lock_guard lock(mu_);
    return warnings_;
}

LlmAnswerer::LlmAnswerer(LlmClient& client, Scenario scenario, std::string target_label)
    : client_(client), scenario_(scenario), target_label_(std::move(target_label)) {}

Answer LlmAnswerer::answer(const History& history, const Question& question) {
    auto raw = client_.complete(render_answerer_messages(scenario_, target_label_, history, question));
    return Answer{resolve_polarity(raw), std::move(raw)};
}

}  // namespace infoseek
