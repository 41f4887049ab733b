#include "infoseek/open_set.hpp"

#include <algorithm>
#include <set>

#include "infoseek/errors.hpp"
#include "infoseek/llm_parse.hpp"

namespace infoseek {

std::size_t default_open_set_size(Scenario scenario) noexcept {
    return scenario == Scenario::TwentyQ ? 10 : 5;
}

int default_dp_warmup_rounds(Scenario scenario) noexcept {
    return scenario == Scenario::TwentyQ ? 3 : 0;
}

bool consistent_with(const Possibility& p, const History& history) {
    for (const auto& t : history.turns) {
        const bool yes = t.answer.affirmative();
        if (t.question.is_terminal_guess && t.question.guessed_id) {
            if ((*t.question.guessed_id == p.id) != yes) return false;
        } else if (t.question.attribute) {
            auto it = p.attributes.find(*t.question.attribute);
            if (it != p.attributes.end() && it->second != yes) return false;
        }
    }
    return true;
}

PossibilitySet open_set_reinitialize(Scenario, const History& history, const PossibilitySpace& catalog,
                                     std::size_t size) {
    if (size < 1) throw InputError("open-set size must be >= 1");
    std::vector<const Possibility*> pool;
    for (const auto& p : catalog.possibilities())
        if (consistent_with(p, history)) pool.push_back(&p);
    if (pool.empty()) throw ContradictionError("no catalog item is consistent with the history");
    std::stable_sort(pool.begin(), pool.end(), [](const Possibility* a, const Possibility* b) {
        if (a->prior_weight != b->prior_weight) return a->prior_weight > b->prior_weight;
        return a->id < b->id;
    });
    if (pool.size() > size) pool.resize(size);
    std::vector<Possibility> chosen;
    chosen.reserve(pool.size());
    for (const auto* p : pool) {
        chosen.push_back(*p);
        chosen.back().prior_weight = 1.0;
    }
    return PossibilitySet::full(PossibilitySpace::make(std::move(chosen)));
}

CatalogInitializer::CatalogInitializer(SpacePtr catalog, Scenario scenario)
    : catalog_(std::move(catalog)), scenario_(scenario) {
    if (!catalog_) throw InputError("CatalogInitializer needs a catalog");
}

PossibilitySet CatalogInitializer::initialize(const History& history, std::size_t size) {
    return open_set_reinitialize(scenario_, history, *catalog_, size);
}

LlmInitializer::LlmInitializer(LlmClient& client, Scenario scenario, CallCounter* counter)
    : client_(client), scenario_(scenario), counter_(counter) {}

PossibilitySet LlmInitializer::initialize(const History& history, std::size_t size) {
    if (size < 1) throw InputError("open-set size must be >= 1");
    if (counter_) counter_->add();
    const auto reply = client_.complete({{"user", render_open_set_prompt(scenario_, history, size)}});
    std::vector<Possibility> items;
    std::set<std::string> seen;
    for (auto& label : parse_item_lines(reply)) {
        if (items.size() == size) break;
        std::string key = label;
        std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
        if (!seen.insert(key).second) continue;
        // Items the transcript already ruled out by a wrong guess are dropped.
        Possibility p{key, label, {}, 1.0};
        if (!consistent_with(p, history)) continue;
        items.push_back(std::move(p));
    }
    if (items.empty()) throw ContradictionError("model proposed no usable candidates");
    return PossibilitySet::full(PossibilitySpace::make(std::move(items)));
}

}  // namespace infoseek
