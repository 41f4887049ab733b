#include "infoseek/possibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "infoseek/errors.hpp"

namespace infoseek {

PossibilitySpace::PossibilitySpace(std::vector<Possibility> possibilities)
    : possibilities_(std::move(possibilities)) {
    if (possibilities_.empty()) throw InputError("possibility space must not be empty");
    for (std::size_t i = 0; i < possibilities_.size(); ++i) {
        const auto& p = possibilities_[i];
        if (!(p.prior_weight >= 0.0) || !std::isfinite(p.prior_weight)) {
            throw InputError("possibility '" + p.id + "' has a negative or non-finite prior weight");
        }
        if (!by_id_.emplace(p.id, i).second) {
            throw InputError("duplicate possibility id '" + p.id + "'");
        }
        total_weight_ += p.prior_weight;
    }
    if (!(total_weight_ > 0.0)) throw InputError("possibility space has zero total weight");
}

std::shared_ptr<const PossibilitySpace> PossibilitySpace::make(std::vector<Possibility> possibilities) {
    return std::make_shared<const PossibilitySpace>(std::move(possibilities));
}

std::size_t PossibilitySpace::index_of(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? size() : it->second;
}

PossibilitySet::PossibilitySet(SpacePtr space, std::vector<std::size_t> members)
    : space_(std::move(space)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (auto i : members_) {
        if (i >= space_->size()) throw InputError("member index " + std::to_string(i) + " outside the space");
        mass_ += (*space_)[i].prior_weight;
    }
}

PossibilitySet PossibilitySet::full(SpacePtr space) {
    std::vector<std::size_t> all(space->size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return PossibilitySet(std::move(space), std::move(all));
}

PossibilitySet PossibilitySet::subset(SpacePtr space, std::vector<std::size_t> members) {
    return PossibilitySet(std::move(space), std::move(members));
}

bool PossibilitySet::contains(std::size_t index) const {
    return std::binary_search(members_.begin(), members_.end(), index);
}

double PossibilitySet::probability(std::size_t k) const {
    if (exhausted() || !(mass_ > 0.0)) throw ContractViolation("probability of an exhausted possibility set");
    return (*space_)[members_.at(k)].prior_weight / mass_;
}

std::vector<double> PossibilitySet::probabilities() const {
    std::vector<double> out;
    out.reserve(members_.size());
    for (std::size_t k = 0; k < members_.size(); ++k) out.push_back(probability(k));
    return out;
}

std::vector<std::size_t> PossibilitySet::difference(std::span<const std::size_t> other) const {
    std::vector<std::size_t> sorted(other.begin(), other.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> out;
    std::set_difference(members_.begin(), members_.end(), sorted.begin(), sorted.end(),
                        std::back_inserter(out));
    return out;
}

std::size_t PossibilitySet::most_probable() const {
    if (exhausted()) throw ContractViolation("most_probable of an exhausted possibility set");
    std::size_t best = members_.front();
    for (auto i : members_) {
        const auto& cand = (*space_)[i];
        const auto& cur = (*space_)[best];
        if (cand.prior_weight > cur.prior_weight ||
            (cand.prior_weight == cur.prior_weight && cand.id < cur.id)) {
            best = i;
        }
    }
    return best;
}

bool PossibilitySet::operator==(const PossibilitySet& other) const {
    return space_ == other.space_ && members_ == other.members_;
}

PossibilitySet condition(SpacePtr space, std::vector<std::size_t> members) {
    if (members.empty()) throw ContradictionError("conditioning on an empty member set");
    auto set = PossibilitySet::subset(std::move(space), std::move(members));
    if (!(set.mass() > 0.0)) throw ContradictionError("conditioning on a zero-mass member set");
    return set;
}

double entropy(std::span<const double> probabilities, double log_base) {
    if (!(log_base > 1.0)) throw InputError("log base must exceed 1");
    const double inv_log_base = 1.0 / std::log(log_base);
    double h = 0.0;
    for (double p : probabilities) {
        if (p > 0.0) h -= p * std::log(p) * inv_log_base;
    }
    return h > 0.0 ? h : 0.0;
}

double entropy(const PossibilitySet& set, double log_base) {
    if (set.exhausted()) throw ContractViolation("entropy of an exhausted possibility set");
    const auto probs = set.probabilities();
    return entropy(std::span<const double>(probs), log_base);
}

SplitProbabilities split_probabilities(const PossibilitySet& parent,
                                       std::span<const std::size_t> affirmative) {
    if (!(parent.mass() > 0.0)) throw ContractViolation("split of an exhausted possibility set");
    std::vector<std::size_t> sorted(affirmative.begin(), affirmative.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    double mass = 0.0;
    for (auto i : sorted) {
        if (!parent.contains(i)) {
            throw InputError("affirmative side names non-member index " + std::to_string(i));
        }
        mass += (*parent.space())[i].prior_weight;
    }
    SplitProbabilities s;
    s.affirm = std::clamp(mass / parent.mass(), 0.0, 1.0);
    s.negate = 1.0 - s.affirm;
    return s;
}

Partition make_partition(const PossibilitySet& parent, Question question,
                         std::vector<std::size_t> affirmative) {
    const auto split = split_probabilities(parent, affirmative);
    Partition p;
    p.question = std::move(question);
    p.negative = PossibilitySet::subset(parent.space(), parent.difference(affirmative));
    p.affirmative = PossibilitySet::subset(parent.space(), std::move(affirmative));
    p.p_affirm = split.affirm;
    p.p_negate = split.negate;
    return p;
}

void validate_partition(const PossibilitySet& parent, const Partition& partition) {
    if (partition.affirmative.space() && partition.affirmative.space() != parent.space()) {
        throw InputError("partition built over a different possibility space");
    }
    const auto& a = partition.affirmative.members();
    const auto& n = partition.negative.members();
    std::vector<std::size_t> both;
    std::set_intersection(a.begin(), a.end(), n.begin(), n.end(), std::back_inserter(both));
    if (!both.empty()) throw InputError("partition sides overlap");
    std::vector<std::size_t> uni;
    std::set_union(a.begin(), a.end(), n.begin(), n.end(), std::back_inserter(uni));
    if (uni != parent.members()) throw InputError("partition sides do not cover the parent set");
    if (std::abs(partition.p_affirm + partition.p_negate - 1.0) > 1e-12) {
        throw InputError("partition probabilities do not sum to one");
    }
    const auto expected = split_probabilities(parent, a);
    if (std::abs(expected.affirm - partition.p_affirm) > 1e-12) {
        throw InputError("partition p_affirm disagrees with the parent's conditional mass");
    }
}

}  // namespace infoseek
