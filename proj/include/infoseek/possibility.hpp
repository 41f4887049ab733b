#pragma once

// Possibility space, history-consistent subsets and their entropy.
//
// A PossibilitySet never copies possibilities: it holds a shared reference
// to its space and a sorted index list, so the many overlapping subsets a
// simulation tree creates stay cheap. All types are immutable once built.

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "infoseek/question.hpp"

namespace infoseek {

inline constexpr double kDefaultLogBase = 2.0;

struct Possibility {
    std::string id;
    std::string label;
    std::map<std::string, bool> attributes;
    double prior_weight = 1.0;
};

class PossibilitySpace {
public:
    // Throws InputError on duplicate ids, negative weights, an empty list,
    // or zero total weight.
    explicit PossibilitySpace(std::vector<Possibility> possibilities);

    static std::shared_ptr<const PossibilitySpace> make(std::vector<Possibility> possibilities);

    std::size_t size() const noexcept { return possibilities_.size(); }
    const Possibility& operator[](std::size_t i) const { return possibilities_.at(i); }
    const std::vector<Possibility>& possibilities() const noexcept { return possibilities_; }
    double total_weight() const noexcept { return total_weight_; }

    // Index of the possibility with this id, or size() when absent.
    std::size_t index_of(const std::string& id) const;
    bool contains(const std::string& id) const { return index_of(id) != size(); }

private:
    std::vector<Possibility> possibilities_;
    std::unordered_map<std::string, std::size_t> by_id_;
    double total_weight_ = 0.0;
};

using SpacePtr = std::shared_ptr<const PossibilitySpace>;

class PossibilitySet {
public:
    PossibilitySet() = default;

    // Every possibility in the space.
    static PossibilitySet full(SpacePtr space);

    // Builds a subset without the non-empty / positive-mass check. An empty
    // result is an exhausted set (a contradiction state a partition side may
    // legitimately be in).
    static PossibilitySet subset(SpacePtr space, std::vector<std::size_t> members);

    const SpacePtr& space() const noexcept { return space_; }
    const std::vector<std::size_t>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool exhausted() const noexcept { return members_.empty(); }
    double mass() const noexcept { return mass_; }

    bool contains(std::size_t index) const;
    const Possibility& at(std::size_t k) const { return (*space_)[members_.at(k)]; }

    // p(x_i | set) for the k-th member. Throws ContractViolation when exhausted.
    double probability(std::size_t k) const;
    std::vector<double> probabilities() const;

    // Members not in `other`; `other` must share the space.
    std::vector<std::size_t> difference(std::span<const std::size_t> other) const;

    // Member index of highest conditional probability; ties go to the
    // lexicographically smallest id.
    std::size_t most_probable() const;

    bool operator==(const PossibilitySet& other) const;

private:
    PossibilitySet(SpacePtr space, std::vector<std::size_t> members);

    SpacePtr space_;
    std::vector<std::size_t> members_;
    double mass_ = 0.0;
};

// Renormalizes the priors over `members`. Throws ContradictionError
// when the member list is empty or carries no mass, InputError when an index
// is outside the space.
PossibilitySet condition(SpacePtr space, std::vector<std::size_t> members);

// -sum p log p over the set's conditional distribution, 0 log 0 = 0.
double entropy(const PossibilitySet& set, double log_base = kDefaultLogBase);

// Same quantity for a raw probability vector.
double entropy(std::span<const double> probabilities, double log_base = kDefaultLogBase);

struct SplitProbabilities {
    double affirm = 0.0;
    double negate = 0.0;
};

// Conditional mass of `affirmative` within `parent`. Throws InputError if
// `affirmative` names a non-member.
SplitProbabilities split_probabilities(const PossibilitySet& parent,
                                       std::span<const std::size_t> affirmative);

struct Partition {
    Question question;
    PossibilitySet affirmative;
    PossibilitySet negative;
    double p_affirm = 0.0;
    double p_negate = 0.0;

    const PossibilitySet& side(Polarity p) const {
        return p == Polarity::Affirmative ? affirmative : negative;
    }
    bool degenerate() const noexcept { return affirmative.exhausted() || negative.exhausted(); }
};

// Splits `parent` into `affirmative` and its complement.
Partition make_partition(const PossibilitySet& parent, Question question,
                         std::vector<std::size_t> affirmative);

// Throws InputError unless the partition is disjoint, exhaustive over
// `parent`, and its probabilities sum to one.
void validate_partition(const PossibilitySet& parent, const Partition& partition);

}  // namespace infoseek
