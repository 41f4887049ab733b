#pragma once

// Lookahead over simulated question/answer exchanges.
//
// Each candidate question roots an alternating tree: an Answerer node holds a
// question and splits its possibility set into affirmative/negative
// Questioner children; a Questioner node asks the generator for up to m
// follow-up questions. Rewards live on Answerer nodes only. Depth is counted
// in Answerer nodes, so depth_limit = 1 evaluates the candidate alone.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "infoseek/oracle.hpp"
#include "infoseek/reward.hpp"

namespace infoseek {

enum class NodeKind { Answerer, Questioner };

struct SimNode {
    NodeKind kind = NodeKind::Answerer;
    std::optional<Question> question;  // Answerer nodes only
    PossibilitySet possibility_set;
    int depth_rounds = 0;
    double branch_prob = 1.0;
    double p_affirm = 0.0;  // Answerer nodes only
    double p_negate = 0.0;
    double r_u = 0.0;
    double r_a = 0.0;
    double r_e = 0.0;
    std::vector<SimNode> children;

    bool leaf() const noexcept { return children.empty(); }
};

enum class PropagationScheme { Expected, Max, CRPS };

PropagationScheme parse_propagation(std::string_view name);
std::string_view to_string(PropagationScheme s) noexcept;

struct TreeConfig {
    int depth_limit = 3;
    int branching = 3;
    RewardConfig reward;
    // Set in pruned mode: fraction of generated questions kept at every
    // Questioner node.
    std::optional<double> keep_fraction;
};

struct SimTree {
    SimNode root;
    int depth_limit = 3;
    int branching = 3;
    bool accumulated = false;
};

// Oracle exceptions escape as TreeBuildError naming the node path
// (e.g. "root/N/q2/A").
SimTree build_tree(const Candidate& candidate, const PossibilitySet& root_set,
                   const History& history, QuestionGenerator& generator,
                   AnswerPartitioner& partitioner, const TreeConfig& config);

// r_a(root) = r_u(root); r_a(v) = r_u(v) + r_a(parent).
void accumulate_rewards(SimTree& tree);

// Fills r_e and returns the root value (the best path score under CRPS).
// Throws ContractViolation when accumulate_rewards has not run.
double propagate_expected(SimTree& tree, PropagationScheme scheme);

// Index of the largest value; near-ties (relative 1e-12) go to the lower index.
std::size_t select_best_question(std::span<const double> values);

// Keeps the top ceil(n * keep_fraction) nodes by r_u, in their original order.
std::vector<SimNode> prune_children(std::vector<SimNode> children, double keep_fraction);

// The same selection over bare rewards: kept indices, ascending.
std::vector<std::size_t> prune_indices(std::span<const double> rewards, double keep_fraction);

// Debug rendering: kind, question, |set|, p^A, r_u, r_a, r_e per node.
nlohmann::json tree_to_json(const SimTree& tree);
std::string tree_to_text(const SimTree& tree);

}  // namespace infoseek
