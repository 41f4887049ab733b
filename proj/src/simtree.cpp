#include "infoseek/simtree.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "infoseek/errors.hpp"

namespace infoseek {

PropagationScheme parse_propagation(std::string_view name) {
    if (name == "expected") return PropagationScheme::Expected;
    if (name == "max") return PropagationScheme::Max;
    if (name == "crps") return PropagationScheme::CRPS;
    throw InputError("unknown propagation scheme '" + std::string(name) + "'");
}

std::string_view to_string(PropagationScheme s) noexcept {
    switch (s) {
        case PropagationScheme::Expected: return "expected";
        case PropagationScheme::Max: return "max";
        case PropagationScheme::CRPS: return "crps";
    }
    return "?";
}

namespace {

class Builder {
public:
    Builder(QuestionGenerator& generator, AnswerPartitioner& partitioner, const TreeConfig& config)
        : generator_(generator), partitioner_(partitioner), config_(config) {}

    // Answerer node for `partition` with its two Questioner children attached
    // but not yet expanded.
    SimNode make_answerer(const PossibilitySet& set, const Partition& partition, int depth) const {
        SimNode node;
        node.kind = NodeKind::Answerer;
        node.question = partition.question;
        node.possibility_set = set;
        node.depth_rounds = depth;
        node.p_affirm = partition.p_affirm;
        node.p_negate = partition.p_negate;
        node.r_u = scaled_reward(partition, config_.reward);
        if (set.size() <= 1) return node;
        for (auto pol : {Polarity::Affirmative, Polarity::Negative}) {
            SimNode child;
            child.kind = NodeKind::Questioner;
            child.possibility_set = partition.side(pol);
            child.depth_rounds = depth;
            child.branch_prob = pol == Polarity::Affirmative ? partition.p_affirm : partition.p_negate;
            node.children.push_back(std::move(child));
        }
        return node;
    }

    void expand_answerer(SimNode& node, const History& history, const std::string& path) {
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            auto& child = node.children[i];
            const bool yes = i == 0;
            auto h = history.extended(*node.question, yes ? Answer::yes() : Answer::no());
            expand_questioner(child, h, path + (yes ? "/A" : "/N"));
        }
    }

    void expand_questioner(SimNode& node, const History& history, const std::string& path) {
        if (node.possibility_set.size() < 2 || node.depth_rounds >= config_.depth_limit ||
            !(node.branch_prob > 0.0)) {
            return;
        }
        std::vector<Candidate> generated;
        try {
            generated = generator_.generate(history, node.possibility_set,
                                            static_cast<std::size_t>(config_.branching));
        } catch (const TreeBuildError&) {
            throw;
        } catch (const std::exception& e) {
            throw TreeBuildError(path, e.what());
        }
        const auto n = std::min(generated.size(), static_cast<std::size_t>(config_.branching));
        std::vector<SimNode> children;
        children.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto child_path = path + "/q" + std::to_string(k + 1);
            const auto partition = resolve(generated[k], node.possibility_set, history, child_path);
            children.push_back(make_answerer(node.possibility_set, partition, node.depth_rounds + 1));
        }
        if (config_.keep_fraction) children = prune_children(std::move(children), *config_.keep_fraction);
        for (std::size_t k = 0; k < children.size(); ++k) {
            children[k].branch_prob = 1.0 / static_cast<double>(children.size());
            expand_answerer(children[k], history, path + "/q" + std::to_string(k + 1));
        }
        node.children = std::move(children);
    }

    Partition resolve(const Candidate& candidate, const PossibilitySet& set, const History& history,
                      const std::string& path) {
        try {
            if (candidate.partition) {
                validate_partition(set, *candidate.partition);
                return *candidate.partition;
            }
            auto p = partitioner_.partition(history, set, candidate.question);
            validate_partition(set, p);
            return p;
        } catch (const TreeBuildError&) {
            throw;
        } catch (const std::exception& e) {
            throw TreeBuildError(path, e.what());
        }
    }

private:
    QuestionGenerator& generator_;
    AnswerPartitioner& partitioner_;
    const TreeConfig& config_;
};

void accumulate(SimNode& node, double parent_r_a) {
    node.r_a = node.r_u + parent_r_a;
    for (auto& c : node.children) accumulate(c, node.r_a);
}

double propagate(SimNode& node, PropagationScheme scheme) {
    if (node.leaf()) return node.r_e = node.r_a;
    if (node.kind == NodeKind::Answerer) {
        double v = 0.0;
        for (auto& c : node.children) v += c.branch_prob * propagate(c, scheme);
        return node.r_e = v;
    }
    if (scheme == PropagationScheme::Max) {
        double best = -std::numeric_limits<double>::infinity();
        for (auto& c : node.children) best = std::max(best, propagate(c, scheme));
        return node.r_e = best;
    }
    double sum = 0.0;
    for (auto& c : node.children) sum += propagate(c, scheme);
    return node.r_e = sum / static_cast<double>(node.children.size());
}

// Best product of r_u over Answerer nodes along any reachable root-to-leaf path.
double best_path_product(SimNode& node, double prefix) {
    const double here = node.kind == NodeKind::Answerer ? prefix * node.r_u : prefix;
    double best = -std::numeric_limits<double>::infinity();
    for (auto& c : node.children) {
        if (!(c.branch_prob > 0.0)) continue;
        best = std::max(best, best_path_product(c, here));
    }
    if (best == -std::numeric_limits<double>::infinity()) best = here;
    return node.r_e = best;
}

void dump_text(const SimNode& node, int indent, std::ostringstream& out) {
    out << std::string(static_cast<std::size_t>(indent) * 2, ' ');
    out << std::fixed << std::setprecision(6);
    if (node.kind == NodeKind::Answerer) {
        out << "[A] " << (node.question ? node.question->text : "?") << "  |set|=" << node.possibility_set.size()
            << " pA=" << node.p_affirm << " r_u=" << node.r_u;
    } else {
        out << "[Q] |set|=" << node.possibility_set.size() << " p=" << node.branch_prob;
    }
    out << " r_a=" << node.r_a << " r_e=" << node.r_e << '\n';
    for (const auto& c : node.children) dump_text(c, indent + 1, out);
}

nlohmann::json node_json(const SimNode& node) {
    nlohmann::json j;
    j["kind"] = node.kind == NodeKind::Answerer ? "answerer" : "questioner";
    if (node.question) j["question"] = node.question->text;
    j["set_size"] = node.possibility_set.size();
    j["branch_prob"] = node.branch_prob;
    if (node.kind == NodeKind::Answerer) {
        j["p_affirm"] = node.p_affirm;
        j["r_u"] = node.r_u;
    }
    j["r_a"] = node.r_a;
    j["r_e"] = node.r_e;
    if (!node.children.empty()) {
        j["children"] = nlohmann::json::array();
        for (const auto& c : node.children) j["children"].push_back(node_json(c));
    }
    return j;
}

}  // namespace

SimTree build_tree(const Candidate& candidate, const PossibilitySet& root_set, const History& history,
                   QuestionGenerator& generator, AnswerPartitioner& partitioner,
                   const TreeConfig& config) {
    if (root_set.exhausted()) throw InputError("build_tree on an exhausted possibility set");
    if (config.depth_limit < 1) throw InputError("depth_limit must be at least 1");
    if (config.branching < 1) throw InputError("branching must be at least 1");
    if (config.keep_fraction && !(*config.keep_fraction > 0.0 && *config.keep_fraction <= 1.0)) {
        throw InputError("keep_fraction must lie in (0, 1]");
    }

    Builder builder(generator, partitioner, config);
    const auto partition = builder.resolve(candidate, root_set, history, "root");
    SimTree tree;
    tree.depth_limit = config.depth_limit;
    tree.branching = config.branching;
    tree.root = builder.make_answerer(root_set, partition, 1);
    builder.expand_answerer(tree.root, history, "root");
    return tree;
}

void accumulate_rewards(SimTree& tree) {
    accumulate(tree.root, 0.0);
    tree.accumulated = true;
}

double propagate_expected(SimTree& tree, PropagationScheme scheme) {
    if (!tree.accumulated) throw ContractViolation("propagate_expected before accumulate_rewards");
    if (scheme == PropagationScheme::CRPS) return best_path_product(tree.root, 1.0);
    return propagate(tree.root, scheme);
}

std::size_t select_best_question(std::span<const double> values) {
    if (values.empty()) throw InputError("select_best_question needs at least one candidate");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double margin = 1e-12 * std::max(1.0, std::abs(values[best]));
        if (values[i] > values[best] + margin) best = i;
    }
    return best;
}

std::vector<std::size_t> prune_indices(std::span<const double> rewards, double keep_fraction) {
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) throw InputError("keep_fraction must lie in (0, 1]");
    const auto n = rewards.size();
    auto keep = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * keep_fraction - 1e-9));
    keep = std::min(keep, n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rewards[a] > rewards[b]; });
    order.resize(keep);
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<SimNode> prune_children(std::vector<SimNode> children, double keep_fraction) {
    std::vector<double> rewards;
    rewards.reserve(children.size());
    for (const auto& c : children) rewards.push_back(c.r_u);
    std::vector<SimNode> out;
    for (auto i : prune_indices(rewards, keep_fraction)) out.push_back(std::move(children[i]));
    return out;
}

nlohmann::json tree_to_json(const SimTree& tree) {
    nlohmann::json j;
    j["depth_limit"] = tree.depth_limit;
    j["branching"] = tree.branching;
    j["root"] = node_json(tree.root);
    return j;
}

std::string tree_to_text(const SimTree& tree) {
    std::ostringstream out;
    dump_text(tree.root, 0, out);
    return out.str();
}

}  // namespace infoseek
