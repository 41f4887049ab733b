// Command-line front end: batch runs, interactive play, significance tests
// and simulation-tree dumps.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "infoseek/errors.hpp"
#include "infoseek/runner.hpp"

using namespace infoseek;

namespace {

struct StrategyFlags {
    std::string strategy = "uot";
    int depth = 3;
    int branching = 3;
    double lambda = 0.4;
    std::string reward = "ur";
    std::string propagation = "expected";
    double reflexion_threshold = 0.7;
    double keep_fraction = 0.5;
    int dp_warmup = 3;

    void attach(CLI::App& app) {
        app.add_option("--strategy", strategy, "dp | greedy | uot | pruned-uot | reflexion")->capture_default_str();
        app.add_option("--depth", depth, "Simulation depth D")->capture_default_str();
        app.add_option("--branching", branching, "Questions per expansion m")->capture_default_str();
        app.add_option("--lambda", lambda, "Reward sharpening parameter")->capture_default_str();
        app.add_option("--reward", reward, "ur | ig | lts | sts | pfs")->capture_default_str();
        app.add_option("--propagation", propagation, "expected | max | crps")->capture_default_str();
        app.add_option("--reflexion-threshold", reflexion_threshold)->capture_default_str();
        app.add_option("--keep-fraction", keep_fraction, "Share of questions kept by pruned-uot")
            ->capture_default_str();
        app.add_option("--dp-warmup", dp_warmup, "Open-set 20q rounds of direct prompting")->capture_default_str();
    }

    StrategyConfig build() const {
        StrategyConfig s;
        s.kind = parse_strategy(strategy);
        s.depth = depth;
        s.branching = branching;
        s.reward.lambda = lambda;
        s.reward.scaling = parse_reward_scaling(reward);
        s.propagation = parse_propagation(propagation);
        s.reflexion_threshold = reflexion_threshold;
        s.keep_fraction = keep_fraction;
        s.dp_warmup_rounds = dp_warmup;
        s.validate();
        return s;
    }
};

struct EndpointFlags {
    std::string oracle = "attribute";
    OracleEndpointConfig endpoint;

    void attach(CLI::App& app) {
        app.add_option("--oracle", oracle, "attribute (table lookups) | llm (chat-completions endpoint)")
            ->capture_default_str();
        app.add_option("--base-url", endpoint.base_url, "Endpoint prefix before /chat/completions")
            ->capture_default_str();
        app.add_option("--model", endpoint.model_name)->capture_default_str();
        app.add_option("--api-key-env", endpoint.api_key_env_var,
                       "Environment variable holding the API key (empty: none)")
            ->capture_default_str();
        app.add_option("--temperature", endpoint.temperature)->capture_default_str();
        app.add_option("--timeout", endpoint.timeout_seconds, "Seconds per request")->capture_default_str();
        app.add_option("--max-retries", endpoint.max_retries)->capture_default_str();
        app.add_option("--max-in-flight", endpoint.max_in_flight)->capture_default_str();
    }
};

void print_report(const BenchmarkReport& r) {
    std::cout << std::fixed << std::setprecision(2);
    std::cout << "dataset     " << r.dataset << "\n"
              << "strategy    " << r.strategy << "\n"
              << "episodes    " << r.episodes << "\n"
              << "successes   " << r.successes << "\n"
              << "SR (%)      " << r.sr_percent << "\n"
              << "MSC         ";
    if (r.msc) std::cout << *r.msc; else std::cout << "-";
    std::cout << "\nMCL         " << r.mcl << "\n"
              << "oracle calls " << r.oracle_calls << "\n";
}

int cmd_run(const std::string& dataset_path, const StrategyFlags& sf, const EndpointFlags& ef, bool open_set,
            std::size_t set_size, std::uint64_t seed, std::size_t max_cases, int max_turns, int workers,
            const std::string& out) {
    const auto ds = load_dataset(dataset_path);
    RunConfig cfg;
    cfg.strategy = sf.build();
    cfg.open_set = open_set;
    cfg.open_set_size = set_size;
    cfg.seed = seed;
    cfg.max_cases = max_cases;
    if (max_turns > 0) cfg.max_turns = max_turns;
    cfg.workers = workers;
    cfg.oracle = parse_oracle_mode(ef.oracle);
    cfg.endpoint = ef.endpoint;
    if (!out.empty()) cfg.out_dir = out;
    const auto outcome = run_benchmark(ds, cfg);
    print_report(outcome.report);
    if (cfg.out_dir) std::cout << "wrote " << (*cfg.out_dir / "episodes.jsonl").string() << "\n";
    return 0;
}

int cmd_play(const std::string& dataset_path, const StrategyFlags& sf, std::uint64_t seed, int max_turns) {
    const auto ds = load_dataset(dataset_path);
    AttributeOracle oracle(AttributeGenerateOptions{sf.build().reward, ds.scenario, nullptr}, ds.questions);
    EpisodeConfig ep;
    ep.scenario = ds.scenario;
    ep.max_turns = max_turns > 0 ? max_turns : ds.max_turns;
    ep.strategy = sf.build();
    ep.seed = seed;
    std::cout << "Think of one of these " << ds.space->size() << " items and answer y or n:\n  ";
    for (std::size_t i = 0; i < ds.space->size(); ++i) std::cout << (i ? ", " : "") << (*ds.space)[i].label;
    std::cout << "\n\n";
    HumanAnswerer human(std::cin, std::cout);
    const auto r = run_episode(ep, ds.space, std::nullopt, oracle.oracles(), human);
    if (r.success) {
        std::cout << "Solved in " << r.turns_used << " turn(s).\n";
    } else {
        std::cout << "Gave up: " << (r.failure_reason ? to_string(*r.failure_reason) : "") << "\n";
        if (!r.failure_detail.empty()) std::cout << r.failure_detail << "\n";
    }
    return 0;
}

int cmd_ttest(const std::vector<std::string>& a_files, const std::vector<std::string>& b_files,
              const std::string& metric) {
    auto samples = [&](const std::vector<std::string>& files) {
        if (files.size() == 1) return metric_samples(read_episode_log(files.front()), metric);
        std::vector<double> out;
        for (const auto& f : files) out.push_back(aggregate_metric(read_episode_log(f), metric));
        return out;
    };
    const auto a = samples(a_files);
    const auto b = samples(b_files);
    const auto res = welch_t_test(a, b);
    std::cout << std::setprecision(6) << "n_a " << a.size() << "  n_b " << b.size() << "\n"
              << "t   " << res.t << "\n"
              << "df  " << res.df << (res.zero_variance ? "  (zero variance in both samples)" : "") << "\n"
              << "p   " << res.p_value << "\n";
    return 0;
}

int cmd_dump_tree(const std::string& dataset_path, const StrategyFlags& sf, const std::string& case_ref,
                  int turn, std::uint64_t seed, bool json_out) {
    const auto ds = load_dataset(dataset_path);
    std::size_t case_index = ds.cases.size();
    for (std::size_t i = 0; i < ds.cases.size(); ++i)
        if (ds.cases[i].target_id == case_ref) case_index = i;
    if (case_index == ds.cases.size()) {
        try {
            case_index = std::stoul(case_ref);
        } catch (const std::exception&) {
        }
    }
    if (case_index >= ds.cases.size()) throw InputError("no case '" + case_ref + "'");
    if (turn < 1 || turn > ds.max_turns) throw InputError("--turn must lie in [1, max_turns]");

    const auto strategy = sf.build();
    const auto& c = ds.cases[case_index];
    AttributeOracle oracle(AttributeGenerateOptions{strategy.reward, ds.scenario, nullptr}, ds.questions);
    SimulatedAnswerer answerer(ds.space, c.target_id, ds.scenario);
    Rng rng(episode_seed(seed, case_index));
    DialogueState state{History{{}, c.self_report}, PossibilitySet::full(ds.space), ds.max_turns, ds.scenario};
    // Replay the dialogue up to the requested turn.
    for (int t = 1; t < turn; ++t) {
        state.turns_remaining = ds.max_turns - t + 1;
        const auto q = decide_action(state, strategy, oracle.oracles(), rng);
        const auto a = answerer.answer(state.history, q);
        if (q.is_terminal_guess && q.guessed_id == c.target_id) {
            std::cerr << "episode ends at turn " << t << " with a correct guess\n";
            return 1;
        }
        state.possibility_set = update_possibility_set(state.possibility_set, state.history, q, a, oracle);
        state.history = state.history.extended(q, a);
    }
    TreeConfig cfg;
    cfg.depth_limit = strategy.kind == StrategyKind::GreedyIG ? 1 : strategy.depth;
    cfg.branching = strategy.branching;
    cfg.reward = strategy.reward;
    if (strategy.kind == StrategyKind::PrunedUoT) cfg.keep_fraction = strategy.keep_fraction;
    const auto candidates = oracle.generate(state.history, state.possibility_set, strategy.branching);
    nlohmann::json all = nlohmann::json::array();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        auto tree = build_tree(candidates[k], state.possibility_set, state.history, oracle, oracle, cfg);
        accumulate_rewards(tree);
        const double value = propagate_expected(tree, strategy.propagation);
        if (json_out) {
            all.push_back({{"candidate", k + 1}, {"value", value}, {"tree", tree_to_json(tree)}});
        } else {
            std::cout << "candidate " << k + 1 << "  value " << std::setprecision(6) << value << "\n"
                      << tree_to_text(tree) << "\n";
        }
    }
    if (json_out) std::cout << all.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Question selection by simulated information gain"};
    app.set_config("--config", "", "TOML or INI file with option values; command-line flags take precedence");
    app.require_subcommand(1);

    StrategyFlags run_sf, play_sf, tree_sf;
    EndpointFlags run_ef;
    std::string dataset, out;
    bool open_set = false;
    std::size_t set_size = 0, max_cases = 0;
    std::uint64_t seed = 0;
    int max_turns = 0, workers = 1;

    auto* run = app.add_subcommand("run", "Run a benchmark over a dataset");
    run->add_option("--dataset", dataset, "Dataset JSON file")->required();
    run_sf.attach(*run);
    run_ef.attach(*run);
    run->add_flag("--open-set", open_set, "Hide the possibility space and rebuild a candidate set each round");
    run->add_option("--set-size", set_size, "Open-set candidate count (0: scenario default)");
    run->add_option("--seed", seed)->capture_default_str();
    run->add_option("--max-cases", max_cases, "Sample this many cases (0: all)");
    run->add_option("--max-turns", max_turns, "Override the dataset turn limit");
    run->add_option("--workers", workers, "Concurrent episodes")->capture_default_str();
    run->add_option("--out", out, "Directory for episodes.jsonl, report.json and report.csv");

    std::string play_dataset;
    std::uint64_t play_seed = 0;
    int play_turns = 0;
    auto* play = app.add_subcommand("play", "Play interactively as the answerer");
    play->add_option("--dataset", play_dataset)->required();
    play_sf.attach(*play);
    play->add_option("--seed", play_seed);
    play->add_option("--max-turns", play_turns);

    std::vector<std::string> a_files, b_files;
    std::string metric = "sr";
    auto* ttest = app.add_subcommand("ttest", "Welch t-test between two sets of episode logs");
    ttest->add_option("--a", a_files, "JSONL log(s) for the first method")->required();
    ttest->add_option("--b", b_files, "JSONL log(s) for the second method")->required();
    ttest->add_option("--metric", metric, "sr | msc | mcl")->capture_default_str();

    std::string tree_dataset, case_ref;
    int turn = 1;
    std::uint64_t tree_seed = 0;
    bool tree_json = false;
    auto* dump = app.add_subcommand("dump-tree", "Print the simulation trees behind one decision");
    dump->add_option("--dataset", tree_dataset)->required();
    dump->add_option("--case", case_ref, "Case index or target id")->required();
    dump->add_option("--turn", turn, "Turn whose decision to show (1-based)")->capture_default_str();
    dump->add_option("--seed", tree_seed);
    dump->add_flag("--json", tree_json, "Emit JSON instead of text");
    tree_sf.attach(*dump);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) return cmd_run(dataset, run_sf, run_ef, open_set, set_size, seed, max_cases, max_turns, workers, out);
        if (*play) return cmd_play(play_dataset, play_sf, play_seed, play_turns);
        if (*ttest) return cmd_ttest(a_files, b_files, metric);
        if (*dump) return cmd_dump_tree(tree_dataset, tree_sf, case_ref, turn, tree_seed, tree_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
