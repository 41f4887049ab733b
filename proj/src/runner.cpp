#include "infoseek/runner.hpp"

#include <algorithm>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "infoseek/errors.hpp"
#include "infoseek/llm_oracle.hpp"

namespace infoseek {

namespace {

using nlohmann::json;

[[noreturn]] void bad_record(const std::string& field, const std::string& what) {
    throw LoadError("record." + field + ": " + what);
}

EpisodeResult run_case(const Dataset& ds, std::size_t index, const RunConfig& cfg, LlmClient* client) {
    const auto& c = ds.cases[index];
    EpisodeConfig ep;
    ep.scenario = ds.scenario;
    ep.max_turns = cfg.max_turns.value_or(ds.max_turns);
    ep.strategy = cfg.strategy;
    ep.open_set = cfg.open_set;
    ep.open_set_size = cfg.open_set_size;
    ep.seed = episode_seed(cfg.seed, index);
    ep.self_report = c.self_report;

    if (cfg.oracle == OracleMode::Attribute) {
        AttributeOracle oracle(AttributeGenerateOptions{cfg.strategy.reward, ds.scenario, nullptr}, ds.questions);
        SimulatedAnswerer answerer(ds.space, c.target_id, ds.scenario);
        CatalogInitializer init(ds.space, ds.scenario);
        return run_episode(ep, ds.space, c.target_id, oracle.oracles(), answerer, cfg.open_set ? &init : nullptr);
    }
    LlmOracle oracle(*client, LlmOracleOptions{ds.scenario, 2, true});
    const auto& target = (*ds.space)[ds.space->index_of(c.target_id)];
    LlmAnswerer answerer(*client, ds.scenario, target.label);
    // Counts open-set prompts alongside generation calls.
    LlmInitializer init(*client, ds.scenario, &oracle.counter());
    return run_episode(ep, ds.space, c.target_id, oracle.oracles(), answerer, cfg.open_set ? &init : nullptr);
}

}  // namespace

OracleMode parse_oracle_mode(std::string_view name) {
    if (name == "attribute" || name == "table") return OracleMode::Attribute;
    if (name == "llm") return OracleMode::Llm;
    throw InputError("unknown oracle mode '" + std::string(name) + "'");
}

void RunConfig::validate() const {
    strategy.validate();
    if (workers < 1) throw InputError("workers must be >= 1");
    if (max_turns && *max_turns < 1) throw InputError("max_turns must be >= 1");
    if (oracle == OracleMode::Llm) endpoint.validate();
}

std::vector<std::size_t> select_cases(std::size_t case_count, std::size_t max_cases, std::uint64_t seed) {
    std::vector<std::size_t> idx(case_count);
    for (std::size_t i = 0; i < case_count; ++i) idx[i] = i;
    if (max_cases == 0 || max_cases >= case_count) return idx;
    // Partial Fisher-Yates with the project's own bounded draw.
    Rng rng(mix_seed(seed, 0x5A3B1E));
    for (std::size_t i = 0; i < max_cases; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(case_count - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(max_cases);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::uint64_t episode_seed(std::uint64_t run_seed, std::size_t case_index) noexcept {
    return mix_seed(run_seed, case_index);
}

json episode_record_json(const EpisodeResult& r, std::size_t case_index, std::string_view strategy,
                         std::uint64_t run_seed, std::uint64_t ep_seed) {
    json history = json::array();
    for (const auto& t : r.history.turns) history.push_back({{"q", t.question.text}, {"answer", t.answer.raw_text}});
    json rec;
    rec["case"] = case_index;
    rec["target"] = r.target_id;
    rec["strategy"] = std::string(strategy);
    rec["seed"] = run_seed;
    rec["episode_seed"] = ep_seed;
    rec["success"] = r.success;
    rec["turns"] = r.turns_used;
    rec["rounds"] = charged_rounds(r);
    rec["failure_reason"] = r.failure_reason ? json(std::string(to_string(*r.failure_reason))) : json(nullptr);
    rec["history"] = std::move(history);
    rec["oracle_calls"] = r.oracle_calls;
    return rec;
}

void validate_episode_record(const json& rec) {
    if (!rec.is_object()) throw LoadError("record: must be an object");
    auto need = [&](const char* key) -> const json& {
        auto it = rec.find(key);
        if (it == rec.end()) bad_record(key, "missing");
        return *it;
    };
    if (!need("case").is_number_unsigned()) bad_record("case", "must be a nonnegative integer");
    if (!need("strategy").is_string()) bad_record("strategy", "must be a string");
    if (!need("seed").is_number_integer()) bad_record("seed", "must be an integer");
    if (!need("success").is_boolean()) bad_record("success", "must be a boolean");
    const auto& turns = need("turns");
    if (!turns.is_number_integer() || turns.get<long long>() < 0) bad_record("turns", "must be a nonnegative integer");
    const auto& reason = need("failure_reason");
    if (!reason.is_null()) {
        if (!reason.is_string()) bad_record("failure_reason", "must be null or a string");
        const auto s = reason.get<std::string>();
        if (s != "turn_limit" && s != "contradiction" && s != "oracle_failure")
            bad_record("failure_reason", "unknown value '" + s + "'");
    }
    if (rec["success"].get<bool>() != reason.is_null()) bad_record("failure_reason", "must be null exactly on success");
    const auto& history = need("history");
    if (!history.is_array()) bad_record("history", "must be an array");
    if (history.size() != turns.get<std::size_t>()) bad_record("history", "length differs from turns");
    for (std::size_t i = 0; i < history.size(); ++i) {
        const auto& h = history[i];
        const auto at = "history[" + std::to_string(i) + "]";
        if (!h.is_object() || !h.contains("q") || !h["q"].is_string()) bad_record(at + ".q", "must be a string");
        if (!h.contains("answer") || !h["answer"].is_string()) bad_record(at + ".answer", "must be a string");
    }
    if (!need("oracle_calls").is_number_unsigned()) bad_record("oracle_calls", "must be a nonnegative integer");
    if (auto it = rec.find("rounds"); it != rec.end() && !it->is_number_integer())
        bad_record("rounds", "must be an integer");
}

RunOutcome run_benchmark(const Dataset& ds, const RunConfig& cfg) {
    cfg.validate();
    const auto cases = select_cases(ds.cases.size(), cfg.max_cases, cfg.seed);

    std::unique_ptr<LlmClient> client;
    if (cfg.oracle == OracleMode::Llm) client = std::make_unique<LlmClient>(cfg.endpoint, cfg.transport);

    std::ofstream log;
    if (cfg.out_dir) {
        std::filesystem::create_directories(*cfg.out_dir);
        log.open(*cfg.out_dir / "episodes.jsonl", std::ios::binary | std::ios::trunc);
        if (!log) throw LoadError((*cfg.out_dir / "episodes.jsonl").string() + ": cannot open for writing");
    }

    RunOutcome out;
    out.results.resize(cases.size());
    out.records.resize(cases.size());
    std::vector<bool> done(cases.size(), false);
    std::size_t next_task = 0, next_write = 0;
    std::mutex mu;
    const auto strategy = std::string(to_string(cfg.strategy.kind));

    auto worker = [&] {
        for (;;) {
            std::size_t k;
            {
                std::lock_guard lock(mu);
                if (next_task == cases.size()) return;
                k = next_task++;
            }
            const auto index = cases[k];
            EpisodeResult r;
            try {
                r = run_case(ds, index, cfg, client.get());
            } catch (const std::exception& e) {
                r.target_id = ds.cases[index].target_id;
                r.max_turns = cfg.max_turns.value_or(ds.max_turns);
                r.failure_reason = FailureReason::OracleFailure;
                r.failure_detail = e.what();
            }
            auto line = episode_record_json(r, index, strategy, cfg.seed, episode_seed(cfg.seed, index)).dump();
            std::lock_guard lock(mu);
            out.results[k] = std::move(r);
            out.records[k] = std::move(line);
            done[k] = true;
            // Records go out in case order whatever the completion order.
            while (next_write < cases.size() && done[next_write]) {
                if (log.is_open()) log << out.records[next_write] << '\n' << std::flush;
                ++next_write;
            }
        }
    };
    const int n_workers = std::min<int>(cfg.workers, std::max<std::size_t>(cases.size(), 1));
    std::vector<std::thread> pool;
    for (int i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    if (!out.results.empty()) {
        out.report = compute_metrics(out.results, ds.name, strategy);
    } else {
        out.report.dataset = ds.name;
        out.report.strategy = strategy;
    }
    if (cfg.out_dir) {
        std::ofstream(*cfg.out_dir / "report.json", std::ios::binary | std::ios::trunc)
            << report_to_json(out.report).dump(2) << '\n';
        std::ofstream(*cfg.out_dir / "report.csv", std::ios::binary | std::ios::trunc) << report_csv(out.report);
    }
    return out;
}

std::vector<json> read_episode_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError(path.string() + ": cannot open");
    std::vector<json> records;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& e) {
            throw LoadError(path.string() + ":" + std::to_string(n) + ": invalid JSON");
        }
        try {
            validate_episode_record(rec);
        } catch (const LoadError& e) {
            throw LoadError(path.string() + ":" + std::to_string(n) + ": " + e.what());
        }
        records.push_back(std::move(rec));
    }
    return records;
}

double aggregate_metric(const std::vector<json>& records, std::string_view metric) {
    if (records.empty()) throw InputError("no records to aggregate");
    double successes = 0, success_rounds = 0, rounds = 0;
    for (const auto& r : records) {
        const double charged = r.contains("rounds") ? r["rounds"].get<double>() : r["turns"].get<double>();
        rounds += charged;
        if (r["success"].get<bool>()) {
            successes += 1;
            success_rounds += charged;
        }
    }
    if (metric == "sr") return 100.0 * successes / records.size();
    if (metric == "mcl") return rounds / records.size();
    if (metric == "msc") {
        if (successes == 0) throw InputError("msc undefined without successes");
        return success_rounds / successes;
    }
    throw InputError("unknown metric '" + std::string(metric) + "'");
}

std::vector<double> metric_samples(const std::vector<json>& records, std::string_view metric) {
    std::map<std::uint64_t, std::vector<json>> runs;
    for (const auto& r : records) runs[r["seed"].get<std::uint64_t>()].push_back(r);
    std::vector<double> out;
    if (runs.size() >= 2) {
        for (const auto& [seed, recs] : runs) out.push_back(aggregate_metric(recs, metric));
        return out;
    }
    for (const auto& r : records) {
        const bool ok = r["success"].get<bool>();
        const double charged = r.contains("rounds") ? r["rounds"].get<double>() : r["turns"].get<double>();
        if (metric == "sr") out.push_back(ok ? 100.0 : 0.0);
        else if (metric == "mcl") out.push_back(charged);
        else if (metric == "msc") { if (ok) out.push_back(charged); }
        else throw InputError("unknown metric '" + std::string(metric) + "'");
    }
    return out;
}

std::string report_csv(const BenchmarkReport& r) {
    std::ostringstream os;
    os << "dataset,strategy,episodes,successes,sr_percent,msc,mcl,total_rounds,success_rounds,oracle_calls\n";
    os << r.dataset << ',' << r.strategy << ',' << r.episodes << ',' << r.successes << ',' << r.sr_percent << ',';
    if (r.msc) os << *r.msc;
    os << ',' << r.mcl << ',' << r.total_rounds << ',' << r.success_rounds << ',' << r.oracle_calls << '\n';
    return os.str();
}

}  // namespace infoseek
