#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "infoseek/dataset.hpp"
#include "infoseek/errors.hpp"
#include "infoseek/metrics.hpp"
#include "infoseek/runner.hpp"
#include "reference.hpp"

using namespace infoseek;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kData = INFOSEEK_DATA_DIR;

json tiny_doc() {
    return json::parse(R"({
        "name": "tiny", "scenario": "20q",
        "items": [
            {"id": "dog", "attributes": {"animal": true, "barks": true}},
            {"id": "cat", "label": "Cat", "attributes": {"animal": true, "barks": false}, "prior": 2},
            {"id": "rock", "attributes": {"animal": false, "barks": false}}
        ],
        "questions": {"animal": "Is X an animal?"},
        "cases": [{"target": "dog"}, {"target": "cat"}, {"target": "rock"}]
    })");
}

std::string load_error(const json& doc) {
    try {
        parse_dataset(doc);
    } catch (const LoadError& e) {
        return e.what();
    }
    return {};
}

EpisodeResult episode(bool success, int turns, int max_turns,
                      std::optional<FailureReason> why = std::nullopt) {
    EpisodeResult r;
    r.success = success;
    r.turns_used = turns;
    r.max_turns = max_turns;
    r.failure_reason = success ? std::nullopt : (why ? why : FailureReason::TurnLimit);
    return r;
}

}  // namespace

TEST_CASE("the bundled datasets load") {
    auto common = load_dataset(kData / "common-like.json");
    CHECK(common.space->size() == 111);
    CHECK(common.cases.size() == 111);
    CHECK(common.scenario == Scenario::TwentyQ);
    CHECK(common.max_turns == 20);
    auto dx = load_dataset(kData / "dx-like.json");
    CHECK(dx.scenario == Scenario::Medical);
    CHECK(dx.max_turns == 5);
    CHECK(dx.cases.front().self_report.has_value());
    for (const char* name : {"meddg-like.json", "flodial-like.json", "things-like.json"}) {
        CAPTURE(name);
        auto d = load_dataset(kData / name);
        CHECK_FALSE(d.cases.empty());
    }
}

TEST_CASE("dataset defaults and round trip") {
    auto d = parse_dataset(tiny_doc());
    CHECK(d.name == "tiny");
    CHECK((*d.space)[0].label == "dog");
    CHECK((*d.space)[1].label == "Cat");
    CHECK((*d.space)[0].prior_weight == 1.0);
    CHECK((*d.space)[1].prior_weight == 2.0);
    CHECK(d.questions.at("animal") == "Is X an animal?");
    auto again = parse_dataset(dataset_to_json(d));
    CHECK(again.space->possibilities().size() == 3);
    CHECK(dataset_to_json(again) == dataset_to_json(d));

    auto empty = tiny_doc();
    empty["cases"] = json::array();
    CHECK(parse_dataset(empty).cases.empty());
}

TEST_CASE("dataset errors name the field") {
    auto doc = tiny_doc();
    doc["cases"][1]["target"] = "unicorn";
    CHECK(load_error(doc).rfind("$.cases[1].target", 0) == 0);

    doc = tiny_doc();
    doc["items"][2]["prior"] = -1;
    CHECK(load_error(doc).rfind("$.items[2].prior", 0) == 0);

    doc = tiny_doc();
    doc["items"][1]["id"] = "dog";
    CHECK(load_error(doc).find("$.items[1].id") == 0);

    doc = tiny_doc();
    doc["items"][0]["attributes"]["animal"] = "yes";
    CHECK(load_error(doc).rfind("$.items[0].attributes.animal", 0) == 0);

    doc = tiny_doc();
    doc["scenario"] = "chess";
    CHECK(load_error(doc).rfind("$.scenario", 0) == 0);

    CHECK_THROWS_AS(load_dataset(kData / "missing.json"), LoadError);
}

TEST_CASE("metric examples") {
    auto half = compute_metrics({episode(true, 4, 10), episode(true, 6, 10), episode(false, 10, 10), episode(false, 10, 10)});
    CHECK(half.sr_percent == doctest::Approx(50.0));
    CHECK(half.msc.value() == doctest::Approx(5.0));
    CHECK(half.mcl == doctest::Approx(7.5));

    auto one = compute_metrics({episode(true, 1, 20)});
    CHECK(one.sr_percent == 100.0);
    CHECK(*one.msc == 1.0);
    CHECK(one.mcl == 1.0);

    auto none = compute_metrics({episode(false, 20, 20), episode(false, 3, 20, FailureReason::Contradiction)});
    CHECK(none.sr_percent == 0.0);
    CHECK_FALSE(none.msc.has_value());
    CHECK(none.mcl == doctest::Approx(11.5));
    CHECK(report_to_json(none)["msc"].is_null());

    CHECK(charged_rounds(episode(false, 2, 20, FailureReason::OracleFailure)) == 20);
    CHECK_THROWS_AS(compute_metrics({}), InputError);
}

TEST_CASE("welch t-test examples") {
    auto same = welch_t_test({1, 2, 3}, {1, 2, 3});
    CHECK(same.t == doctest::Approx(0.0));
    CHECK(same.p_value == doctest::Approx(1.0));

    auto r = welch_t_test({1, 2, 3}, {4, 5, 6});
    CHECK(r.t == doctest::Approx(-3.6742).epsilon(1e-4));
    CHECK(r.df == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(r.p_value == doctest::Approx(0.02131).epsilon(1e-3));

    auto flat = welch_t_test({0, 0}, {0, 0});
    CHECK(flat.zero_variance);
    CHECK(flat.t == 0.0);
    CHECK(flat.p_value == 1.0);
    CHECK(std::isnan(flat.df));
    auto apart = welch_t_test({0, 0}, {1, 1});
    CHECK(apart.p_value == 0.0);
    CHECK(std::isinf(apart.t));

    CHECK_THROWS_AS(welch_t_test({1}, {1, 2}), InputError);
}

TEST_CASE("case sampling is seeded and sorted") {
    auto a = select_cases(100, 10, 3);
    CHECK(a.size() == 10);
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
    CHECK(a == select_cases(100, 10, 3));
    CHECK(a != select_cases(100, 10, 4));
    CHECK(select_cases(5, 0, 1).size() == 5);
    CHECK(select_cases(5, 50, 1).size() == 5);
    CHECK(episode_seed(1, 0) != episode_seed(1, 1));
}

TEST_CASE("benchmark runs write valid, repeatable logs") {
    auto ds = parse_dataset(tiny_doc());
    const auto dir = fs::temp_directory_path() / "infoseek_bench_test";
    fs::remove_all(dir);
    RunConfig cfg;
    cfg.seed = 2;
    cfg.workers = 2;
    cfg.out_dir = dir;
    auto out = run_benchmark(ds, cfg);
    CHECK(out.report.episodes == 3);
    CHECK(out.report.sr_percent == 100.0);
    CHECK(out.records.size() == 3);

    auto log = read_episode_log(dir / "episodes.jsonl");
    REQUIRE(log.size() == 3);
    for (std::size_t i = 0; i < log.size(); ++i) {
        validate_episode_record(log[i]);
        CHECK(log[i]["case"] == i);
        CHECK(log[i]["strategy"] == "uot");
    }
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "report.csv"));
    CHECK(aggregate_metric(log, "sr") == 100.0);
    CHECK(metric_samples(log, "sr") == std::vector<double>{100, 100, 100});

    cfg.workers = 1;
    cfg.out_dir.reset();
    auto again = run_benchmark(ds, cfg);
    CHECK(again.records == out.records);

    cfg.max_turns = 1;
    auto short_run = run_benchmark(ds, cfg);
    CHECK(short_run.report.successes == 1);  // the most probable item, cat, is guessed first.
    fs::remove_all(dir);
}

TEST_CASE("episode records are validated") {
    auto ds = parse_dataset(tiny_doc());
    auto out = run_benchmark(ds, {});
    auto rec = json::parse(out.records[0]);
    validate_episode_record(rec);
    auto bad = rec;
    bad.erase("turns");
    CHECK_THROWS_WITH_AS(validate_episode_record(bad), doctest::Contains("record.turns"), LoadError);
    bad = rec;
    bad["success"] = "yes";
    CHECK_THROWS_AS(validate_episode_record(bad), LoadError);
}

TEST_CASE("metric samples group by run seed") {
    std::vector<json> recs;
    for (int seed : {1, 2}) {
        for (int i = 0; i < 2; ++i) {
            EpisodeResult r = episode(i == 0 || seed == 2, 4, 20);
            r.target_id = "x";
            recs.push_back(episode_record_json(r, i, "uot", seed, episode_seed(seed, i)));
        }
    }
    CHECK(metric_samples(recs, "sr") == std::vector<double>{50, 100});
    CHECK(aggregate_metric(recs, "sr") == doctest::Approx(75.0));
    CHECK(aggregate_metric(recs, "msc") == doctest::Approx(4.0));
    CHECK_THROWS_AS(aggregate_metric({}, "sr"), InputError);
    CHECK_THROWS_AS(aggregate_metric(recs, "rounds"), InputError);

    BenchmarkReport rep = compute_metrics({episode(true, 5, 10), episode(false, 10, 10)}, "tiny", "uot");
    const auto csv = report_csv(rep);
    CHECK(csv.find("tiny") != std::string::npos);
    CHECK(csv.find("50") != std::string::npos);
    CHECK(parse_oracle_mode("llm") == OracleMode::Llm);
    CHECK_THROWS_AS(parse_oracle_mode("psychic"), InputError);
}

namespace {

// Answers as whichever role the request is for: the answerer prompt gets a
// confirmation, everything else gets a guess at "dog".
class RoleTransport final : public HttpTransport {
public:
    HttpResponse post(const std::string&, const std::map<std::string, std::string>&, const std::string& body,
                      std::chrono::seconds) override {
        const auto req = json::parse(body);
        const auto first = req["messages"][0]["content"].get<std::string>();
        ++requests;
        if (first.find("You are the answerer") != std::string::npos)
            return {200, ref::ScriptedTransport::completion("Yes, you guessed it.")};
        return {200, ref::ScriptedTransport::completion("Is X a 'dog'?")};
    }
    std::atomic<int> requests{0};
};

}  // namespace

TEST_CASE("model-backed runs go through the configured endpoint") {
    auto ds = parse_dataset(tiny_doc());
    RunConfig cfg;
    cfg.strategy.kind = StrategyKind::DirectRandom;
    cfg.oracle = OracleMode::Llm;
    cfg.endpoint.api_key_env_var.clear();
    auto transport = std::make_shared<RoleTransport>();
    cfg.transport = transport;
    cfg.max_cases = 3;
    auto out = run_benchmark(ds, cfg);
    REQUIRE(out.results.size() == 3);
    CHECK(out.results[0].success);
    CHECK(out.results[0].turns_used == 1);
    CHECK(out.results[0].oracle_calls == 1);
    CHECK(transport->requests.load() >= 2);
}
