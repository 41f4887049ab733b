#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "infoseek/errors.hpp"
#include "infoseek/llm_parse.hpp"
#include "infoseek/prompts.hpp"
#include "reference.hpp"

using namespace infoseek;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const fs::path kGolden = INFOSEEK_GOLDEN_DIR;

SpacePtr labels(std::vector<std::string> names) {
    std::vector<Possibility> ps;
    for (auto& n : names) ps.push_back({n, n, {}, 1.0});
    return PossibilitySpace::make(ps);
}

Turn turn(std::string q, std::string a) {
    Question question;
    question.text = std::move(q);
    return {question, Answer{resolve_polarity(a), a}};
}

}  // namespace

TEST_CASE("generation prompts match the golden renderings byte for byte") {
    {
        auto set = PossibilitySet::full(labels({"dog", "cat", "apple", "rock"}));
        CHECK(render_generation_prompt(Scenario::TwentyQ, {}, set, 3) == slurp(kGolden / "prompts/20q_first.txt"));
    }
    {
        History h;
        h.turns.push_back(turn("Is X an animal?", "Yes."));
        auto set = PossibilitySet::full(labels({"dog", "cat"}));
        CHECK(render_generation_prompt(Scenario::TwentyQ, h, set, 2) == slurp(kGolden / "prompts/20q_asked.txt"));
    }
    {
        History h;
        h.self_report = "I have had a burning stomach ache since yesterday.";
        h.turns.push_back(turn("Do you feel nauseous?", "Yes, a little."));
        h.turns.push_back(turn("Do you have a fever?", "No, I don't."));
        auto set = PossibilitySet::full(labels({"Gastritis", "Enteritis"}));
        CHECK(render_generation_prompt(Scenario::Medical, h, set, 2) ==
              slurp(kGolden / "prompts/medical_reminder.txt"));
    }
    {
        History h;
        h.self_report = "My laptop will not turn on.";
        auto set = PossibilitySet::full(labels({"Dead battery", "Faulty charger", "Broken screen"}));
        CHECK(render_generation_prompt(Scenario::Trouble, h, set, 3) == slurp(kGolden / "prompts/trouble_first.txt"));
    }
}

TEST_CASE("generation prompt contents") {
    auto set = PossibilitySet::full(labels({"dog", "cat", "rock"}));
    const auto p = render_generation_prompt(Scenario::TwentyQ, {}, set, 3);
    CHECK(p.find("Count of YES") != std::string::npos);
    CHECK(p.find("dog, cat, rock") != std::string::npos);
    CHECK(p == render_generation_prompt(Scenario::TwentyQ, {}, set, 3));

    History med;
    med.self_report = "I feel dizzy.";
    const auto m = render_generation_prompt(Scenario::Medical, med, set, 1);
    CHECK(m.rfind("You are a doctor and your patient reports that: I feel dizzy.", 0) == 0);
    CHECK(m.find("Note that you should point out") == std::string::npos);
}

TEST_CASE("the reminder appears from the final phase on") {
    CHECK_FALSE(in_final_phase(Scenario::TwentyQ, 13));
    CHECK(in_final_phase(Scenario::TwentyQ, 14));
    CHECK(in_final_phase(Scenario::Trouble, 14));
    CHECK_FALSE(in_final_phase(Scenario::Medical, 2));
    CHECK(in_final_phase(Scenario::Medical, 3));
    auto set = PossibilitySet::full(labels({"dog", "cat"}));
    History h;
    for (int i = 0; i < 13; ++i) h.turns.push_back(turn("Is X q" + std::to_string(i) + "?", "No."));
    const auto p = render_generation_prompt(Scenario::TwentyQ, h, set, 2);
    CHECK(p.find("X is possible a: dog, cat, or other.") != std::string::npos);
}

TEST_CASE("templates and placeholders") {
    CHECK(fill_template("a {x} b", {{"x", "1"}}) == "a 1 b");
    CHECK(fill_template("json {\"k\": 1} {}", {}) == "json {\"k\": 1} {}");
    CHECK_THROWS_AS(fill_template("{missing}", {}), InputError);
    CHECK_THROWS_AS(prompt_asset("chess/generation"), InputError);
    CHECK_FALSE(prompt_asset("classify").empty());
}

TEST_CASE("direct, classification, answerer and open-set prompts") {
    auto set = PossibilitySet::full(labels({"dog", "cat"}));
    History h;
    h.turns.push_back(turn("Is X an animal?", "Yes."));
    auto msgs = render_direct_messages(Scenario::TwentyQ, h, &set);
    REQUIRE(msgs.size() == 3);
    CHECK(msgs[0].role == "user");
    CHECK(msgs[0].content.find("dog, cat") != std::string::npos);
    CHECK(msgs[1] == ChatMessage{"assistant", "Is X an animal?"});
    CHECK(render_direct_messages(Scenario::TwentyQ, h, nullptr)[0].content.find("dog") == std::string::npos);

    Question q;
    q.text = "Does X bark?";
    const auto c = render_classification_prompt(Scenario::TwentyQ, h, set, q);
    CHECK(c.find("Question 1: Does X bark?") != std::string::npos);
    CHECK(c.find("Q1: Is X an animal?\nA1: Yes.") != std::string::npos);

    auto ans = render_answerer_messages(Scenario::TwentyQ, "dog", h, q);
    REQUIRE(ans.size() == 3);
    CHECK(ans[0].content.find("X is 'dog'") != std::string::npos);
    CHECK(ans.back().content == "Does X bark?");

    CHECK(render_open_set_prompt(Scenario::TwentyQ, h, 7).find("list the 7 most likely") != std::string::npos);
    CHECK(render_transcript(h) == "Q1: Is X an animal?\nA1: Yes.");
}

TEST_CASE("golden well-formed responses parse to the stored partitions") {
    const auto expected = nlohmann::json::parse(slurp(kGolden / "responses/wellformed/expected.json"));
    auto space = labels(expected["items"].get<std::vector<std::string>>());
    auto set = PossibilitySet::full(space);
    for (const auto& [file, cands] : expected["cases"].items()) {
        CAPTURE(file);
        auto parsed = parse_llm_generation(slurp(kGolden / "responses/wellformed" / file), set);
        CHECK(parsed.warnings.empty());
        REQUIRE(parsed.candidates.size() == cands.size());
        for (std::size_t k = 0; k < cands.size(); ++k) {
            const auto& c = parsed.candidates[k];
            CHECK(c.question.text == cands[k]["question"].get<std::string>());
            std::vector<std::size_t> yes;
            for (const auto& id : cands[k]["yes"]) yes.push_back(space->index_of(id.get<std::string>()));
            std::sort(yes.begin(), yes.end());
            CHECK(c.partition->affirmative.members() == yes);
            validate_partition(set, *c.partition);
            if (cands[k]["guess"].is_null()) {
                CHECK_FALSE(c.question.is_terminal_guess);
            } else {
                CHECK(c.question.guessed_id == cands[k]["guess"].get<std::string>());
            }
        }
    }
}

TEST_CASE("malformed responses raise ParseError with the raw text") {
    auto set = PossibilitySet::full(labels({"dog", "cat", "apple", "rock", "banana"}));
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(kGolden / "responses/malformed")) {
        CAPTURE(entry.path().string());
        const auto text = slurp(entry.path());
        try {
            parse_llm_generation(text, set);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.raw_text() == text);
        }
        ++seen;
    }
    CHECK(seen >= 4);
}

TEST_CASE("lenient parsing of imperfect responses") {
    auto set = PossibilitySet::full(labels({"dog", "cat", "apple", "rock"}));
    const std::string text =
        "Question 1: Is X an animal?\nYES: dog, cat, unicorn\nCount of YES: 3\nNO: apple\nCount of NO: 1\n";
    auto r = parse_llm_generation(text, set);
    REQUIRE(r.candidates.size() == 1);
    const auto& p = *r.candidates[0].partition;
    // unicorn dropped; rock omitted and assigned to the larger side.
    CHECK(p.affirmative.members() == std::vector<std::size_t>{0, 1, 3});
    CHECK(p.negative.members() == std::vector<std::size_t>{2});
    CHECK(r.warnings.size() >= 2);

    auto tie = parse_llm_generation("Question 1: Is X alive?\nYES: dog\nNO: apple\n", set);
    CHECK(tie.candidates[0].partition->affirmative.size() == 1);

    auto both = parse_llm_generation("Question 1: Is X alive?\nYES: dog, cat\nNO: cat, apple, rock\n", set);
    CHECK(both.candidates[0].partition->affirmative.members() == std::vector<std::size_t>{0, 1});

    auto skip = parse_llm_generation("Question 1: Is X big?\nQuestion 2: Is X alive?\nYES: dog\nNO: cat, apple, rock\n", set);
    CHECK(skip.candidates.size() == 1);
    CHECK(skip.candidates[0].question.text == "Is X alive?");
}

TEST_CASE("property: rendering then parsing recovers any partition") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 20);
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("Item " + std::to_string(i));
        auto set = PossibilitySet::full(labels(names));
        ref::RandomSplitOracle oracle(rng());
        auto cands = oracle.generate({}, set, 1 + rng() % 3);
        for (auto& c : cands) {
            c.question.text = "Is X number " + c.question.text + "?";
            c.partition->question = c.question;
        }
        auto parsed = parse_llm_generation(render_generation_response(cands), set);
        REQUIRE(parsed.candidates.size() == cands.size());
        for (std::size_t k = 0; k < cands.size(); ++k) {
            CHECK(parsed.candidates[k].question.text == cands[k].question.text);
            CHECK(parsed.candidates[k].partition->affirmative == cands[k].partition->affirmative);
        }
    }
}

TEST_CASE("guess detection and free-text helpers") {
    auto set = PossibilitySet::full(labels({"dog", "Gastritis", "Dead battery"}));
    CHECK(detect_guess("Is X a 'dog'?", set) == 0u);
    CHECK(detect_guess("Is X a dog?", set) == 0u);
    CHECK(detect_guess("You may have a 'Gastritis'?", set) == 1u);
    CHECK(detect_guess("Are you a Dead battery?", set) == 2u);
    CHECK_FALSE(detect_guess("Is X an animal?", set).has_value());

    CHECK(parse_item_lines("1. dog\n2) cat\n- 'rock'\n\n* apple.\n") ==
          std::vector<std::string>{"dog", "cat", "rock", "apple"});
    CHECK(extract_question("Good idea.\nQuestion: Is X an animal?") == "Is X an animal?");
    CHECK(extract_question("Is X red") == "Is X red");
}
