#include "infoseek/prompts.hpp"

#include <cctype>

#include "infoseek/errors.hpp"

namespace infoseek {

namespace detail {
const std::map<std::string, std::string>& prompt_assets();
}

namespace {

std::string key_for(Scenario scenario, std::string_view part) {
    return std::string(to_string(scenario)) + "/" + std::string(part);
}

bool identifier_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

void append_section(std::string& out, const std::string& section) {
    if (section.empty()) return;
    if (!out.empty()) out += "\n\n";
    out += section;
}

std::string closed_set_line(Scenario scenario, const PossibilitySet& set) {
    return fill_template(prompt_asset(key_for(scenario, "closed_set")), {{"item_list", item_list(set)}});
}

std::string asked_clause(const History& history) {
    return history.empty() ? std::string{} : std::string("Do not repeat any question already asked above. ");
}

}  // namespace

const std::string& prompt_asset(std::string_view key) {
    const auto& assets = detail::prompt_assets();
    auto it = assets.find(std::string(key));
    if (it == assets.end()) throw InputError("no prompt template '" + std::string(key) + "'");
    return it->second;
}

std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string>& vars) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] == '{') {
            std::size_t j = i + 1;
            while (j < tmpl.size() && identifier_char(tmpl[j])) ++j;
            if (j < tmpl.size() && tmpl[j] == '}' && j > i + 1) {
                const std::string name(tmpl.substr(i + 1, j - i - 1));
                auto it = vars.find(name);
                if (it == vars.end()) throw InputError("template placeholder {" + name + "} has no value");
                out += it->second;
                i = j + 1;
                continue;
            }
        }
        out.push_back(tmpl[i++]);
    }
    return out;
}

std::string item_list(const PossibilitySet& set) {
    std::string out;
    for (auto i : set.members()) {
        if (!out.empty()) out += ", ";
        out += (*set.space())[i].label;
    }
    return out;
}

std::string render_transcript(const History& history) {
    std::string out;
    for (std::size_t k = 0; k < history.turns.size(); ++k) {
        const auto& t = history.turns[k];
        if (!out.empty()) out += '\n';
        const auto n = std::to_string(k + 1);
        out += "Q" + n + ": " + t.question.text + "\nA" + n + ": " + t.answer.raw_text;
    }
    return out;
}

bool in_final_phase(Scenario scenario, std::size_t turn_number) {
    return turn_number >= (scenario == Scenario::Medical ? 3u : 14u);
}

std::string render_prologue(Scenario scenario, const History& history) {
    return fill_template(prompt_asset(key_for(scenario, "prologue")),
                         {{"self_report", history.self_report.value_or("")}});
}

std::string render_generation_prompt(Scenario scenario, const History& history,
                                     const PossibilitySet& set, std::size_t m) {
    std::string out = render_prologue(scenario, history) + "\n" + closed_set_line(scenario, set);
    append_section(out, render_transcript(history));
    append_section(out, fill_template(prompt_asset(key_for(scenario, "generation")),
                                      {{"asked", asked_clause(history)}, {"n", std::to_string(m)}}));
    if (in_final_phase(scenario, history.size() + 1)) {
        append_section(out, fill_template(prompt_asset(key_for(scenario, "reminder")),
                                          {{"item_list", item_list(set)}}));
    }
    return out;
}

std::vector<ChatMessage> render_direct_messages(Scenario scenario, const History& history,
                                                const PossibilitySet* set) {
    std::string opening = render_prologue(scenario, history);
    if (scenario == Scenario::Medical) opening += "\n" + prompt_asset("medical/guess_hint");
    if (set) opening += "\n" + closed_set_line(scenario, *set);

    std::vector<ChatMessage> messages{{"user", opening}};
    for (const auto& t : history.turns) {
        messages.push_back({"assistant", t.question.text});
        messages.push_back({"user", t.answer.raw_text});
    }
    if (in_final_phase(scenario, history.size() + 1)) {
        std::string reminder;
        if (scenario != Scenario::TwentyQ) reminder = prompt_asset(key_for(scenario, "guess_hint"));
        if (set) reminder += (reminder.empty() ? "" : "\n") + closed_set_line(scenario, *set);
        if (!reminder.empty()) messages.back().content += "\n" + reminder;
    }
    return messages;
}

std::string render_classification_prompt(Scenario scenario, const History& history,
                                         const PossibilitySet& set, const Question& question) {
    std::string out = render_prologue(scenario, history) + "\n" + closed_set_line(scenario, set);
    append_section(out, render_transcript(history));
    append_section(out, fill_template(prompt_asset("classify"), {{"question", question.text}}));
    return out;
}

std::vector<ChatMessage> render_answerer_messages(Scenario scenario, const std::string& target_label,
                                                  const History& history, const Question& question) {
    const auto prologue = fill_template(prompt_asset(key_for(scenario, "answerer")), {{"target", target_label}});
    std::vector<ChatMessage> messages;
    std::string pending = prologue;
    for (const auto& t : history.turns) {
        messages.push_back({"user", pending.empty() ? t.question.text : pending + "\n" + t.question.text});
        messages.push_back({"assistant", t.answer.raw_text});
        pending.clear();
    }
    messages.push_back({"user", pending.empty() ? question.text : pending + "\n" + question.text});
    return messages;
}

std::string render_open_set_prompt(Scenario scenario, const History& history, std::size_t size) {
    std::string out = render_prologue(scenario, history);
    append_section(out, render_transcript(history));
    append_section(out, fill_template(prompt_asset("open_set"), {{"n", std::to_string(size)}}));
    return out;
}

}  // namespace infoseek
