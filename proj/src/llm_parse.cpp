#include "infoseek/llm_parse.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>
#include <unordered_map>

#include "infoseek/errors.hpp"

namespace infoseek {

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Lowercased, trimmed, without wrapping quotes/markdown, trailing periods or
// a trailing parenthetical remark.
std::string normalize_item(std::string s) {
    s = trim(std::move(s));
    if (!s.empty() && s.back() == ')') {
        if (auto open = s.rfind('('); open != std::string::npos && open > 0) s = trim(s.substr(0, open));
    }
    bool changed = true;
    while (changed && !s.empty()) {
        changed = false;
        const char f = s.front();
        const char b = s.back();
        if (b == '.' || b == ';') {
            s.pop_back();
            changed = true;
        } else if ((f == '\'' || f == '"' || f == '`' || f == '*') && s.size() >= 2 && b == f) {
            s = s.substr(1, s.size() - 2);
            changed = true;
        } else if (f == '[' && b == ']') {
            s = s.substr(1, s.size() - 2);
            changed = true;
        }
        s = trim(std::move(s));
    }
    return lower(std::move(s));
}

class ItemIndex {
public:
    explicit ItemIndex(const PossibilitySet& set) {
        for (auto i : set.members()) {
            const auto& p = (*set.space())[i];
            by_key_.emplace(normalize_item(p.label), i);
            by_key_.emplace(normalize_item(p.id), i);
        }
    }

    std::optional<std::size_t> find(const std::string& raw) const {
        auto it = by_key_.find(normalize_item(raw));
        if (it == by_key_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::unordered_map<std::string, std::size_t> by_key_;
};

std::vector<std::string> split_items(const std::string& list) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(list);
    while (std::getline(in, cur, ',')) {
        auto n = normalize_item(cur);
        if (n.empty() || n == "..." || n == "none" || n == "n/a") continue;
        out.push_back(trim(cur));
    }
    return out;
}

struct Block {
    std::string question;
    std::optional<std::string> yes;
    std::optional<std::string> no;
    std::optional<long> count_yes;
    std::optional<long> count_no;
};

std::optional<long> leading_number(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size() && !std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) return std::nullopt;
    return std::stol(s.substr(i));
}

std::vector<Block> split_blocks(const std::string& text) {
    static const std::regex question_re(R"(^\s*[*#]*\s*question\s*(\d+)\s*[:.)\-]\s*\**\s*(.*?)\s*$)",
                                        std::regex::icase);
    static const std::regex count_re(R"(^\s*\**\s*count\s+of\s+(yes|no)\s*\**\s*:\s*\**\s*(.*)$)", std::regex::icase);
    static const std::regex list_re(R"(^\s*\**\s*(yes|no)\s*\**\s*:\s*\**\s*(.*)$)", std::regex::icase);

    std::vector<Block> blocks;
    std::istringstream in(text);
    std::string line;
    std::smatch m;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (std::regex_match(line, m, question_re)) {
            blocks.push_back(Block{trim(m[2].str()), {}, {}, {}, {}});
            continue;
        }
        if (blocks.empty()) continue;
        auto& b = blocks.back();
        if (std::regex_match(line, m, count_re)) {
            const bool yes = lower(m[1].str()) == "yes";
            (yes ? b.count_yes : b.count_no) = leading_number(m[2].str());
        } else if (std::regex_match(line, m, list_re)) {
            const bool yes = lower(m[1].str()) == "yes";
            auto& slot = yes ? b.yes : b.no;
            if (!slot) slot = m[2].str();
        }
    }
    return blocks;
}

}  // namespace

std::optional<std::size_t> detect_guess(const std::string& question_text, const PossibilitySet& set) {
    const ItemIndex index(set);
    // A quoted member name anywhere in the question.
    for (char quote : {'\'', '"'}) {
        auto open = question_text.find(quote);
        while (open != std::string::npos) {
            auto close = question_text.find(quote, open + 1);
            if (close == std::string::npos) break;
            if (auto hit = index.find(question_text.substr(open + 1, close - open - 1))) return hit;
            open = question_text.find(quote, close + 1);
        }
    }
    static const std::vector<std::string> kPrefixes = {
        "is x a ", "is x an ", "is x the ", "is x ", "you may have a ", "you may have an ",
        "you may have ", "are you a ", "are you an ", "are you ", "do you have a ", "do you have an ",
        "do you have ", "does your device have a ", "does your device have ", "is the issue "};
    std::string q = lower(trim(question_text));
    while (!q.empty() && (q.back() == '?' || q.back() == '.' || q.back() == '!')) q.pop_back();
    for (const auto& prefix : kPrefixes) {
        if (q.rfind(prefix, 0) == 0) {
            if (auto hit = index.find(q.substr(prefix.size()))) return hit;
        }
    }
    return std::nullopt;
}

GenerationParse parse_llm_generation(const std::string& text, const PossibilitySet& set, Scenario scenario) {
    if (set.exhausted()) throw InputError("parse_llm_generation over an exhausted set");
    const ItemIndex index(set);
    GenerationParse result;
    const auto blocks = split_blocks(text);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const auto& b = blocks[k];
        const auto tag = "question " + std::to_string(k + 1);
        if (!b.yes && !b.no) {
            result.warnings.push_back(tag + ": no YES/NO lists, skipped");
            continue;
        }
        if (b.question.empty()) {
            result.warnings.push_back(tag + ": empty question text, skipped");
            continue;
        }
        std::vector<std::size_t> yes, no;
        auto take = [&](const std::optional<std::string>& list, std::vector<std::size_t>& into,
                        const char* side) {
            if (!list) return;
            for (const auto& item : split_items(*list)) {
                auto hit = index.find(item);
                if (!hit) {
                    result.warnings.push_back(tag + ": dropped unknown item '" + item + "' from " + side);
                    continue;
                }
                into.push_back(*hit);
            }
        };
        take(b.yes, yes, "YES");
        take(b.no, no, "NO");

        std::sort(yes.begin(), yes.end());
        yes.erase(std::unique(yes.begin(), yes.end()), yes.end());
        std::sort(no.begin(), no.end());
        no.erase(std::unique(no.begin(), no.end()), no.end());
        std::vector<std::size_t> overlap;
        std::set_intersection(yes.begin(), yes.end(), no.begin(), no.end(), std::back_inserter(overlap));
        if (!overlap.empty()) {
            result.warnings.push_back(tag + ": " + std::to_string(overlap.size()) +
                                      " item(s) listed on both sides, kept on YES");
            std::vector<std::size_t> pruned;
            std::set_difference(no.begin(), no.end(), overlap.begin(), overlap.end(), std::back_inserter(pruned));
            no = std::move(pruned);
        }

        std::vector<std::size_t> listed = yes;
        listed.insert(listed.end(), no.begin(), no.end());
        const auto missing = set.difference(listed);
        if (!missing.empty()) {
            const bool to_yes = yes.size() > no.size();
            result.warnings.push_back(tag + ": " + std::to_string(missing.size()) + " unlisted member(s) assigned to " +
                                      (to_yes ? "YES" : "NO"));
            if (to_yes) yes.insert(yes.end(), missing.begin(), missing.end());
        }
        if (b.count_yes && *b.count_yes != static_cast<long>(yes.size())) {
            result.warnings.push_back(tag + ": stated YES count " + std::to_string(*b.count_yes) +
                                      " differs from " + std::to_string(yes.size()));
        }

        Question q;
        q.text = b.question;
        if (auto g = detect_guess(b.question, set)) {
            q.is_terminal_guess = true;
            q.guessed_id = (*set.space())[*g].id;
        }
        (void)scenario;
        auto partition = make_partition(set, q, std::move(yes));
        result.candidates.push_back(Candidate{std::move(q), std::move(partition)});
    }
    if (result.candidates.empty()) throw ParseError("no parseable question blocks in model output", text);
    return result;
}

std::string render_generation_response(const std::vector<Candidate>& candidates) {
    std::string out;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const auto& c = candidates[k];
        if (!c.partition) throw InputError("render_generation_response needs partitioned candidates");
        auto labels = [](const PossibilitySet& s) {
            std::string list;
            for (auto i : s.members()) {
                if (!list.empty()) list += ", ";
                list += (*s.space())[i].label;
            }
            return list;
        };
        if (!out.empty()) out += "\n";
        out += "Question " + std::to_string(k + 1) + ": " + c.question.text + "\n";
        out += "YES: " + labels(c.partition->affirmative) + "\n";
        out += "Count of YES: " + std::to_string(c.partition->affirmative.size()) + "\n";
        out += "NO: " + labels(c.partition->negative) + "\n";
        out += "Count of NO: " + std::to_string(c.partition->negative.size()) + "\n";
    }
    return out;
}

std::vector<std::string> parse_item_lines(const std::string& text) {
    static const std::regex bullet_re(R"(^\s*(?:\d+\s*[.):-]|[-*•])\s*)");
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = std::regex_replace(line, bullet_re, "");
        auto item = trim(line);
        while (!item.empty() && (item.back() == '.' || item.back() == ',')) item.pop_back();
        if (item.size() >= 2 && (item.front() == '\'' || item.front() == '"') && item.back() == item.front()) {
            item = item.substr(1, item.size() - 2);
        }
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string extract_question(const std::string& reply) {
    std::istringstream in(reply);
    std::string line;
    std::string last_question;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.find('?') != std::string::npos) last_question = t;
    }
    std::string q = last_question.empty() ? trim(reply) : last_question;
    static const std::regex label_re(R"(^\s*\**\s*(?:question|q\d*)\s*\d*\s*\**\s*:\s*)", std::regex::icase);
    return trim(std::regex_replace(q, label_re, ""));
}

}  // namespace infoseek
