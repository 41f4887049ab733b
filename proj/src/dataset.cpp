#include "infoseek/dataset.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "infoseek/errors.hpp"

namespace infoseek {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw LoadError(path + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing");
    return *it;
}

std::string require_string(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = require(obj, key, path);
    if (!v.is_string()) fail(path + "." + key, "must be a string");
    auto s = v.get<std::string>();
    if (s.empty()) fail(path + "." + key, "must not be empty");
    return s;
}

}  // namespace

Dataset parse_dataset(const json& doc) {
    if (!doc.is_object()) fail("$", "dataset must be a JSON object");
    Dataset ds;
    ds.name = require_string(doc, "name", "$");
    const auto scenario = require_string(doc, "scenario", "$");
    try {
        ds.scenario = parse_scenario(scenario);
    } catch (const InputError&) {
        fail("$.scenario", "unknown scenario '" + scenario + "'");
    }

    ds.max_turns = default_max_turns(ds.scenario);
    if (auto it = doc.find("max_turns"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<long long>() < 1) fail("$.max_turns", "must be a positive integer");
        ds.max_turns = static_cast<int>(it->get<long long>());
    }

    const auto& items = require(doc, "items", "$");
    if (!items.is_array()) fail("$.items", "must be an array");
    if (items.empty()) fail("$.items", "must not be empty");
    std::vector<Possibility> possibilities;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto path = "$.items[" + std::to_string(i) + "]";
        const auto& item = items[i];
        if (!item.is_object()) fail(path, "must be an object");
        Possibility p;
        p.id = require_string(item, "id", path);
        if (!ids.insert(p.id).second) fail(path + ".id", "duplicate id '" + p.id + "'");
        p.label = item.contains("label") ? require_string(item, "label", path) : p.id;
        if (auto it = item.find("attributes"); it != item.end()) {
            if (!it->is_object()) fail(path + ".attributes", "must be an object");
            for (const auto& [name, value] : it->items()) {
                if (!value.is_boolean()) fail(path + ".attributes." + name, "must be a boolean");
                p.attributes.emplace(name, value.get<bool>());
            }
        }
        if (auto it = item.find("prior"); it != item.end()) {
            if (!it->is_number() || !std::isfinite(it->get<double>()) || it->get<double>() < 0.0)
                fail(path + ".prior", "must be a nonnegative number");
            p.prior_weight = it->get<double>();
        }
        possibilities.push_back(std::move(p));
    }
    try {
        ds.space = PossibilitySpace::make(std::move(possibilities));
    } catch (const InputError& e) {
        fail("$.items", e.what());
    }

    if (auto it = doc.find("questions"); it != doc.end()) {
        if (!it->is_object()) fail("$.questions", "must be an object");
        for (const auto& [name, text] : it->items()) {
            if (!text.is_string()) fail("$.questions." + name, "must be a string");
            ds.questions.emplace(name, text.get<std::string>());
        }
    }

    const auto& cases = require(doc, "cases", "$");
    if (!cases.is_array()) fail("$.cases", "must be an array");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto path = "$.cases[" + std::to_string(i) + "]";
        const auto& c = cases[i];
        if (!c.is_object()) fail(path, "must be an object");
        DatasetCase dc;
        dc.target_id = require_string(c, "target", path);
        if (!ds.space->contains(dc.target_id)) fail(path + ".target", "unknown item '" + dc.target_id + "'");
        if (auto it = c.find("self_report"); it != c.end() && !it->is_null()) {
            if (!it->is_string()) fail(path + ".self_report", "must be a string");
            dc.self_report = it->get<std::string>();
        }
        ds.cases.push_back(std::move(dc));
    }
    return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError(path.string() + ": cannot open");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw LoadError(path.string() + ": invalid JSON: " + e.what());
    }
    return parse_dataset(doc);
}

json dataset_to_json(const Dataset& ds) {
    json items = json::array();
    for (const auto& p : ds.space->possibilities()) {
        json attrs = json::object();
        for (const auto& [k, v] : p.attributes) attrs[k] = v;
        items.push_back({{"id", p.id}, {"label", p.label}, {"attributes", attrs}, {"prior", p.prior_weight}});
    }
    json cases = json::array();
    for (const auto& c : ds.cases) {
        json jc = {{"target", c.target_id}};
        if (c.self_report) jc["self_report"] = *c.self_report;
        cases.push_back(std::move(jc));
    }
    json out = {{"name", ds.name},
                {"scenario", std::string(to_string(ds.scenario))},
                {"max_turns", ds.max_turns},
                {"items", items},
                {"cases", cases}};
    if (!ds.questions.empty()) out["questions"] = ds.questions;
    return out;
}

}  // namespace infoseek
