#pragma once

// Benchmark datasets in JSON:
//
//   { "name": "...", "scenario": "20q" | "medical" | "trouble",
//     "max_turns": 20,                       (optional, scenario default)
//     "items": [ {"id", "label", "attributes": {"name": bool}, "prior": 1.0} ],
//     "questions": { "attribute": "question text" },   (optional)
//     "cases": [ {"target": "id", "self_report": "..."} ] }

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infoseek/attribute_oracle.hpp"

namespace infoseek {

struct DatasetCase {
    std::string target_id;
    std::optional<std::string> self_report;
};

struct Dataset {
    std::string name;
    Scenario scenario = Scenario::TwentyQ;
    SpacePtr space;
    std::vector<DatasetCase> cases;
    int max_turns = 20;
    QuestionBook questions;
};

// Throws LoadError whose message starts with the offending field path,
// e.g. "items[3].prior: must be a nonnegative number".
Dataset parse_dataset(const nlohmann::json& doc);
Dataset load_dataset(const std::filesystem::path& path);

nlohmann::json dataset_to_json(const Dataset& dataset);

}  // namespace infoseek
