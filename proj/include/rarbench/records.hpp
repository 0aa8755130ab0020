#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rarbench/grading.hpp"
#include "rarbench/tasks.hpp"

namespace rarbench {

// One evaluated question: everything needed to audit, regrade and report.
// Serialized one JSON object per line in records.jsonl; field names are a
// stable contract (see README).
struct EvalRecord {
    std::string record_id;  // run_id + "/" + question_id
    std::string run_id;
    TaskId task_id = TaskId::EvenDay;
    std::string question_id;
    std::string strategy;
    std::string model;
    std::optional<std::string> rephraser_model;
    std::string question_text;
    std::vector<std::string> prompts;
    std::vector<std::string> raw_responses;
    std::vector<std::string> rephrased_questions;
    Outcome outcome;
    std::optional<StereoClass> stereo_class;
    std::vector<std::string> gold_answers;
    std::vector<std::string> wrong_answers;
    std::vector<double> timing_ms;
    std::vector<bool> cache_hits;
};

nlohmann::json record_to_json(const EvalRecord& r);
EvalRecord record_from_json(const nlohmann::json& j);

}  // namespace rarbench
