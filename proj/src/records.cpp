#include "rarbench/records.hpp"

namespace rarbench {

nlohmann::json record_to_json(const EvalRecord& r) {
    nlohmann::json j{
        {"record_id", r.record_id},
        {"run_id", r.run_id},
        {"task_id", task_name(r.task_id)},
        {"question_id", r.question_id},
        {"strategy", r.strategy},
        {"model", r.model},
        {"question_text", r.question_text},
        {"prompts", r.prompts},
        {"raw_responses", r.raw_responses},
        {"rephrased_questions", r.rephrased_questions},
        {"outcome", {{"value", outcome_name(r.outcome.value)}, {"reason", r.outcome.reason}}},
        {"gold_answers", r.gold_answers},
        {"wrong_answers", r.wrong_answers},
        {"timing_ms", r.timing_ms},
        {"cache_hits", r.cache_hits},
    };
    if (r.rephraser_model) j["rephraser_model"] = *r.rephraser_model;
    if (r.stereo_class) j["stereo_class"] = stereo_class_name(*r.stereo_class);
    return j;
}

EvalRecord record_from_json(const nlohmann::json& j) {
    EvalRecord r;
    r.record_id = j.at("record_id").get<std::string>();
    r.run_id = j.at("run_id").get<std::string>();
    r.task_id = task_from_name(j.at("task_id").get<std::string>());
    r.question_id = j.at("question_id").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.model = j.at("model").get<std::string>();
    if (j.contains("rephraser_model")) r.rephraser_model = j.at("rephraser_model").get<std::string>();
    r.question_text = j.at("question_text").get<std::string>();
    r.prompts = j.at("prompts").get<std::vector<std::string>>();
    r.raw_responses = j.at("raw_responses").get<std::vector<std::string>>();
    r.rephrased_questions = j.at("rephrased_questions").get<std::vector<std::string>>();
    r.outcome.value = outcome_from_name(j.at("outcome").at("value").get<std::string>());
    r.outcome.reason = j.at("outcome").value("reason", std::string{});
    if (j.contains("stereo_class")) r.stereo_class = stereo_class_from_name(j.at("stereo_class").get<std::string>());
    r.gold_answers = j.at("gold_answers").get<std::vector<std::string>>();
    r.wrong_answers = j.at("wrong_answers").get<std::vector<std::string>>();
    r.timing_ms = j.value("timing_ms", std::vector<double>{});
    r.cache_hits = j.value("cache_hits", std::vector<bool>{});
    return r;
}

}  // namespace rarbench
