#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rarbench/dates.hpp"

namespace rarbench {

enum class TaskId {
    EvenDay,
    EvenMonth,
    EvenYear,
    CompareAge,
    CSQA,
    Dates,
    Sports,
    LastLetter2,
    LastLetter4,
    CoinFlip,
    StereoSet,
    MaskedIdiom,
};

enum class AnswerMode { YesNo, MultipleChoice, ExactString, DateString, StereoChoice };

enum class ChoiceRole { Stereo, Anti, Unrelated };

struct TaskSpec {
    TaskId id;
    std::string_view name;      // stable CLI/file identifier
    std::string_view category;
    AnswerMode answer_mode;
    int default_size;
    bool generated;             // synthesized from facts/names vs loaded from a dataset file
};

const TaskSpec& task_spec(TaskId id);
const std::vector<TaskSpec>& all_task_specs();
std::string_view task_name(TaskId id);
TaskId task_from_name(std::string_view name);  // throws InvalidInputError

std::string_view choice_role_name(ChoiceRole role);
ChoiceRole choice_role_from_name(std::string_view name);

struct QuestionInstance {
    std::string question_id;  // 16 hex chars, stable across runs
    TaskId task_id;
    std::string text;
    std::vector<std::string> gold_answers;
    std::vector<std::string> wrong_answers;
    std::map<std::string, ChoiceRole> choice_roles;  // StereoSet only: letter -> role
    std::map<std::string, std::string> metadata;
};

// Lowercase hex digest of task name + 0x1f + question text, 16 chars.
std::string make_question_id(TaskId task, std::string_view text);

// Round-trippable JSON shape used by instance files written by `gen`.
nlohmann::json instance_to_json(const QuestionInstance& q);
QuestionInstance instance_from_json(const nlohmann::json& j);

struct FactEntry {
    std::string person_name;
    Date birth_date;
};

std::vector<FactEntry> load_fact_table(const std::filesystem::path& path);
std::vector<std::string> load_name_pool(const std::filesystem::path& path);

enum class ParityField { Day, Month, Year };

std::vector<QuestionInstance> gen_birthday_parity(std::span<const FactEntry> facts, ParityField field);

// Seeded random distinct pairs; same-date pairs are skipped and logged.
std::vector<QuestionInstance> gen_compare_age(std::span<const FactEntry> facts, int count, uint64_t seed,
                                              std::vector<std::string>* skip_log = nullptr);

// Concatenation of each word's final letter, lowercased.
std::string last_letter_oracle(std::string_view phrase);

std::vector<QuestionInstance> gen_last_letter(std::span<const std::string> names, int words_per_question,
                                              int count, uint64_t seed);

// "yes" when the coin is still heads up after applying the flips.
std::string coin_flip_oracle(bool initially_heads, const std::vector<bool>& flips);

std::vector<QuestionInstance> gen_coin_flip(std::span<const std::string> names, int actors_per_question,
                                            int count, uint64_t seed);

// Answer string for "what is the date tomorrow", given the date the question
// context establishes as today.
std::string dates_tomorrow_oracle(Date today);

std::vector<QuestionInstance> load_dataset(TaskId task, const std::filesystem::path& path,
                                           std::vector<std::string>* warnings = nullptr);

// Seeded shuffle then truncation to min(sample_size, available).
std::vector<QuestionInstance> sample_instances(std::vector<QuestionInstance> instances, size_t sample_size,
                                               uint64_t seed);

// Bundled data file locations, resolved against a data directory.
struct DataPaths {
    std::filesystem::path data_dir;

    std::filesystem::path fact_table() const { return data_dir / "facts.jsonl"; }
    std::filesystem::path name_pool() const { return data_dir / "names.txt"; }
    std::filesystem::path dataset(TaskId task) const;
};

// Generates or loads the full instance list for a task (before sampling).
std::vector<QuestionInstance> build_instances(TaskId task, const DataPaths& paths, uint64_t base_seed,
                                              std::vector<std::string>* warnings = nullptr);

}  // namespace rarbench
