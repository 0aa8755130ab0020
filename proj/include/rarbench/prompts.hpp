#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rarbench/tasks.hpp"

namespace rarbench {
namespace prompts {

// All renderers are pure; identical inputs produce byte-identical output.
// Line separator is always '\n'. Empty inputs throw InvalidInputError.

std::string render_rar(std::string_view question);

// k in 1..4 selects the alternative rephrase-then-answer instruction.
std::string render_variant(std::string_view question, int k);

std::string render_two_step_rephrase(std::string_view question);

std::string render_two_step_respond(std::string_view original, std::string_view rephrased);

std::string render_zero_shot_cot(std::string_view question);

// RaR instruction with the step-by-step sentence appended on the same line.
std::string render_rar_cot(std::string_view question);

enum class ExampleLabel { Flawed, RaRImproved };

struct FewShotExample {
    std::string question_text;
    std::string answer_text;
    ExampleLabel label;
};

// "Q:/A:" blocks separated by blank lines, then the query block with an open "A:".
std::string render_few_shot(std::span<const FewShotExample> examples, std::string_view question);

// Appends the task's answer-format directive (single space join); identity for
// tasks without one.
std::string apply_format_suffix(TaskId task, std::string_view prompt);

// The directive itself, when the task has one.
std::string_view format_suffix(TaskId task);
bool has_format_suffix(TaskId task);

std::vector<FewShotExample> load_example_file(const std::filesystem::path& path);
std::vector<FewShotExample> filter_examples(const std::vector<FewShotExample>& all, ExampleLabel label);

}  // namespace prompts
}  // namespace rarbench
