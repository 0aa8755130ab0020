#include "rarbench/prompts.hpp"

#include "rarbench/errors.hpp"
#include "rarbench/io.hpp"

namespace rarbench {
namespace prompts {
namespace {

constexpr std::string_view kRarInstruction = "Rephrase and expand the question, and respond.";

constexpr std::string_view kVariants[] = {
    "Reword and elaborate on the inquiry, then provide an answer.",
    "Reframe the question with additional context and detail, then provide an answer.",
    "Modify the original question for clarity and detail, then offer an answer.",
    "Restate and elaborate on the inquiry before proceeding with a response.",
};

constexpr std::string_view kTwoStepRephraseInstruction =
    "Given the above question, rephrase and expand it to help you do better answering. "
    "Maintain all information in the original question.";

constexpr std::string_view kTwoStepRespondInstruction =
    "Use your answer for the rephrased question to answer the original question.";

constexpr std::string_view kCotSentence = "Let's think step by step.";

void require_nonempty(std::string_view value, std::string_view what) {
    if (value.empty()) throw InvalidInputError(std::string(what) + " must be nonempty");
}

std::string quoted_with_instruction(std::string_view question, std::string_view instruction) {
    std::string out;
    out.reserve(question.size() + instruction.size() + 3);
    out.push_back('"');
    out.append(question);
    out.append("\"\n");
    out.append(instruction);
    return out;
}

}  // namespace

std::string render_rar(std::string_view question) {
    require_nonempty(question, "question");
    return quoted_with_instruction(question, kRarInstruction);
}

std::string render_variant(std::string_view question, int k) {
    require_nonempty(question, "question");
    if (k < 1 || k > 4) throw InvalidInputError("variant index must be in 1..4, got " + std::to_string(k));
    return quoted_with_instruction(question, kVariants[k - 1]);
}

std::string render_two_step_rephrase(std::string_view question) {
    require_nonempty(question, "question");
    return quoted_with_instruction(question, kTwoStepRephraseInstruction);
}

std::string render_two_step_respond(std::string_view original, std::string_view rephrased) {
    require_nonempty(original, "original question");
    require_nonempty(rephrased, "rephrased question");
    std::string out;
    out.reserve(original.size() + rephrased.size() + kTwoStepRespondInstruction.size() + 32);
    out.append("(original) ");
    out.append(original);
    out.append("\n(rephrased) ");
    out.append(rephrased);
    out.push_back('\n');
    out.append(kTwoStepRespondInstruction);
    return out;
}

std::string render_zero_shot_cot(std::string_view question) {
    require_nonempty(question, "question");
    std::string out(question);
    out.push_back('\n');
    out.append(kCotSentence);
    return out;
}

std::string render_rar_cot(std::string_view question) {
    std::string out = render_rar(question);
    out.push_back(' ');
    out.append(kCotSentence);
    return out;
}

std::string render_few_shot(std::span<const FewShotExample> examples, std::string_view question) {
    if (examples.empty()) throw InvalidInputError("few-shot example list must be nonempty");
    require_nonempty(question, "question");
    std::string out;
    for (const auto& ex : examples) {
        out.append("Q: ");
        out.append(ex.question_text);
        out.append("\nA: ");
        out.append(ex.answer_text);
        out.append("\n\n");
    }
    out.append("Q: ");
    out.append(question);
    out.append("\nA:");
    return out;
}

std::string_view format_suffix(TaskId task) {
    switch (task) {
        case TaskId::Dates:
            return "Final answer format should be MM/DD/YYYY.";
        case TaskId::CSQA:
        case TaskId::StereoSet:
            return "Select the *single* most sensible answer.";
        case TaskId::Sports:
        case TaskId::CoinFlip:
            return "Answer the Yes or No question.";
        default:
            return {};
    }
}

bool has_format_suffix(TaskId task) { return !format_suffix(task).empty(); }

std::string apply_format_suffix(TaskId task, std::string_view prompt) {
    std::string_view suffix = format_suffix(task);
    std::string out(prompt);
    if (!suffix.empty()) {
        out.push_back(' ');
        out.append(suffix);
    }
    return out;
}

std::vector<FewShotExample> load_example_file(const std::filesystem::path& path) {
    std::vector<FewShotExample> out;
    for (const auto& rec : read_jsonl(path)) {
        const auto& v = rec.value;
        if (!v.contains("question_text") || !v.contains("answer_text") || !v.contains("label")) {
            throw LoadError(path.string() + ":" + std::to_string(rec.line) +
                            ": example needs question_text/answer_text/label");
        }
        std::string label = v.at("label").get<std::string>();
        ExampleLabel parsed;
        if (label == "flawed") {
            parsed = ExampleLabel::Flawed;
        } else if (label == "rar_improved") {
            parsed = ExampleLabel::RaRImproved;
        } else {
            throw LoadError(path.string() + ":" + std::to_string(rec.line) + ": unknown label '" + label + "'");
        }
        out.push_back({v.at("question_text").get<std::string>(), v.at("answer_text").get<std::string>(), parsed});
    }
    return out;
}

std::vector<FewShotExample> filter_examples(const std::vector<FewShotExample>& all, ExampleLabel label) {
    std::vector<FewShotExample> out;
    for (const auto& ex : all) {
        if (ex.label == label) out.push_back(ex);
    }
    return out;
}

}  // namespace prompts
}  // namespace rarbench
