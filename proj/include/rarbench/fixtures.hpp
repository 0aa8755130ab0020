#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rarbench/grading.hpp"
#include "rarbench/tasks.hpp"

namespace rarbench {

// One record of the golden prompt file: inputs plus the expected bytes.
struct GoldenPrompt {
    std::string id;
    std::string op;        // rar | variant | two_step_rephrase | two_step_respond |
                           // zero_shot_cot | rar_cot | few_shot | suffix
    std::string question;
    std::string original;  // two_step_respond
    std::string rephrased;
    int k = 0;             // variant
    std::string example_set;  // few_shot: flawed | rar_improved
    int example_count = 0;
    bool has_task = false;
    TaskId task = TaskId::EvenDay;  // when set, the format suffix pipeline applies
    std::string expected;
};

std::vector<GoldenPrompt> load_golden_prompts(const std::filesystem::path& path);

// Re-renders the record through the prompt engine.
std::string render_golden(const GoldenPrompt& record, const std::filesystem::path& data_dir);

struct VerifyResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

// Byte-compares every golden prompt against a fresh render.
std::vector<VerifyResult> verify_golden_prompts(const std::filesystem::path& data_dir);

// Checks bundled fixture files against their pinned digests.
std::vector<VerifyResult> verify_fixture_digests(const std::filesystem::path& data_dir);

// A transcript quoted from a recorded model session, with its published label.
struct TranscriptItem {
    std::string table;
    TaskId task = TaskId::EvenDay;
    std::string question;
    std::string response;
    std::vector<std::string> gold;
    std::vector<std::string> wrong;
    OutcomeValue expected_auto = OutcomeValue::NeedsReview;  // what exact-word grading yields
    std::string printed_label;                               // correct | incorrect
};

std::vector<TranscriptItem> load_transcripts(const std::filesystem::path& path);

// The automated grade for a transcript (exact-word rule on the response).
Outcome regrade_transcript(const TranscriptItem& item);

// Record id used when transcripts flow through the review workflow.
std::string transcript_record_id(const TranscriptItem& item);

}  // namespace rarbench
