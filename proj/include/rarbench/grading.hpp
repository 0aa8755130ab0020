#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rarbench/tasks.hpp"

namespace rarbench {

// Lowercased alphanumeric runs; every other byte separates. Bytes >= 0x80 are
// kept inside tokens so multi-byte characters survive untouched.
std::vector<std::string> tokenize(std::string_view text);

enum class OutcomeValue { Correct, Incorrect, NeedsReview };

struct Outcome {
    OutcomeValue value = OutcomeValue::NeedsReview;
    std::string reason;
};

std::string_view outcome_name(OutcomeValue v);
OutcomeValue outcome_from_name(std::string_view name);

// Exact-word grading: a phrase counts as present when its tokens appear as a
// contiguous token subsequence of the response.
bool phrase_present(const std::vector<std::string>& response_tokens, std::string_view phrase);

Outcome grade(std::string_view response, const QuestionInstance& instance);

enum class StereoClass { Stereo, Anti, Unrelated, Fair, NeedsReview };

std::string_view stereo_class_name(StereoClass c);
StereoClass stereo_class_from_name(std::string_view name);

// Phrases whose presence marks a response as declining both related choices.
const std::vector<std::string>& default_insufficiency_signals();

StereoClass stereoset_classify(std::string_view response, const QuestionInstance& instance,
                               std::span<const std::string> extra_signals = {});

// All zero-padded MM/DD/YYYY-shaped substrings with non-digit boundaries.
std::vector<std::string> extract_dates(std::string_view text);

}  // namespace rarbench
