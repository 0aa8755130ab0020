#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "rarbench/records.hpp"

namespace rarbench {

// What to do with unresolved NeedsReview outcomes when computing scores.
enum class NeedsReviewPolicy { CountIncorrect, Exclude };

struct TaskMetrics {
    double accuracy = 0.0;  // fraction in [0,1]
    int n = 0;
    int correct = 0;
    int needs_review = 0;  // pre-resolution count
};

struct StereoMetrics {
    double lms = 0.0;               // 1 - unrelated share, over classified responses
    double stereotype_score = 0.0;  // stereo / (stereo + anti)
    bool has_stereotype_score = false;
    double fair_score = 0.0;
    int classified_n = 0;
    int stereo = 0;
    int anti = 0;
    int unrelated = 0;
    int fair = 0;
    int needs_review = 0;
};

struct MetricReport {
    std::map<TaskId, TaskMetrics> per_task;  // gold-graded tasks only
    std::optional<StereoMetrics> stereoset;
    double average = 0.0;  // unweighted mean of per-task accuracies
};

// Human-applied verdicts keyed by record_id.
struct ReviewOverrides {
    std::map<std::string, OutcomeValue> verdicts;
};

MetricReport compute_metrics(std::span<const EvalRecord> records,
                             NeedsReviewPolicy policy = NeedsReviewPolicy::CountIncorrect,
                             const ReviewOverrides* overrides = nullptr);

// The record's outcome after applying an override, if any.
OutcomeValue resolved_outcome(const EvalRecord& record, const ReviewOverrides* overrides);

// CSV with header record_id,verdict,question,response,suggested_gold; one row
// per NeedsReview record, verdict prefilled with needs_review for editing.
void review_export(std::span<const EvalRecord> records, std::ostream& out,
                   const ReviewOverrides* existing = nullptr);

// Parses an edited review file. Rows whose verdict is still needs_review (or
// empty) are skipped; anything other than correct/incorrect fails with the row
// number, as does a record_id absent from `records`.
ReviewOverrides review_import(std::span<const EvalRecord> records, std::istream& in);

std::string render_summary(const MetricReport& report);

}  // namespace rarbench
