#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rarbench/metrics.hpp"
#include "rarbench/records.hpp"
#include "rarbench/runner.hpp"

namespace rarbench {

struct TableRow {
    std::string label;
    std::map<TaskId, double> per_task_pct;  // percent scale
    double average_pct = 0.0;
    std::optional<double> delta_pct;  // vs baseline, computed on 2-decimal-rounded averages
};

struct ComparisonTable {
    std::vector<TaskId> tasks;  // column order
    std::vector<TableRow> rows;
    std::string baseline_label;
};

// One run's worth of material for the reporter.
struct RunInput {
    std::string label;
    PromptStrategy strategy;
    std::vector<EvalRecord> records;
    ReviewOverrides overrides;
};

RunInput load_run_input(const std::filesystem::path& run_dir);

// Rows given directly as per-task percentages (averages and deltas computed
// here); used when scores come from elsewhere.
ComparisonTable build_table_from_values(
    const std::vector<std::pair<std::string, std::map<TaskId, double>>>& rows,
    const std::string& baseline_label);

// Per-task accuracy per run; every run must cover the same task set.
ComparisonTable build_table(const std::vector<RunInput>& runs, const std::string& baseline_label,
                            NeedsReviewPolicy policy = NeedsReviewPolicy::CountIncorrect);

std::string render_table_text(const ComparisonTable& table);
std::string render_table_csv(const ComparisonTable& table);

// Grouped bar chart (one group per task, one bar per row), y axis 0-100%,
// written as a self-contained SVG with deterministic bytes.
void emit_chart(const ComparisonTable& table, const std::filesystem::path& path);

// Rows per run, columns LMS / Fair Score, from StereoSet records.
std::string render_stereoset_panel(const std::vector<RunInput>& runs);

// Rows per few-shot run, columns last_letter2 / last_letter4. Plain few-shot
// rows scoring below their paired RaR row are marked.
std::string render_fewshot_panel(const std::vector<RunInput>& runs);

}  // namespace rarbench
