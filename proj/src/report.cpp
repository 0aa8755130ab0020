#include "rarbench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rarbench/errors.hpp"
#include "rarbench/io.hpp"
#include "rarbench/strings.hpp"

namespace rarbench {
namespace {

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string signed_cents(long long cents) {
    std::string body = format_percent(static_cast<double>(std::llabs(cents)) / 100.0);
    return (cents < 0 ? "-" : "+") + body;
}

void fill_average_and_deltas(ComparisonTable& table) {
    const TableRow* baseline = nullptr;
    for (const auto& row : table.rows) {
        if (row.label == table.baseline_label) baseline = &row;
    }
    if (!baseline) throw BuildError("baseline '" + table.baseline_label + "' is not among the rows");
    long long base_cents = to_cents(baseline->average_pct);
    for (auto& row : table.rows) {
        row.delta_pct = static_cast<double>(to_cents(row.average_pct) - base_cents) / 100.0;
    }
}

double row_average(const std::map<TaskId, double>& per_task) {
    double sum = 0.0;
    for (const auto& [task, pct] : per_task) sum += pct;
    return per_task.empty() ? 0.0 : sum / static_cast<double>(per_task.size());
}

const char* kPalette[] = {"#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2",
                          "#b279a2", "#ff9da6", "#9d755d", "#bab0ac", "#86bcb6"};

std::string display_label(const std::string& strategy_id) {
    if (strategy_id == "original") return "Original";
    if (strategy_id == "rar") return "RaR";
    if (strategy_id == "cot") return "Zero-shot CoT";
    if (strategy_id == "rar_cot") return "RaR + Zero-shot CoT";
    return strategy_id;
}

std::string shots_label(const PromptStrategy& s) {
    std::string base = std::to_string(s.shots) + "-shot CoT";
    if (s.kind == StrategyKind::RaRPlusFewShotCoT) return "RaR + " + base;
    return base;
}

}  // namespace

RunInput load_run_input(const std::filesystem::path& run_dir) {
    std::filesystem::path snapshot = run_dir / "config.snapshot";
    if (!std::filesystem::exists(snapshot)) throw LoadError("missing config snapshot in " + run_dir.string());
    auto config = ExperimentConfig::from_json(nlohmann::json::parse(read_file(snapshot)));
    RunInput input;
    input.label = config.run_id;
    input.strategy = config.strategy;
    input.records = load_run_records(run_dir / "records.jsonl");
    std::filesystem::path overrides = run_dir / "review.overrides.csv";
    if (std::filesystem::exists(overrides)) {
        std::ifstream in(overrides);
        input.overrides = review_import(input.records, in);
    }
    return input;
}

ComparisonTable build_table_from_values(
    const std::vector<std::pair<std::string, std::map<TaskId, double>>>& rows,
    const std::string& baseline_label) {
    if (rows.empty()) throw BuildError("no rows");
    ComparisonTable table;
    table.baseline_label = baseline_label;
    for (const auto& [task, pct] : rows.front().second) {
        (void)pct;
        table.tasks.push_back(task);
    }
    for (const auto& [label, per_task] : rows) {
        std::set<TaskId> mine, first;
        for (const auto& [t, v] : per_task) {
            (void)v;
            mine.insert(t);
        }
        for (TaskId t : table.tasks) first.insert(t);
        if (mine != first) {
            std::vector<std::string> diff;
            for (TaskId t : mine) {
                if (!first.count(t)) diff.push_back(std::string(task_name(t)));
            }
            for (TaskId t : first) {
                if (!mine.count(t)) diff.push_back(std::string(task_name(t)));
            }
            throw BuildError("task sets differ between rows; symmetric difference: " + join(diff, ", "));
        }
        TableRow row;
        row.label = label;
        row.per_task_pct = per_task;
        row.average_pct = row_average(per_task);
        table.rows.push_back(std::move(row));
    }
    fill_average_and_deltas(table);
    return table;
}

ComparisonTable build_table(const std::vector<RunInput>& runs, const std::string& baseline_label,
                            NeedsReviewPolicy policy) {
    std::vector<std::pair<std::string, std::map<TaskId, double>>> rows;
    for (const auto& run : runs) {
        if (run.records.empty()) throw BuildError("run '" + run.label + "' has no records");
        MetricReport report = compute_metrics(run.records, policy, &run.overrides);
        std::map<TaskId, double> per_task;
        for (const auto& [task, tm] : report.per_task) per_task[task] = tm.accuracy * 100.0;
        rows.push_back({run.label, std::move(per_task)});
    }
    return build_table_from_values(rows, baseline_label);
}

std::string render_table_text(const ComparisonTable& table) {
    std::ostringstream out;
    size_t label_w = 8;
    for (const auto& row : table.rows) label_w = std::max(label_w, row.label.size());
    out << std::string(label_w, ' ');
    for (TaskId task : table.tasks) {
        char cell[32];
        std::snprintf(cell, sizeof(cell), " %13s", std::string(task_name(task)).c_str());
        out << cell;
    }
    out << "           avg   delta\n";
    for (const auto& row : table.rows) {
        out << row.label << std::string(label_w - row.label.size(), ' ');
        for (TaskId task : table.tasks) {
            char cell[32];
            std::snprintf(cell, sizeof(cell), " %13s", format_percent(row.per_task_pct.at(task)).c_str());
            out << cell;
        }
        char tail[64];
        std::snprintf(tail, sizeof(tail), " %13s", format_percent(row.average_pct).c_str());
        out << tail;
        if (row.label == table.baseline_label) {
            out << "  (base)";
        } else if (row.delta_pct) {
            out << "  (" << signed_cents(to_cents(*row.delta_pct)) << ")";
        }
        out << "\n";
    }
    return out.str();
}

std::string render_table_csv(const ComparisonTable& table) {
    std::ostringstream out;
    out << "label";
    for (TaskId task : table.tasks) out << ',' << task_name(task);
    out << ",average,delta_vs_baseline\n";
    for (const auto& row : table.rows) {
        out << row.label;
        for (TaskId task : table.tasks) out << ',' << format_percent(row.per_task_pct.at(task));
        out << ',' << format_percent(row.average_pct) << ',';
        if (row.delta_pct) out << format_percent(*row.delta_pct);
        out << '\n';
    }
    return out.str();
}

void emit_chart(const ComparisonTable& table, const std::filesystem::path& path) {
    if (table.rows.empty() || table.tasks.empty()) throw InvalidInputError("chart needs a nonempty table");

    const double plot_h = 280.0;
    const double bar_w = 16.0;
    const double bar_gap = 2.0;
    const double group_gap = 18.0;
    const double margin_l = 50.0;
    const double margin_top = 20.0;
    const double group_w =
        static_cast<double>(table.rows.size()) * (bar_w + bar_gap) - bar_gap + group_gap;
    const double plot_w = group_w * static_cast<double>(table.tasks.size());
    const double legend_w = 170.0;
    const double width = margin_l + plot_w + legend_w;
    const double height = margin_top + plot_h + 60.0;
    const double base_y = margin_top + plot_h;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt2(width) << "\" height=\"" << fmt2(height)
        << "\" viewBox=\"0 0 " << fmt2(width) << " " << fmt2(height) << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << fmt2(width) << "\" height=\"" << fmt2(height)
        << "\" fill=\"#ffffff\"/>\n";

    for (int tick = 0; tick <= 100; tick += 20) {
        double y = base_y - plot_h * tick / 100.0;
        svg << "<line x1=\"" << fmt2(margin_l) << "\" y1=\"" << fmt2(y) << "\" x2=\"" << fmt2(margin_l + plot_w)
            << "\" y2=\"" << fmt2(y) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt2(margin_l - 6.0) << "\" y=\"" << fmt2(y + 4.0)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick << "</text>\n";
    }

    for (size_t t = 0; t < table.tasks.size(); ++t) {
        double group_x = margin_l + group_w * static_cast<double>(t) + group_gap / 2.0;
        for (size_t r = 0; r < table.rows.size(); ++r) {
            double value = table.rows[r].per_task_pct.at(table.tasks[t]);
            double h = plot_h * value / 100.0;
            double x = group_x + static_cast<double>(r) * (bar_w + bar_gap);
            svg << "<rect class=\"bar\" data-task=\"" << task_name(table.tasks[t]) << "\" data-row=\""
                << table.rows[r].label << "\" data-value=\"" << fmt2(value) << "\" x=\"" << fmt2(x) << "\" y=\""
                << fmt2(base_y - h) << "\" width=\"" << fmt2(bar_w) << "\" height=\"" << fmt2(h) << "\" fill=\""
                << kPalette[r % 10] << "\"/>\n";
        }
        svg << "<text x=\"" << fmt2(group_x + (group_w - group_gap) / 2.0) << "\" y=\"" << fmt2(base_y + 14.0)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">" << task_name(table.tasks[t])
            << "</text>\n";
    }

    double legend_x = margin_l + plot_w + 16.0;
    for (size_t r = 0; r < table.rows.size(); ++r) {
        double y = margin_top + 10.0 + static_cast<double>(r) * 18.0;
        svg << "<rect x=\"" << fmt2(legend_x) << "\" y=\"" << fmt2(y) << "\" width=\"12\" height=\"12\" fill=\""
            << kPalette[r % 10] << "\"/>\n";
        svg << "<text x=\"" << fmt2(legend_x + 17.0) << "\" y=\"" << fmt2(y + 10.0)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << table.rows[r].label << "</text>\n";
    }
    svg << "</svg>\n";

    atomic_write_file(path, svg.str());
}

std::string render_stereoset_panel(const std::vector<RunInput>& runs) {
    struct PanelRow {
        std::string label;
        StereoMetrics metrics;
    };
    std::vector<PanelRow> rows;
    for (const auto& run : runs) {
        std::vector<EvalRecord> stereo;
        for (const auto& r : run.records) {
            if (task_spec(r.task_id).answer_mode == AnswerMode::StereoChoice) stereo.push_back(r);
        }
        if (stereo.empty()) continue;
        MetricReport report = compute_metrics(stereo, NeedsReviewPolicy::CountIncorrect, &run.overrides);
        rows.push_back({display_label(run.strategy.id()), *report.stereoset});
    }
    if (rows.empty()) throw BuildError("no stereoset records in the given runs");

    std::ostringstream out;
    size_t label_w = 8;
    for (const auto& row : rows) label_w = std::max(label_w, row.label.size());
    out << std::string(label_w, ' ') << "        LMS  Fair Score         N\n";
    for (const auto& row : rows) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-*s %10s %11s %9d\n", static_cast<int>(label_w), row.label.c_str(),
                      format_percent(row.metrics.lms * 100.0).c_str(),
                      format_percent(row.metrics.fair_score * 100.0).c_str(), row.metrics.classified_n);
        out << line;
    }
    return out.str();
}

std::string render_fewshot_panel(const std::vector<RunInput>& runs) {
    struct PanelRow {
        std::string label;
        PromptStrategy strategy;
        std::optional<double> ll2, ll4;
    };
    std::vector<PanelRow> rows;
    for (const auto& run : runs) {
        if (!run.strategy.is_few_shot()) {
            throw BuildError("run '" + run.label + "' is not a few-shot run (strategy " + run.strategy.id() + ")");
        }
        if (run.records.empty()) throw BuildError("run '" + run.label + "' has no records");
        MetricReport report = compute_metrics(run.records, NeedsReviewPolicy::CountIncorrect, &run.overrides);
        PanelRow row;
        row.label = shots_label(run.strategy);
        row.strategy = run.strategy;
        if (auto it = report.per_task.find(TaskId::LastLetter2); it != report.per_task.end()) {
            row.ll2 = it->second.accuracy * 100.0;
        }
        if (auto it = report.per_task.find(TaskId::LastLetter4); it != report.per_task.end()) {
            row.ll4 = it->second.accuracy * 100.0;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw BuildError("no few-shot runs given");

    // A plain few-shot cell is flagged when its paired RaR few-shot row (same
    // shot count) scores higher.
    auto paired = [&](const PanelRow& row) -> const PanelRow* {
        for (const auto& other : rows) {
            if (other.strategy.kind == StrategyKind::RaRPlusFewShotCoT &&
                other.strategy.shots == row.strategy.shots) {
                return &other;
            }
        }
        return nullptr;
    };

    std::ostringstream out;
    size_t label_w = 8;
    for (const auto& row : rows) label_w = std::max(label_w, row.label.size());
    out << std::string(label_w, ' ') << "  last_letter2  last_letter4\n";
    bool flagged = false;
    for (const auto& row : rows) {
        out << row.label << std::string(label_w - row.label.size(), ' ');
        const PanelRow* rar = row.strategy.kind == StrategyKind::FewShotCoT ? paired(row) : nullptr;
        auto cell = [&](std::optional<double> v, std::optional<double> rar_v) {
            if (!v) return std::string("             -");
            std::string s = format_percent(*v);
            if (rar && rar_v && *v < *rar_v) {
                s += "*";
                flagged = true;
            }
            char buf[32];
            std::snprintf(buf, sizeof(buf), " %13s", s.c_str());
            return std::string(buf);
        };
        out << cell(row.ll2, rar ? rar->ll2 : std::nullopt) << cell(row.ll4, rar ? rar->ll4 : std::nullopt) << "\n";
    }
    if (flagged) out << "* below the paired RaR few-shot row\n";
    return out.str();
}

}  // namespace rarbench
