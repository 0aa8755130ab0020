#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rarbench/gateway.hpp"
#include "rarbench/metrics.hpp"
#include "rarbench/prompts.hpp"
#include "rarbench/records.hpp"
#include "rarbench/tasks.hpp"

namespace rarbench {

enum class StrategyKind {
    Original,
    RaR,
    RaRVariant,
    TwoStep,
    ZeroShotCoT,
    RaRPlusCoT,
    FewShotCoT,
    RaRPlusFewShotCoT,
};

struct PromptStrategy {
    StrategyKind kind = StrategyKind::Original;
    int variant_k = 0;  // 1..4 for RaRVariant
    int shots = 1;      // few-shot strategies
    prompts::ExampleLabel example_set = prompts::ExampleLabel::Flawed;

    // Stable CLI vocabulary: original, rar, rar1..rar4, two_step, cot,
    // rar_cot, fewshot_cot, rar_fewshot_cot.
    std::string id() const;
    static PromptStrategy from_id(std::string_view id);

    bool is_two_step() const { return kind == StrategyKind::TwoStep; }
    bool is_few_shot() const {
        return kind == StrategyKind::FewShotCoT || kind == StrategyKind::RaRPlusFewShotCoT;
    }
};

enum class BackendKind { Http, OracleMock, AdversarialMock, Fixture };

struct BackendSettings {
    BackendKind kind = BackendKind::Http;
    std::string base_url;
    std::string api_key;
    std::filesystem::path fixture_path;
    GatewayConfig gateway;
    std::chrono::seconds timeout{120};
};

struct ExperimentConfig {
    std::string run_id;
    std::vector<TaskId> task_ids;
    PromptStrategy strategy;
    std::string responder_model = "gpt-4";
    std::optional<std::string> rephraser_model;
    int rephrase_depth = 1;
    uint64_t seed = 0;
    std::optional<int> sample_size;
    BackendSettings backend;
    std::filesystem::path output_dir = "runs";
    std::filesystem::path data_dir = "data";
    std::optional<std::filesystem::path> instances_path;  // run on a gen'd file instead of task defaults
    int workers = 4;
    std::vector<std::string> extra_insufficiency_signals;

    void validate() const;  // throws InvalidInputError
    std::filesystem::path run_dir() const { return output_dir / run_id; }

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

struct RunResult {
    std::filesystem::path run_dir;
    int processed = 0;       // records appended by this invocation
    int total_records = 0;   // records on disk afterwards
    int fixture_misses = 0;
    MetricReport metrics;
};

// Everything sent and received while answering one instance.
struct ChatTrace {
    std::vector<std::string> prompts;
    std::vector<std::string> responses;
    std::vector<double> timing_ms;
    std::vector<bool> cache_hits;
};

// r1 = rephraser(rephrase(question)); r_i = rephraser(rephrase(r_{i-1})).
// Returns [r1..r_depth]; the trace records each exchange.
std::vector<std::string> iterate_rephrase(std::string_view question, int depth, Gateway& gateway,
                                          const std::string& rephraser_model, ChatTrace* trace = nullptr,
                                          const std::map<std::string, std::string>& metadata = {});

// The final responder prompt for a single-call strategy (suffix applied).
std::string render_final_prompt(const PromptStrategy& strategy, TaskId task, std::string_view question,
                                std::span<const prompts::FewShotExample> examples);

// Executes the experiment; appends to <run_dir>/records.jsonl and writes
// summary.txt. `backend_override` substitutes the configured backend (tests);
// a set `stop` flag makes the run wind down after in-flight work persists.
RunResult run_experiment(const ExperimentConfig& config, Backend* backend_override = nullptr,
                         std::atomic<bool>* stop = nullptr, std::ostream* progress = nullptr);

// Re-derives the pending set from the config snapshot and processes only that.
RunResult resume_run(const std::filesystem::path& run_dir, Backend* backend_override = nullptr,
                     std::atomic<bool>* stop = nullptr, std::ostream* progress = nullptr);

// Tolerates (and drops) a torn trailing line.
std::vector<EvalRecord> load_run_records(const std::filesystem::path& records_file);

// The deterministic instance selection for a config (per-task sampled).
std::vector<QuestionInstance> select_instances(const ExperimentConfig& config,
                                               std::vector<std::string>* warnings = nullptr);

}  // namespace rarbench
