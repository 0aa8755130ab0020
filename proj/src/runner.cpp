#include "rarbench/runner.hpp"

#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "rarbench/errors.hpp"
#include "rarbench/io.hpp"
#include "rarbench/strings.hpp"

namespace rarbench {
namespace {

std::unique_ptr<Backend> make_backend(const BackendSettings& settings) {
    switch (settings.kind) {
        case BackendKind::OracleMock:
            return std::make_unique<OracleMockBackend>(false);
        case BackendKind::AdversarialMock:
            return std::make_unique<OracleMockBackend>(true);
        case BackendKind::Fixture:
            return std::make_unique<FixtureBackend>(FixtureBackend::from_file(settings.fixture_path));
        case BackendKind::Http: {
            HttpBackendConfig cfg;
            cfg.base_url = settings.base_url;
            cfg.api_key = settings.api_key;
            cfg.timeout = settings.timeout;
            return std::make_unique<HttpBackend>(cfg);
        }
    }
    throw InvalidInputError("unknown backend kind");
}

std::string_view backend_kind_name(BackendKind kind) {
    switch (kind) {
        case BackendKind::Http: return "http";
        case BackendKind::OracleMock: return "oracle_mock";
        case BackendKind::AdversarialMock: return "adversarial_mock";
        case BackendKind::Fixture: return "fixture";
    }
    return "http";
}

BackendKind backend_kind_from_name(std::string_view name) {
    if (name == "http") return BackendKind::Http;
    if (name == "oracle_mock") return BackendKind::OracleMock;
    if (name == "adversarial_mock") return BackendKind::AdversarialMock;
    if (name == "fixture") return BackendKind::Fixture;
    throw InvalidInputError("unknown backend kind '" + std::string(name) + "'");
}

ChatRequest make_request(const std::string& model, const std::string& prompt,
                         std::map<std::string, std::string> metadata) {
    ChatRequest request;
    request.model_name = model;
    request.messages = {{"user", prompt}};
    request.temperature = 0.0;
    request.opaque_metadata = std::move(metadata);
    return request;
}

std::map<std::string, std::string> instance_metadata(const QuestionInstance& q, std::string_view phase) {
    std::map<std::string, std::string> meta;
    meta["question_id"] = q.question_id;
    meta["phase"] = std::string(phase);
    if (!q.gold_answers.empty()) meta["gold_answer"] = q.gold_answers.front();
    if (!q.wrong_answers.empty()) meta["wrong_answer"] = q.wrong_answers.front();
    return meta;
}

void record_exchange(ChatTrace& trace, const std::string& prompt, const ChatResponse& response) {
    trace.prompts.push_back(prompt);
    trace.responses.push_back(response.content);
    trace.timing_ms.push_back(response.latency_ms);
    trace.cache_hits.push_back(response.cache_hit);
}

// Serialized appends; one flushed line per record so a crash can tear at most
// the final line.
class RecordWriter {
public:
    explicit RecordWriter(const std::filesystem::path& path) : out_(path, std::ios::app | std::ios::binary) {
        if (!out_) throw LoadError("cannot open " + path.string() + " for append");
    }

    void append(const EvalRecord& record) {
        std::string line = record_to_json(record).dump();
        line.push_back('\n');
        std::lock_guard lock(mu_);
        out_.write(line.data(), static_cast<std::streamsize>(line.size()));
        out_.flush();
    }

private:
    std::mutex mu_;
    std::ofstream out_;
};

}  // namespace

std::string PromptStrategy::id() const {
    switch (kind) {
        case StrategyKind::Original: return "original";
        case StrategyKind::RaR: return "rar";
        case StrategyKind::RaRVariant: return "rar" + std::to_string(variant_k);
        case StrategyKind::TwoStep: return "two_step";
        case StrategyKind::ZeroShotCoT: return "cot";
        case StrategyKind::RaRPlusCoT: return "rar_cot";
        case StrategyKind::FewShotCoT: return "fewshot_cot";
        case StrategyKind::RaRPlusFewShotCoT: return "rar_fewshot_cot";
    }
    return "original";
}

PromptStrategy PromptStrategy::from_id(std::string_view id) {
    PromptStrategy s;
    if (id == "original") {
        s.kind = StrategyKind::Original;
    } else if (id == "rar") {
        s.kind = StrategyKind::RaR;
    } else if (id == "rar1" || id == "rar2" || id == "rar3" || id == "rar4") {
        s.kind = StrategyKind::RaRVariant;
        s.variant_k = id[3] - '0';
    } else if (id == "two_step") {
        s.kind = StrategyKind::TwoStep;
    } else if (id == "cot") {
        s.kind = StrategyKind::ZeroShotCoT;
    } else if (id == "rar_cot") {
        s.kind = StrategyKind::RaRPlusCoT;
    } else if (id == "fewshot_cot") {
        s.kind = StrategyKind::FewShotCoT;
    } else if (id == "rar_fewshot_cot") {
        s.kind = StrategyKind::RaRPlusFewShotCoT;
    } else {
        throw InvalidInputError("unknown strategy '" + std::string(id) + "'");
    }
    return s;
}

void ExperimentConfig::validate() const {
    if (run_id.empty()) throw InvalidInputError("config needs a run_id");
    if (task_ids.empty()) throw InvalidInputError("config needs at least one task");
    if (responder_model.empty()) throw InvalidInputError("config needs a responder model");
    if (strategy.is_two_step() && (!rephraser_model || rephraser_model->empty())) {
        throw InvalidInputError("two_step runs need a rephrasing model (it may equal the responder)");
    }
    if (rephrase_depth < 1) throw InvalidInputError("rephrase_depth must be >= 1");
    if (rephrase_depth > 1 && !strategy.is_two_step()) {
        throw InvalidInputError("rephrase_depth > 1 is only meaningful for two_step");
    }
    if (strategy.kind == StrategyKind::RaRVariant && (strategy.variant_k < 1 || strategy.variant_k > 4)) {
        throw InvalidInputError("variant strategies are rar1..rar4");
    }
    if (strategy.is_few_shot() && strategy.shots < 1) throw InvalidInputError("shots must be >= 1");
    if (workers < 1) throw InvalidInputError("workers must be >= 1");
    if (sample_size && *sample_size < 1) throw InvalidInputError("sample_size must be >= 1");
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json tasks = nlohmann::json::array();
    for (TaskId t : task_ids) tasks.push_back(task_name(t));
    nlohmann::json j{
        {"run_id", run_id},
        {"tasks", tasks},
        {"strategy", strategy.id()},
        {"shots", strategy.shots},
        {"example_set", strategy.example_set == prompts::ExampleLabel::Flawed ? "flawed" : "rar_improved"},
        {"responder_model", responder_model},
        {"rephrase_depth", rephrase_depth},
        {"seed", seed},
        {"output_dir", output_dir.string()},
        {"data_dir", data_dir.string()},
        {"workers", workers},
        {"backend",
         {{"kind", backend_kind_name(backend.kind)},
          {"base_url", backend.base_url},
          {"fixture_path", backend.fixture_path.string()},
          {"rate_limit_per_minute", backend.gateway.rate_limit_per_minute},
          {"concurrency_limit", backend.gateway.concurrency_limit},
          {"max_attempts", backend.gateway.retry.max_attempts},
          {"base_delay_ms", backend.gateway.retry.base_delay.count()},
          {"timeout_s", backend.timeout.count()},
          {"cache_dir", backend.gateway.cache_dir ? backend.gateway.cache_dir->string() : ""}}},
    };
    if (rephraser_model) j["rephraser_model"] = *rephraser_model;
    if (sample_size) j["sample_size"] = *sample_size;
    if (instances_path) j["instances_path"] = instances_path->string();
    if (!extra_insufficiency_signals.empty()) j["insufficiency_signals"] = extra_insufficiency_signals;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.run_id = j.at("run_id").get<std::string>();
    for (const auto& t : j.at("tasks")) c.task_ids.push_back(task_from_name(t.get<std::string>()));
    c.strategy = PromptStrategy::from_id(j.at("strategy").get<std::string>());
    c.strategy.shots = j.value("shots", 1);
    if (j.value("example_set", "flawed") == std::string("rar_improved")) {
        c.strategy.example_set = prompts::ExampleLabel::RaRImproved;
    }
    c.responder_model = j.at("responder_model").get<std::string>();
    if (j.contains("rephraser_model")) c.rephraser_model = j.at("rephraser_model").get<std::string>();
    c.rephrase_depth = j.value("rephrase_depth", 1);
    c.seed = j.at("seed").get<uint64_t>();
    if (j.contains("sample_size")) c.sample_size = j.at("sample_size").get<int>();
    c.output_dir = j.at("output_dir").get<std::string>();
    c.data_dir = j.at("data_dir").get<std::string>();
    if (j.contains("instances_path")) c.instances_path = j.at("instances_path").get<std::string>();
    c.workers = j.value("workers", 4);
    if (j.contains("insufficiency_signals")) {
        c.extra_insufficiency_signals = j.at("insufficiency_signals").get<std::vector<std::string>>();
    }
    const auto& b = j.at("backend");
    c.backend.kind = backend_kind_from_name(b.at("kind").get<std::string>());
    c.backend.base_url = b.value("base_url", "");
    c.backend.fixture_path = b.value("fixture_path", "");
    c.backend.gateway.rate_limit_per_minute = b.value("rate_limit_per_minute", 0);
    c.backend.gateway.concurrency_limit = b.value("concurrency_limit", 4);
    c.backend.gateway.retry.max_attempts = b.value("max_attempts", 5);
    c.backend.gateway.retry.base_delay = std::chrono::milliseconds(b.value("base_delay_ms", 1000));
    c.backend.timeout = std::chrono::seconds(b.value("timeout_s", 120));
    std::string cache = b.value("cache_dir", "");
    if (!cache.empty()) c.backend.gateway.cache_dir = cache;
    return c;
}

std::vector<QuestionInstance> select_instances(const ExperimentConfig& config,
                                               std::vector<std::string>* warnings) {
    DataPaths paths{config.data_dir};
    std::vector<QuestionInstance> selected;
    if (config.instances_path) {
        auto records = read_jsonl(*config.instances_path);
        std::vector<QuestionInstance> all;
        for (const auto& rec : records) all.push_back(instance_from_json(rec.value));
        for (TaskId task : config.task_ids) {
            std::vector<QuestionInstance> mine;
            for (const auto& q : all) {
                if (q.task_id == task) mine.push_back(q);
            }
            size_t want = config.sample_size ? static_cast<size_t>(*config.sample_size) : mine.size();
            auto sampled = sample_instances(std::move(mine), want,
                                            derive_seed(config.seed, std::string(task_name(task)) + ".sample"));
            selected.insert(selected.end(), sampled.begin(), sampled.end());
        }
        return selected;
    }
    for (TaskId task : config.task_ids) {
        auto instances = build_instances(task, paths, config.seed, warnings);
        size_t want = config.sample_size ? static_cast<size_t>(*config.sample_size)
                                         : static_cast<size_t>(task_spec(task).default_size);
        auto sampled = sample_instances(std::move(instances), want,
                                        derive_seed(config.seed, std::string(task_name(task)) + ".sample"));
        selected.insert(selected.end(), sampled.begin(), sampled.end());
    }
    return selected;
}

std::vector<std::string> iterate_rephrase(std::string_view question, int depth, Gateway& gateway,
                                          const std::string& rephraser_model, ChatTrace* trace,
                                          const std::map<std::string, std::string>& metadata) {
    if (depth < 1) throw InvalidInputError("rephrase depth must be >= 1");
    std::vector<std::string> chain;
    std::string current(question);
    for (int i = 0; i < depth; ++i) {
        std::string prompt = prompts::render_two_step_rephrase(current);
        auto meta = metadata;
        meta["phase"] = "rephrase" + std::string(i == 0 ? "" : ":" + std::to_string(i + 1));
        ChatResponse response = gateway.complete(make_request(rephraser_model, prompt, std::move(meta)));
        if (trace) record_exchange(*trace, prompt, response);
        chain.push_back(response.content);
        current = response.content;
    }
    return chain;
}

std::string render_final_prompt(const PromptStrategy& strategy, TaskId task, std::string_view question,
                                std::span<const prompts::FewShotExample> examples) {
    std::string body;
    switch (strategy.kind) {
        case StrategyKind::Original:
            body = std::string(question);
            break;
        case StrategyKind::RaR:
            body = prompts::render_rar(question);
            break;
        case StrategyKind::RaRVariant:
            body = prompts::render_variant(question, strategy.variant_k);
            break;
        case StrategyKind::ZeroShotCoT:
            body = prompts::render_zero_shot_cot(question);
            break;
        case StrategyKind::RaRPlusCoT:
            body = prompts::render_rar_cot(question);
            break;
        case StrategyKind::FewShotCoT:
            body = prompts::render_few_shot(examples, question);
            break;
        case StrategyKind::RaRPlusFewShotCoT:
            // The query block carries the RaR wrapper, so the model both follows
            // the examples and rephrases before answering.
            body = prompts::render_few_shot(examples, prompts::render_rar(question));
            break;
        case StrategyKind::TwoStep:
            throw InvalidInputError("two_step prompts are rendered per phase, not via render_final_prompt");
    }
    std::string final_prompt = prompts::apply_format_suffix(task, body);
    if (prompts::has_format_suffix(task)) {
        if (count_occurrences(final_prompt, std::string(prompts::format_suffix(task))) != 1) {
            throw std::logic_error("format suffix must appear exactly once in the final prompt");
        }
    }
    return final_prompt;
}

std::vector<EvalRecord> load_run_records(const std::filesystem::path& records_file) {
    std::vector<EvalRecord> records;
    if (!std::filesystem::exists(records_file)) return records;
    for (const auto& rec : read_jsonl(records_file, /*drop_torn_tail=*/true)) {
        records.push_back(record_from_json(rec.value));
    }
    return records;
}

namespace {

struct RunState {
    RunState(const ExperimentConfig& c, Gateway& g, std::vector<prompts::FewShotExample> ex, RecordWriter& w,
             std::atomic<bool>* s, std::ostream* p)
        : config(c), gateway(g), examples(std::move(ex)), writer(w), stop(s), progress(p) {}

    const ExperimentConfig& config;
    Gateway& gateway;
    std::vector<prompts::FewShotExample> examples;
    RecordWriter& writer;
    std::atomic<bool>* stop;
    std::ostream* progress;
    std::mutex progress_mu;
    std::atomic<int> processed{0};
    std::atomic<int> fixture_misses{0};
    std::atomic<bool> failed{false};
    std::mutex error_mu;
    std::exception_ptr first_error;

    bool stopping() const {
        return (stop && stop->load()) || failed.load();
    }
    void note_error(std::exception_ptr e) {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = e;
        failed.store(true);
    }
};

EvalRecord base_record(const ExperimentConfig& config, const QuestionInstance& q) {
    EvalRecord r;
    r.run_id = config.run_id;
    r.record_id = config.run_id + "/" + q.question_id;
    r.task_id = q.task_id;
    r.question_id = q.question_id;
    r.strategy = config.strategy.id();
    r.model = config.responder_model;
    r.rephraser_model = config.rephraser_model;
    r.question_text = q.text;
    r.gold_answers = q.gold_answers;
    r.wrong_answers = q.wrong_answers;
    return r;
}

void finish_record(EvalRecord& r, const QuestionInstance& q, const ExperimentConfig& config,
                   const ChatTrace& trace) {
    r.prompts = trace.prompts;
    r.raw_responses = trace.responses;
    r.timing_ms = trace.timing_ms;
    r.cache_hits = trace.cache_hits;
    if (!trace.responses.empty()) {
        const std::string& final_response = trace.responses.back();
        if (task_spec(q.task_id).answer_mode == AnswerMode::StereoChoice) {
            StereoClass c = stereoset_classify(final_response, q, config.extra_insufficiency_signals);
            r.stereo_class = c;
            if (c == StereoClass::NeedsReview) {
                r.outcome = {OutcomeValue::NeedsReview, "unclassified stereoset response"};
            } else {
                r.outcome = {OutcomeValue::Correct, std::string("classified:") + std::string(stereo_class_name(c))};
            }
        } else {
            r.outcome = grade(final_response, q);
        }
    }
}

void process_instance(RunState& state, const QuestionInstance& q) {
    const ExperimentConfig& config = state.config;
    EvalRecord record = base_record(config, q);
    ChatTrace trace;
    try {
        if (config.strategy.is_two_step()) {
            auto chain = iterate_rephrase(q.text, config.rephrase_depth, state.gateway, *config.rephraser_model,
                                          &trace, instance_metadata(q, "rephrase"));
            record.rephrased_questions = chain;
            std::string final_prompt = prompts::apply_format_suffix(
                q.task_id, prompts::render_two_step_respond(q.text, chain.back()));
            ChatResponse response = state.gateway.complete(
                make_request(config.responder_model, final_prompt, instance_metadata(q, "respond")));
            record_exchange(trace, final_prompt, response);
        } else {
            std::string final_prompt = render_final_prompt(config.strategy, q.task_id, q.text, state.examples);
            ChatResponse response = state.gateway.complete(
                make_request(config.responder_model, final_prompt, instance_metadata(q, "respond")));
            record_exchange(trace, final_prompt, response);
        }
        finish_record(record, q, config, trace);
    } catch (const FixtureMissError& e) {
        // Replay gaps are per-instance: flag and keep going.
        finish_record(record, q, config, trace);
        record.outcome = {OutcomeValue::NeedsReview, std::string("fixture-miss: ") + e.what()};
        state.fixture_misses.fetch_add(1);
    }
    state.writer.append(record);
    int done = state.processed.fetch_add(1) + 1;
    if (state.progress) {
        std::lock_guard lock(state.progress_mu);
        *state.progress << "[" << done << "] " << task_name(q.task_id) << " " << q.question_id << " "
                        << outcome_name(record.outcome.value) << "\n";
    }
}

RunResult execute(const ExperimentConfig& config, const std::vector<QuestionInstance>& pending,
                  Backend* backend_override, std::atomic<bool>* stop, std::ostream* progress) {
    std::filesystem::path dir = config.run_dir();
    std::filesystem::create_directories(dir);

    std::unique_ptr<Backend> owned;
    Backend* backend = backend_override;
    if (!backend) {
        owned = make_backend(config.backend);
        backend = owned.get();
    }
    Gateway gateway(*backend, config.backend.gateway);

    std::vector<prompts::FewShotExample> examples;
    if (config.strategy.is_few_shot()) {
        auto all = prompts::load_example_file(config.data_dir / "fewshot_examples.jsonl");
        auto set = prompts::filter_examples(all, config.strategy.example_set);
        if (static_cast<int>(set.size()) < config.strategy.shots) {
            throw InvalidInputError("example set has " + std::to_string(set.size()) + " entries, need " +
                                    std::to_string(config.strategy.shots));
        }
        set.resize(static_cast<size_t>(config.strategy.shots));
        examples = std::move(set);
    }

    RecordWriter writer(dir / "records.jsonl");
    RunState state(config, gateway, std::move(examples), writer, stop, progress);

    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            if (state.stopping()) return;
            size_t i = next.fetch_add(1);
            if (i >= pending.size()) return;
            try {
                process_instance(state, pending[i]);
            } catch (...) {
                state.note_error(std::current_exception());
                return;
            }
        }
    };

    int thread_count = std::min<int>(config.workers, static_cast<int>(pending.size()));
    std::vector<std::thread> threads;
    for (int i = 0; i < thread_count; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    if (state.first_error) std::rethrow_exception(state.first_error);

    RunResult result;
    result.run_dir = dir;
    result.processed = state.processed.load();
    result.fixture_misses = state.fixture_misses.load();
    auto records = load_run_records(dir / "records.jsonl");
    result.total_records = static_cast<int>(records.size());
    bool interrupted = stop && stop->load();
    if (!records.empty() && !interrupted) {
        result.metrics = compute_metrics(records);
        atomic_write_file(dir / "summary.txt", render_summary(result.metrics));
    }
    return result;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, Backend* backend_override, std::atomic<bool>* stop,
                         std::ostream* progress) {
    config.validate();
    std::filesystem::path dir = config.run_dir();
    if (std::filesystem::exists(dir / "records.jsonl")) {
        throw InvalidInputError("run directory already holds records: " + dir.string() + " (use resume)");
    }
    std::filesystem::create_directories(dir);
    atomic_write_file(dir / "config.snapshot", config.to_json().dump(2));

    std::vector<std::string> warnings;
    auto pending = select_instances(config, &warnings);
    if (progress) {
        for (const auto& w : warnings) *progress << "warning: " << w << "\n";
        *progress << "run " << config.run_id << ": " << pending.size() << " instances\n";
    }
    return execute(config, pending, backend_override, stop, progress);
}

RunResult resume_run(const std::filesystem::path& run_dir, Backend* backend_override, std::atomic<bool>* stop,
                     std::ostream* progress) {
    std::filesystem::path snapshot = run_dir / "config.snapshot";
    if (!std::filesystem::exists(snapshot)) {
        throw UnrecoverableRunError("missing config snapshot in " + run_dir.string());
    }
    nlohmann::json j = nlohmann::json::parse(read_file(snapshot), nullptr, false);
    if (j.is_discarded()) throw UnrecoverableRunError("corrupt config snapshot in " + run_dir.string());
    ExperimentConfig config = ExperimentConfig::from_json(j);
    config.validate();

    std::filesystem::path records_file = run_dir / "records.jsonl";
    if (std::filesystem::exists(records_file)) {
        // Drop a torn trailing line before appending anything new.
        size_t keep = jsonl_valid_prefix(records_file);
        if (keep < std::filesystem::file_size(records_file)) {
            std::filesystem::resize_file(records_file, keep);
            if (progress) *progress << "dropped torn trailing line in records.jsonl\n";
        }
    }

    std::set<std::string> done;
    for (const auto& r : load_run_records(records_file)) done.insert(r.question_id);

    auto selection = select_instances(config);
    std::set<std::string> selected_ids;
    for (const auto& q : selection) selected_ids.insert(q.question_id);
    for (const auto& id : done) {
        if (!selected_ids.count(id)) {
            throw UnrecoverableRunError("records contain question " + id +
                                        " outside the configured selection; data files changed?");
        }
    }

    std::vector<QuestionInstance> pending;
    for (auto& q : selection) {
        if (!done.count(q.question_id)) pending.push_back(std::move(q));
    }
    if (progress) {
        *progress << "resume " << config.run_id << ": " << done.size() << " done, " << pending.size()
                  << " pending\n";
    }
    return execute(config, pending, backend_override, stop, progress);
}

}  // namespace rarbench
