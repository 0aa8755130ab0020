#include "rarbench/cli.hpp"

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rarbench/errors.hpp"
#include "rarbench/fixtures.hpp"
#include "rarbench/io.hpp"
#include "rarbench/report.hpp"
#include "rarbench/runner.hpp"

namespace rarbench {
namespace cli {
namespace {

std::atomic<bool> g_stop{false};

void handle_interrupt(int) { g_stop.store(true); }

std::string env_or_empty(const char* name) {
    const char* v = std::getenv(name);
    return v ? v : "";
}

struct RunOptions {
    std::vector<std::string> tasks;
    std::string strategy;
    std::string model;
    std::string rephraser_model;
    int rephrase_depth = 1;
    uint64_t seed = 0;
    int sample_size = -1;
    int shots = 1;
    std::string example_set = "flawed";
    std::string run_id;
    std::string out_dir = "runs";
    std::string data_dir = "data";
    std::string mock;
    std::string fixture;
    std::string base_url;
    std::string questions;
    int workers = 4;
    int rate_limit = 0;
    int concurrency = 4;
    int max_attempts = 5;
    int base_delay_ms = 1000;
    int timeout_s = 120;
    std::string cache_dir;
    bool no_cache = false;
    std::vector<std::string> signals;
    std::string config_file;
};

// Config file (JSON object) supplies defaults; explicit flags win. The env
// carries credentials only, plus the base URL default.
void merge_config_file(const CLI::App* sub, RunOptions& opt) {
    if (opt.config_file.empty()) return;
    nlohmann::json j = nlohmann::json::parse(read_file(opt.config_file), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw InvalidInputError("config file " + opt.config_file + " is not a JSON object");
    }
    auto unset = [&](const char* flag) { return sub->count(flag) == 0; };
    if (j.contains("tasks") && unset("--task")) opt.tasks = j.at("tasks").get<std::vector<std::string>>();
    if (j.contains("strategy") && unset("--strategy")) opt.strategy = j.at("strategy").get<std::string>();
    if (j.contains("model") && unset("--model")) opt.model = j.at("model").get<std::string>();
    if (j.contains("rephraser_model") && unset("--rephraser-model")) {
        opt.rephraser_model = j.at("rephraser_model").get<std::string>();
    }
    if (j.contains("rephrase_depth") && unset("--rephrase-depth")) opt.rephrase_depth = j.at("rephrase_depth");
    if (j.contains("seed") && unset("--seed")) opt.seed = j.at("seed").get<uint64_t>();
    if (j.contains("sample_size") && unset("--sample-size")) opt.sample_size = j.at("sample_size");
    if (j.contains("shots") && unset("--shots")) opt.shots = j.at("shots");
    if (j.contains("example_set") && unset("--example-set")) opt.example_set = j.at("example_set");
    if (j.contains("run_id") && unset("--run-id")) opt.run_id = j.at("run_id");
    if (j.contains("out_dir") && unset("--out-dir")) opt.out_dir = j.at("out_dir");
    if (j.contains("data_dir") && unset("--data-dir")) opt.data_dir = j.at("data_dir");
    if (j.contains("mock") && unset("--mock")) opt.mock = j.at("mock");
    if (j.contains("fixture") && unset("--fixture")) opt.fixture = j.at("fixture");
    if (j.contains("base_url") && unset("--base-url")) opt.base_url = j.at("base_url");
    if (j.contains("questions") && unset("--questions")) opt.questions = j.at("questions");
    if (j.contains("workers") && unset("--workers")) opt.workers = j.at("workers");
    if (j.contains("rate_limit") && unset("--rate-limit")) opt.rate_limit = j.at("rate_limit");
    if (j.contains("concurrency") && unset("--concurrency")) opt.concurrency = j.at("concurrency");
    if (j.contains("max_attempts") && unset("--max-attempts")) opt.max_attempts = j.at("max_attempts");
    if (j.contains("base_delay_ms") && unset("--base-delay-ms")) opt.base_delay_ms = j.at("base_delay_ms");
    if (j.contains("timeout_s") && unset("--timeout")) opt.timeout_s = j.at("timeout_s");
    if (j.contains("cache_dir") && unset("--cache-dir")) opt.cache_dir = j.at("cache_dir");
    if (j.contains("insufficiency_signals") && opt.signals.empty()) {
        opt.signals = j.at("insufficiency_signals").get<std::vector<std::string>>();
    }
}

ExperimentConfig build_experiment_config(const RunOptions& opt) {
    ExperimentConfig config;
    for (const auto& t : opt.tasks) config.task_ids.push_back(task_from_name(t));
    config.strategy = PromptStrategy::from_id(opt.strategy);
    config.strategy.shots = opt.shots;
    if (opt.example_set == "flawed") {
        config.strategy.example_set = prompts::ExampleLabel::Flawed;
    } else if (opt.example_set == "improved" || opt.example_set == "rar_improved") {
        config.strategy.example_set = prompts::ExampleLabel::RaRImproved;
    } else {
        throw InvalidInputError("--example-set wants flawed or improved");
    }
    config.responder_model = opt.model;
    if (!opt.rephraser_model.empty()) config.rephraser_model = opt.rephraser_model;
    config.rephrase_depth = opt.rephrase_depth;
    config.seed = opt.seed;
    if (opt.sample_size > 0) config.sample_size = opt.sample_size;
    config.output_dir = opt.out_dir;
    config.data_dir = opt.data_dir;
    if (!opt.questions.empty()) config.instances_path = opt.questions;
    config.workers = opt.workers;
    config.extra_insufficiency_signals = opt.signals;

    int backend_picks = (!opt.mock.empty() ? 1 : 0) + (!opt.fixture.empty() ? 1 : 0);
    if (backend_picks > 1 || (backend_picks == 1 && !opt.base_url.empty())) {
        throw InvalidInputError("--mock, --fixture and --base-url are mutually exclusive");
    }
    if (!opt.mock.empty()) {
        if (opt.mock == "oracle") {
            config.backend.kind = BackendKind::OracleMock;
        } else if (opt.mock == "adversarial") {
            config.backend.kind = BackendKind::AdversarialMock;
        } else {
            throw InvalidInputError("--mock wants oracle or adversarial");
        }
    } else if (!opt.fixture.empty()) {
        config.backend.kind = BackendKind::Fixture;
        config.backend.fixture_path = opt.fixture;
    } else {
        config.backend.kind = BackendKind::Http;
        std::string url = !opt.base_url.empty() ? opt.base_url : env_or_empty("HARNESS_BASE_URL");
        if (url.empty()) {
            throw InvalidInputError("network runs need --base-url (or HARNESS_BASE_URL); or pick --mock/--fixture");
        }
        config.backend.base_url = url;
        config.backend.api_key = env_or_empty("HARNESS_API_KEY");
    }
    config.backend.timeout = std::chrono::seconds(opt.timeout_s);
    config.backend.gateway.rate_limit_per_minute = opt.rate_limit;
    config.backend.gateway.concurrency_limit = opt.concurrency;
    config.backend.gateway.retry.max_attempts = opt.max_attempts;
    config.backend.gateway.retry.base_delay = std::chrono::milliseconds(opt.base_delay_ms);
    if (!opt.no_cache) {
        if (!opt.cache_dir.empty()) {
            config.backend.gateway.cache_dir = opt.cache_dir;
        } else if (config.backend.kind == BackendKind::Http) {
            config.backend.gateway.cache_dir = std::filesystem::path(opt.out_dir) / "cache";
        }
    }

    if (config.run_id.empty()) {
        std::string id = opt.run_id;
        if (id.empty()) {
            id = config.strategy.id() + "-" + config.responder_model + "-s" + std::to_string(config.seed);
            for (auto& c : id) {
                if (c == '/' || c == ' ') c = '_';
            }
        }
        config.run_id = id;
    }
    return config;
}

int do_gen(const std::string& task_name_str, uint64_t seed, int n, const std::string& out,
           const std::string& data_dir) {
    TaskId task = task_from_name(task_name_str);
    DataPaths paths{data_dir};
    std::vector<std::string> warnings;
    auto instances = build_instances(task, paths, seed, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    size_t want = n > 0 ? static_cast<size_t>(n) : static_cast<size_t>(task_spec(task).default_size);
    instances = sample_instances(std::move(instances), want,
                                 derive_seed(seed, std::string(task_name(task)) + ".sample"));
    std::string body;
    for (const auto& q : instances) {
        body += instance_to_json(q).dump();
        body.push_back('\n');
    }
    atomic_write_file(out, body);
    std::cerr << "wrote " << instances.size() << " instances to " << out << "\n";
    return 0;
}

void print_run_result(const RunResult& result) {
    std::cerr << "run complete: " << result.processed << " processed, " << result.total_records
              << " records total";
    if (result.fixture_misses > 0) std::cerr << ", " << result.fixture_misses << " fixture misses";
    std::cerr << "\n";
    std::cout << render_summary(result.metrics);
}

int do_grade(const std::string& run_dir_str, const std::string& review_file, const std::string& needs_review) {
    std::filesystem::path run_dir(run_dir_str);
    auto records = load_run_records(run_dir / "records.jsonl");
    if (records.empty()) throw InvalidInputError("no records in " + run_dir_str);

    // Regrade gold-graded records from their stored raw responses; stereoset
    // classifications stay as recorded (they need the full choice context).
    for (auto& r : records) {
        if (task_spec(r.task_id).answer_mode == AnswerMode::StereoChoice) continue;
        if (r.raw_responses.empty()) continue;
        QuestionInstance q;
        q.task_id = r.task_id;
        q.text = r.question_text;
        q.question_id = r.question_id;
        q.gold_answers = r.gold_answers;
        q.wrong_answers = r.wrong_answers;
        r.outcome = grade(r.raw_responses.back(), q);
    }

    ReviewOverrides overrides;
    std::filesystem::path overrides_path = run_dir / "review.overrides.csv";
    if (!review_file.empty()) {
        std::ifstream in(review_file);
        if (!in) throw InvalidInputError("cannot open review file " + review_file);
        overrides = review_import(records, in);
        std::filesystem::copy_file(review_file, overrides_path, std::filesystem::copy_options::overwrite_existing);
    } else if (std::filesystem::exists(overrides_path)) {
        std::ifstream in(overrides_path);
        overrides = review_import(records, in);
    }

    NeedsReviewPolicy policy =
        needs_review == "exclude" ? NeedsReviewPolicy::Exclude : NeedsReviewPolicy::CountIncorrect;
    MetricReport report = compute_metrics(records, policy, &overrides);
    atomic_write_file(run_dir / "summary.txt", render_summary(report));
    std::cout << render_summary(report);
    return 0;
}

int do_report(const std::vector<std::string>& run_dirs, std::string baseline, const std::string& table_out,
              const std::string& csv_out, const std::string& chart_out, bool stereoset_panel, bool fewshot_panel) {
    std::vector<RunInput> runs;
    for (const auto& dir : run_dirs) runs.push_back(load_run_input(dir));
    if (runs.empty()) throw InvalidInputError("report needs at least one run");

    if (stereoset_panel) {
        std::cout << render_stereoset_panel(runs);
        return 0;
    }
    if (fewshot_panel) {
        std::cout << render_fewshot_panel(runs);
        return 0;
    }

    if (baseline.empty()) baseline = runs.front().label;
    ComparisonTable table = build_table(runs, baseline);
    std::string text = render_table_text(table);
    if (table_out.empty()) {
        std::cout << text;
    } else {
        atomic_write_file(table_out, text);
    }
    if (!csv_out.empty()) atomic_write_file(csv_out, render_table_csv(table));
    if (!chart_out.empty()) emit_chart(table, chart_out);
    return 0;
}

int do_review_export(const std::string& run_dir_str, const std::string& out) {
    std::filesystem::path run_dir(run_dir_str);
    auto records = load_run_records(run_dir / "records.jsonl");
    std::ostringstream buf;
    review_export(records, buf);
    if (out.empty()) {
        std::cout << buf.str();
    } else {
        atomic_write_file(out, buf.str());
        std::cerr << "wrote review sheet to " << out << "\n";
    }
    return 0;
}

int do_cache(const std::string& action, const std::string& dir) {
    std::filesystem::path cache_dir(dir);
    if (action == "stats") {
        size_t entries = 0;
        uintmax_t bytes = 0;
        if (std::filesystem::exists(cache_dir)) {
            for (const auto& entry : std::filesystem::directory_iterator(cache_dir)) {
                if (entry.path().extension() == ".json") {
                    ++entries;
                    bytes += entry.file_size();
                }
            }
        }
        std::cout << "entries " << entries << "\nbytes " << bytes << "\n";
        return 0;
    }
    if (action == "clear") {
        size_t removed = 0;
        if (std::filesystem::exists(cache_dir)) {
            for (const auto& entry : std::filesystem::directory_iterator(cache_dir)) {
                if (entry.path().extension() == ".json") {
                    std::filesystem::remove(entry.path());
                    ++removed;
                }
            }
        }
        std::cerr << "removed " << removed << " cache entries\n";
        return 0;
    }
    throw InvalidInputError("cache action wants stats or clear");
}

int do_fixtures_verify(const std::string& data_dir) {
    bool all_ok = true;
    for (const auto& r : verify_fixture_digests(data_dir)) {
        std::cout << (r.ok ? "ok   " : "FAIL ") << "digest " << r.name << (r.ok ? "" : ": " + r.detail) << "\n";
        all_ok = all_ok && r.ok;
    }
    for (const auto& r : verify_golden_prompts(data_dir)) {
        std::cout << (r.ok ? "ok   " : "FAIL ") << r.name << (r.ok ? "" : ": " + r.detail) << "\n";
        all_ok = all_ok && r.ok;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"rephrase-and-respond prompting evaluation harness"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate task instances to a JSONL file");
    std::string gen_task, gen_out, gen_data = "data";
    uint64_t gen_seed = 0;
    int gen_n = -1;
    gen->add_option("--task", gen_task, "task id")->required();
    gen->add_option("--seed", gen_seed, "generation seed");
    gen->add_option("--n", gen_n, "instance count (default: task size)");
    gen->add_option("--out", gen_out, "output file")->required();
    gen->add_option("--data-dir", gen_data, "bundled data directory");

    // run
    auto* runc = app.add_subcommand("run", "run an experiment");
    RunOptions opt;
    runc->add_option("--task", opt.tasks, "task id (repeatable)");
    runc->add_option("--strategy", opt.strategy,
                     "original|rar|rar1..rar4|two_step|cot|rar_cot|fewshot_cot|rar_fewshot_cot");
    runc->add_option("--model", opt.model, "responder model name");
    runc->add_option("--rephraser-model", opt.rephraser_model, "rephrasing model (two_step)");
    runc->add_option("--rephrase-depth", opt.rephrase_depth, "iterated rephrasing depth (two_step)");
    runc->add_option("--seed", opt.seed, "sampling seed");
    runc->add_option("--sample-size", opt.sample_size, "instances per task");
    runc->add_option("--shots", opt.shots, "few-shot example count");
    runc->add_option("--example-set", opt.example_set, "flawed|improved few-shot example set");
    runc->add_option("--run-id", opt.run_id, "run directory name");
    runc->add_option("--out-dir", opt.out_dir, "runs root directory");
    runc->add_option("--data-dir", opt.data_dir, "bundled data directory");
    runc->add_option("--mock", opt.mock, "oracle|adversarial deterministic backend");
    runc->add_option("--fixture", opt.fixture, "replay canned responses from a fixture file");
    runc->add_option("--base-url", opt.base_url, "chat-completions endpoint base URL");
    runc->add_option("--questions", opt.questions, "run on instances from a gen'd file");
    runc->add_option("--workers", opt.workers, "worker threads");
    runc->add_option("--rate-limit", opt.rate_limit, "max requests per minute (0 = off)");
    runc->add_option("--concurrency", opt.concurrency, "max in-flight requests");
    runc->add_option("--max-attempts", opt.max_attempts, "retry budget per request");
    runc->add_option("--base-delay-ms", opt.base_delay_ms, "retry backoff base delay");
    runc->add_option("--timeout", opt.timeout_s, "per-request timeout in seconds");
    runc->add_option("--cache-dir", opt.cache_dir, "response cache directory");
    runc->add_flag("--no-cache", opt.no_cache, "disable the response cache");
    runc->add_option("--config", opt.config_file, "JSON config file supplying any flag");

    // resume
    auto* resume = app.add_subcommand("resume", "resume an interrupted run");
    std::string resume_dir;
    resume->add_option("--run", resume_dir, "run directory")->required();

    // grade
    auto* gradec = app.add_subcommand("grade", "regrade a run and recompute metrics");
    std::string grade_dir, grade_review, grade_policy = "incorrect";
    gradec->add_option("--run", grade_dir, "run directory")->required();
    gradec->add_option("--review", grade_review, "review verdicts to apply");
    gradec->add_option("--needs-review", grade_policy, "incorrect|exclude treatment of unresolved items");

    // report
    auto* reportc = app.add_subcommand("report", "comparison tables, panels and charts");
    std::vector<std::string> report_runs;
    std::string report_baseline, report_table, report_csv, report_chart;
    bool report_stereo = false, report_fewshot = false;
    reportc->add_option("--runs", report_runs, "run directories")->required()->expected(-1);
    reportc->add_option("--baseline", report_baseline, "baseline run label (default: first run)");
    reportc->add_option("--table", report_table, "write the text table here (default: stdout)");
    reportc->add_option("--csv", report_csv, "write a CSV export here");
    reportc->add_option("--chart", report_chart, "write a grouped-bar SVG here");
    reportc->add_flag("--stereoset-panel", report_stereo, "print the LMS/Fair panel instead");
    reportc->add_flag("--fewshot-panel", report_fewshot, "print the few-shot panel instead");

    // review-export / review-import
    auto* rexport = app.add_subcommand("review-export", "export NeedsReview records for human verdicts");
    std::string rexport_dir, rexport_out;
    rexport->add_option("--run", rexport_dir, "run directory")->required();
    rexport->add_option("--out", rexport_out, "output CSV (default: stdout)");

    auto* rimport = app.add_subcommand("review-import", "apply human verdicts and re-derive metrics");
    std::string rimport_dir, rimport_file;
    rimport->add_option("--run", rimport_dir, "run directory")->required();
    rimport->add_option("--file", rimport_file, "edited review CSV")->required();

    // cache
    auto* cachec = app.add_subcommand("cache", "inspect or clear the response cache");
    std::string cache_action, cache_dir;
    cachec->add_option("action", cache_action, "stats|clear")->required();
    cachec->add_option("--dir", cache_dir, "cache directory")->required();

    // fixtures
    auto* fixturesc = app.add_subcommand("fixtures", "fixture utilities");
    std::string fixtures_action, fixtures_data = "data";
    fixturesc->add_option("action", fixtures_action, "verify")->required();
    fixturesc->add_option("--data-dir", fixtures_data, "bundled data directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return do_gen(gen_task, gen_seed, gen_n, gen_out, gen_data);

        if (runc->parsed()) {
            ExperimentConfig config;
            try {
                merge_config_file(runc, opt);
                if (opt.tasks.empty()) throw InvalidInputError("run needs at least one --task");
                if (opt.strategy.empty()) throw InvalidInputError("run needs --strategy");
                if (opt.model.empty()) throw InvalidInputError("run needs --model");
                config = build_experiment_config(opt);
                config.validate();
            } catch (const InvalidInputError& e) {
                std::cerr << "usage error: " << e.what() << "\n";
                return 2;
            }
            std::signal(SIGINT, handle_interrupt);
            RunResult result = run_experiment(config, nullptr, &g_stop, &std::cerr);
            if (g_stop.load()) {
                std::cerr << "interrupted; completed records persisted in " << result.run_dir << "\n";
                return 1;
            }
            print_run_result(result);
            return 0;
        }

        if (resume->parsed()) {
            std::signal(SIGINT, handle_interrupt);
            RunResult result = resume_run(resume_dir, nullptr, &g_stop, &std::cerr);
            if (g_stop.load()) {
                std::cerr << "interrupted; completed records persisted in " << result.run_dir << "\n";
                return 1;
            }
            print_run_result(result);
            return 0;
        }

        if (gradec->parsed()) {
            if (grade_policy != "incorrect" && grade_policy != "exclude") {
                std::cerr << "usage error: --needs-review wants incorrect or exclude\n";
                return 2;
            }
            return do_grade(grade_dir, grade_review, grade_policy);
        }

        if (reportc->parsed()) {
            return do_report(report_runs, report_baseline, report_table, report_csv, report_chart, report_stereo,
                             report_fewshot);
        }

        if (rexport->parsed()) return do_review_export(rexport_dir, rexport_out);

        if (rimport->parsed()) {
            std::ifstream probe(rimport_file);
            if (!probe) throw InvalidInputError("cannot open review file " + rimport_file);
            return do_grade(rimport_dir, rimport_file, "incorrect");
        }

        if (cachec->parsed()) {
            if (cache_action != "stats" && cache_action != "clear") {
                std::cerr << "usage error: cache action wants stats or clear\n";
                return 2;
            }
            return do_cache(cache_action, cache_dir);
        }

        if (fixturesc->parsed()) {
            if (fixtures_action != "verify") {
                std::cerr << "usage error: fixtures action wants verify\n";
                return 2;
            }
            return do_fixtures_verify(fixtures_data);
        }
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace cli
}  // namespace rarbench
