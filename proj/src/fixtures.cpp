#include "rarbench/fixtures.hpp"

#include <sstream>

#include "rarbench/errors.hpp"
#include "rarbench/io.hpp"
#include "rarbench/prompts.hpp"
#include "rarbench/sha256.hpp"
#include "rarbench/strings.hpp"

namespace rarbench {
namespace {

// Bundled fixture files and their content digests. fixtures.golden records are
// verified by re-rendering; the digests guard against silent edits.
struct PinnedDigest {
    const char* file;
    const char* sha256;
};

const PinnedDigest kPinnedDigests[] = {
    {"prompts.golden", "db23da2f4c7c4976d8d1c667548e24c4ef82e809d6dfe063d5b8e8ce9ef2df41"},
    {"fewshot_examples.jsonl", "3884adf648f9b9165a4e98f9caab40f0c3da6d6b731ccfb9d05e10fac69cbf71"},
    {"transcripts.fixture.jsonl", "7ae9d38a2974916ae3609cc5997072cfa89dd2cccd21609bf702e9f37c8aa3dc"},
    {"transcripts.review.csv", "ccdb6728edea1738c942092d74c3f4bab5a17e8eb271ce3b79f541d6bca23db4"},
    {"iterated_rephrase.fixture.jsonl", "8bb9251751705c0d0dc9f4fed30576dd84661955318e7350c18fd6ed7c5a8eb5"},
};

std::string take_field(const std::string& line, const std::string& key) {
    return line.substr(key.size());
}

}  // namespace

std::vector<GoldenPrompt> load_golden_prompts(const std::filesystem::path& path) {
    std::string content = read_file(path);
    std::vector<GoldenPrompt> out;

    std::istringstream in(content);
    std::string line;
    GoldenPrompt cur;
    bool in_payload = false;
    bool payload_started = false;
    int line_no = 0;
    auto fail = [&](const std::string& msg) {
        throw LoadError(path.string() + ":" + std::to_string(line_no) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (in_payload) {
            if (line == "---") {
                if (cur.id.empty() || cur.op.empty()) fail("record needs id and op");
                out.push_back(cur);
                cur = {};
                in_payload = false;
                payload_started = false;
                continue;
            }
            if (payload_started) cur.expected.push_back('\n');
            cur.expected.append(line);
            payload_started = true;
            continue;
        }
        if (line.empty() || line[0] == '#') continue;
        if (starts_with(line, "id: ")) {
            cur.id = take_field(line, "id: ");
        } else if (starts_with(line, "op: ")) {
            cur.op = take_field(line, "op: ");
        } else if (starts_with(line, "task: ")) {
            cur.task = task_from_name(take_field(line, "task: "));
            cur.has_task = true;
        } else if (starts_with(line, "question: ")) {
            cur.question = take_field(line, "question: ");
        } else if (starts_with(line, "original: ")) {
            cur.original = take_field(line, "original: ");
        } else if (starts_with(line, "rephrased: ")) {
            cur.rephrased = take_field(line, "rephrased: ");
        } else if (starts_with(line, "k: ")) {
            cur.k = std::stoi(take_field(line, "k: "));
        } else if (starts_with(line, "examples: ")) {
            std::string spec = take_field(line, "examples: ");
            auto colon = spec.find(':');
            if (colon == std::string::npos) fail("examples field wants set:count");
            cur.example_set = spec.substr(0, colon);
            cur.example_count = std::stoi(spec.substr(colon + 1));
        } else if (line == "prompt:") {
            in_payload = true;
        } else {
            fail("unrecognized header line '" + line + "'");
        }
    }
    if (in_payload) throw LoadError(path.string() + ": unterminated record (missing ---)");
    if (out.empty()) throw LoadError(path.string() + ": no records");
    return out;
}

std::string render_golden(const GoldenPrompt& record, const std::filesystem::path& data_dir) {
    auto with_suffix = [&](std::string body) {
        return record.has_task ? prompts::apply_format_suffix(record.task, body) : body;
    };
    if (record.op == "rar") return with_suffix(prompts::render_rar(record.question));
    if (record.op == "variant") return with_suffix(prompts::render_variant(record.question, record.k));
    if (record.op == "two_step_rephrase") return prompts::render_two_step_rephrase(record.question);
    if (record.op == "two_step_respond") {
        return with_suffix(prompts::render_two_step_respond(record.original, record.rephrased));
    }
    if (record.op == "zero_shot_cot") return with_suffix(prompts::render_zero_shot_cot(record.question));
    if (record.op == "rar_cot") return with_suffix(prompts::render_rar_cot(record.question));
    if (record.op == "suffix") {
        if (!record.has_task) throw InvalidInputError("suffix record needs a task");
        return prompts::apply_format_suffix(record.task, record.question);
    }
    if (record.op == "few_shot") {
        auto all = prompts::load_example_file(data_dir / "fewshot_examples.jsonl");
        auto set = prompts::filter_examples(all, record.example_set == "flawed"
                                                     ? prompts::ExampleLabel::Flawed
                                                     : prompts::ExampleLabel::RaRImproved);
        if (static_cast<int>(set.size()) < record.example_count) {
            throw InvalidInputError("example set too small for record " + record.id);
        }
        set.resize(static_cast<size_t>(record.example_count));
        return with_suffix(prompts::render_few_shot(set, record.question));
    }
    throw InvalidInputError("unknown golden op '" + record.op + "'");
}

namespace {

std::string first_difference(const std::string& expected, const std::string& actual) {
    size_t n = std::min(expected.size(), actual.size());
    size_t i = 0;
    while (i < n && expected[i] == actual[i]) ++i;
    if (i == expected.size() && i == actual.size()) return {};
    std::ostringstream msg;
    msg << "differs at byte " << i << " (expected len " << expected.size() << ", got " << actual.size() << ")";
    return msg.str();
}

}  // namespace

std::vector<VerifyResult> verify_golden_prompts(const std::filesystem::path& data_dir) {
    std::vector<VerifyResult> results;
    for (const auto& record : load_golden_prompts(data_dir / "prompts.golden")) {
        VerifyResult r;
        r.name = record.id;
        try {
            std::string actual = render_golden(record, data_dir);
            if (actual == record.expected) {
                r.ok = true;
            } else {
                r.detail = first_difference(record.expected, actual);
            }
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::vector<VerifyResult> verify_fixture_digests(const std::filesystem::path& data_dir) {
    std::vector<VerifyResult> results;
    for (const auto& pin : kPinnedDigests) {
        VerifyResult r;
        r.name = pin.file;
        try {
            std::string digest = sha256_hex(read_file(data_dir / pin.file));
            if (digest == pin.sha256) {
                r.ok = true;
            } else {
                r.detail = "digest " + digest + " != pinned " + pin.sha256;
            }
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::vector<TranscriptItem> load_transcripts(const std::filesystem::path& path) {
    std::vector<TranscriptItem> out;
    for (const auto& rec : read_jsonl(path)) {
        const auto& v = rec.value;
        TranscriptItem item;
        item.table = v.at("table").get<std::string>();
        item.task = task_from_name(v.at("task").get<std::string>());
        item.question = v.at("question").get<std::string>();
        item.response = v.at("response").get<std::string>();
        item.gold = v.at("gold").get<std::vector<std::string>>();
        item.wrong = v.value("wrong", std::vector<std::string>{});
        item.expected_auto = outcome_from_name(v.at("expected_auto").get<std::string>());
        item.printed_label = v.at("printed_label").get<std::string>();
        if (item.printed_label != "correct" && item.printed_label != "incorrect") {
            throw LoadError(path.string() + ":" + std::to_string(rec.line) + ": printed_label must be correct|incorrect");
        }
        out.push_back(std::move(item));
    }
    if (out.empty()) throw LoadError(path.string() + ": no transcripts");
    return out;
}

Outcome regrade_transcript(const TranscriptItem& item) {
    QuestionInstance q;
    q.task_id = item.task;
    q.text = item.question;
    q.question_id = make_question_id(item.task, item.question);
    q.gold_answers = item.gold;
    q.wrong_answers = item.wrong;
    return grade(item.response, q);
}

std::string transcript_record_id(const TranscriptItem& item) {
    return item.table + "/" + make_question_id(item.task, item.question);
}

}  // namespace rarbench
