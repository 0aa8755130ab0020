#include "rarbench/tasks.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "rarbench/errors.hpp"
#include "rarbench/io.hpp"
#include "rarbench/rng.hpp"
#include "rarbench/sha256.hpp"
#include "rarbench/strings.hpp"

namespace rarbench {
namespace {

const std::vector<TaskSpec> kTaskSpecs = {
    {TaskId::EvenDay, "even_day", "Knowledge Classification", AnswerMode::YesNo, 105, true},
    {TaskId::EvenMonth, "even_month", "Knowledge Classification", AnswerMode::YesNo, 105, true},
    {TaskId::EvenYear, "even_year", "Knowledge Classification", AnswerMode::YesNo, 105, true},
    {TaskId::CompareAge, "compare_age", "Knowledge Comparison", AnswerMode::YesNo, 104, true},
    {TaskId::CSQA, "csqa", "Commonsense Reasoning", AnswerMode::MultipleChoice, 220, false},
    {TaskId::Dates, "dates", "Commonsense Reasoning", AnswerMode::DateString, 369, false},
    {TaskId::Sports, "sports", "Commonsense Reasoning", AnswerMode::YesNo, 220, false},
    {TaskId::LastLetter2, "last_letter2", "Symbolic Reasoning", AnswerMode::ExactString, 220, true},
    {TaskId::LastLetter4, "last_letter4", "Symbolic Reasoning", AnswerMode::ExactString, 220, true},
    {TaskId::CoinFlip, "coin_flip", "Symbolic Reasoning", AnswerMode::YesNo, 220, true},
    {TaskId::StereoSet, "stereoset", "Stereotypical Bias", AnswerMode::StereoChoice, 220, false},
    {TaskId::MaskedIdiom, "masked_idiom", "Knowledge Recall", AnswerMode::ExactString, 105, false},
};

QuestionInstance make_yes_no(TaskId task, std::string text, bool yes) {
    QuestionInstance q;
    q.task_id = task;
    q.text = std::move(text);
    q.question_id = make_question_id(task, q.text);
    q.gold_answers = {yes ? "yes" : "no"};
    q.wrong_answers = {yes ? "no" : "yes"};
    return q;
}

std::string letters_for_count(size_t n) {
    std::string letters;
    for (size_t i = 0; i < n; ++i) letters.push_back(static_cast<char>('A' + i));
    return letters;
}

}  // namespace

const std::vector<TaskSpec>& all_task_specs() { return kTaskSpecs; }

const TaskSpec& task_spec(TaskId id) {
    for (const auto& spec : kTaskSpecs) {
        if (spec.id == id) return spec;
    }
    throw InvalidInputError("unknown task id");
}

std::string_view task_name(TaskId id) { return task_spec(id).name; }

TaskId task_from_name(std::string_view name) {
    for (const auto& spec : kTaskSpecs) {
        if (spec.name == name) return spec.id;
    }
    throw InvalidInputError("unknown task '" + std::string(name) + "'");
}

std::string_view choice_role_name(ChoiceRole role) {
    switch (role) {
        case ChoiceRole::Stereo: return "stereo";
        case ChoiceRole::Anti: return "anti";
        case ChoiceRole::Unrelated: return "unrelated";
    }
    return "unrelated";
}

ChoiceRole choice_role_from_name(std::string_view name) {
    if (name == "stereo") return ChoiceRole::Stereo;
    if (name == "anti") return ChoiceRole::Anti;
    if (name == "unrelated") return ChoiceRole::Unrelated;
    throw InvalidInputError("unknown choice role '" + std::string(name) + "'");
}

std::string make_question_id(TaskId task, std::string_view text) {
    std::string key(task_name(task));
    key.push_back('\x1f');
    key.append(text);
    return sha256_hex(key).substr(0, 16);
}

nlohmann::json instance_to_json(const QuestionInstance& q) {
    nlohmann::json j{
        {"question_id", q.question_id},
        {"task_id", task_name(q.task_id)},
        {"text", q.text},
        {"gold_answers", q.gold_answers},
        {"wrong_answers", q.wrong_answers},
    };
    if (!q.choice_roles.empty()) {
        nlohmann::json roles = nlohmann::json::object();
        for (const auto& [letter, role] : q.choice_roles) roles[letter] = choice_role_name(role);
        j["choice_roles"] = std::move(roles);
    }
    if (!q.metadata.empty()) j["metadata"] = q.metadata;
    return j;
}

QuestionInstance instance_from_json(const nlohmann::json& j) {
    QuestionInstance q;
    q.task_id = task_from_name(j.at("task_id").get<std::string>());
    q.text = j.at("text").get<std::string>();
    q.question_id = j.value("question_id", make_question_id(q.task_id, q.text));
    q.gold_answers = j.value("gold_answers", std::vector<std::string>{});
    q.wrong_answers = j.value("wrong_answers", std::vector<std::string>{});
    if (j.contains("choice_roles")) {
        for (const auto& [letter, role] : j.at("choice_roles").items()) {
            q.choice_roles[letter] = choice_role_from_name(role.get<std::string>());
        }
    }
    if (j.contains("metadata")) {
        q.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    }
    return q;
}

std::vector<FactEntry> load_fact_table(const std::filesystem::path& path) {
    std::vector<FactEntry> facts;
    for (const auto& rec : read_jsonl(path)) {
        const auto& v = rec.value;
        if (!v.contains("name") || !v.contains("birth_date")) {
            throw LoadError(path.string() + ":" + std::to_string(rec.line) + ": fact needs name and birth_date");
        }
        std::string name = v.at("name").get<std::string>();
        Date date;
        try {
            date = parse_iso_date(v.at("birth_date").get<std::string>());
        } catch (const LoadError& e) {
            throw LoadError(path.string() + ":" + std::to_string(rec.line) + " (" + name + "): " + e.what());
        }
        facts.push_back({std::move(name), date});
    }
    if (facts.empty()) throw LoadError(path.string() + ": empty fact table");
    return facts;
}

std::vector<std::string> load_name_pool(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path.string());
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        std::string name = trim(line);
        if (!name.empty()) names.push_back(std::move(name));
    }
    if (names.empty()) throw LoadError(path.string() + ": empty name pool");
    return names;
}

std::vector<QuestionInstance> gen_birthday_parity(std::span<const FactEntry> facts, ParityField field) {
    if (facts.empty()) throw InvalidInputError("gen_birthday_parity: no facts");
    std::vector<QuestionInstance> out;
    out.reserve(facts.size());
    for (const auto& fact : facts) {
        if (!fact.birth_date.valid()) {
            throw InvalidInputError("invalid birth date for '" + fact.person_name + "': " + fact.birth_date.iso());
        }
        TaskId task;
        int value;
        std::string text;
        switch (field) {
            case ParityField::Day:
                task = TaskId::EvenDay;
                value = fact.birth_date.day;
                text = "Was " + fact.person_name + " born on an even day?";
                break;
            case ParityField::Month:
                task = TaskId::EvenMonth;
                value = fact.birth_date.month;
                text = "Was " + fact.person_name + " born in an even month?";
                break;
            case ParityField::Year:
                task = TaskId::EvenYear;
                value = fact.birth_date.year;
                text = "Was " + fact.person_name + " born in an even year?";
                break;
            default:
                throw InvalidInputError("unknown parity field");
        }
        QuestionInstance q = make_yes_no(task, std::move(text), value % 2 == 0);
        q.metadata["person"] = fact.person_name;
        q.metadata["birth_date"] = fact.birth_date.iso();
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<QuestionInstance> gen_compare_age(std::span<const FactEntry> facts, int count, uint64_t seed,
                                              std::vector<std::string>* skip_log) {
    if (facts.size() < 2) throw InvalidInputError("gen_compare_age: need at least 2 facts");
    if (count < 1) throw InvalidInputError("gen_compare_age: count must be positive");
    for (const auto& fact : facts) {
        if (!fact.birth_date.valid()) {
            throw InvalidInputError("invalid birth date for '" + fact.person_name + "': " + fact.birth_date.iso());
        }
    }
    Rng rng(seed);
    std::set<std::pair<size_t, size_t>> used;
    std::vector<QuestionInstance> out;
    long attempts = 0;
    const long max_attempts = static_cast<long>(count) * 200 + 1000;
    while (out.size() < static_cast<size_t>(count)) {
        if (++attempts > max_attempts) {
            throw InvalidInputError("gen_compare_age: could not draw " + std::to_string(count) +
                                    " distinct pairs (got " + std::to_string(out.size()) + ")");
        }
        size_t a = static_cast<size_t>(rng.next_below(facts.size()));
        size_t b = static_cast<size_t>(rng.next_below(facts.size()));
        if (a == b) continue;
        std::pair<size_t, size_t> key = std::minmax(a, b);
        if (used.count(key)) continue;
        used.insert(key);
        const FactEntry& first = facts[a];
        const FactEntry& second = facts[b];
        if (first.birth_date == second.birth_date) {
            if (skip_log) {
                skip_log->push_back("skipped tie: " + first.person_name + " and " + second.person_name +
                                    " share birth date " + first.birth_date.iso());
            }
            continue;
        }
        QuestionInstance q = make_yes_no(TaskId::CompareAge,
                                         "Was " + first.person_name + " born earlier than " + second.person_name + "?",
                                         first.birth_date < second.birth_date);
        q.metadata["a"] = first.person_name;
        q.metadata["b"] = second.person_name;
        q.metadata["a_birth_date"] = first.birth_date.iso();
        q.metadata["b_birth_date"] = second.birth_date.iso();
        out.push_back(std::move(q));
    }
    return out;
}

std::string last_letter_oracle(std::string_view phrase) {
    std::vector<std::string> words = split_words(phrase);
    if (words.empty()) throw InvalidInputError("last_letter_oracle: empty phrase");
    std::string result;
    for (const auto& word : words) {
        unsigned char last = static_cast<unsigned char>(word.back());
        if (!std::isalpha(last)) {
            throw InvalidInputError("last_letter_oracle: word '" + word + "' does not end in a letter");
        }
        result.push_back(static_cast<char>(std::tolower(last)));
    }
    return result;
}

std::vector<QuestionInstance> gen_last_letter(std::span<const std::string> names, int words_per_question,
                                              int count, uint64_t seed) {
    if (words_per_question < 1) throw InvalidInputError("gen_last_letter: words_per_question must be >= 1");
    if (names.size() < static_cast<size_t>(words_per_question)) {
        throw InvalidInputError("gen_last_letter: name pool too small for " + std::to_string(words_per_question) +
                                " words per question");
    }
    TaskId task = words_per_question == 4 ? TaskId::LastLetter4 : TaskId::LastLetter2;
    Rng rng(seed);
    std::set<std::string> seen;
    std::vector<QuestionInstance> out;
    long attempts = 0;
    const long max_attempts = static_cast<long>(count) * 200 + 1000;
    while (out.size() < static_cast<size_t>(count)) {
        if (++attempts > max_attempts) {
            throw InvalidInputError("gen_last_letter: pool too small for " + std::to_string(count) +
                                    " distinct questions");
        }
        auto picks = rng.sample_indices(names.size(), static_cast<size_t>(words_per_question));
        std::vector<std::string> words;
        for (size_t i : picks) words.push_back(names[i]);
        std::string phrase = join(words, " ");
        if (!seen.insert(phrase).second) continue;
        QuestionInstance q;
        q.task_id = task;
        q.text = "Take the last letters of the words in \"" + phrase + "\" and concatenate them.";
        q.question_id = make_question_id(task, q.text);
        q.gold_answers = {last_letter_oracle(phrase)};
        q.metadata["phrase"] = phrase;
        out.push_back(std::move(q));
    }
    return out;
}

std::string coin_flip_oracle(bool initially_heads, const std::vector<bool>& flips) {
    size_t reversals = 0;
    for (bool f : flips) {
        if (f) ++reversals;
    }
    bool heads = (reversals % 2 == 0) ? initially_heads : !initially_heads;
    return heads ? "yes" : "no";
}

std::vector<QuestionInstance> gen_coin_flip(std::span<const std::string> names, int actors_per_question,
                                            int count, uint64_t seed) {
    if (actors_per_question < 1) throw InvalidInputError("gen_coin_flip: actors_per_question must be >= 1");
    if (names.size() < static_cast<size_t>(actors_per_question)) {
        throw InvalidInputError("gen_coin_flip: name pool too small");
    }
    Rng rng(seed);
    std::set<std::string> seen;
    std::vector<QuestionInstance> out;
    long attempts = 0;
    const long max_attempts = static_cast<long>(count) * 200 + 1000;
    while (out.size() < static_cast<size_t>(count)) {
        if (++attempts > max_attempts) {
            throw InvalidInputError("gen_coin_flip: pool too small for " + std::to_string(count) +
                                    " distinct questions");
        }
        auto picks = rng.sample_indices(names.size(), static_cast<size_t>(actors_per_question));
        std::vector<bool> flips;
        std::string actions;
        std::string pattern;
        for (size_t i : picks) {
            bool flip = rng.coin();
            flips.push_back(flip);
            pattern.push_back(flip ? 'f' : 'n');
            actions += ' ';
            actions += names[i];
            actions += flip ? " flips the coin." : " does not flip the coin.";
        }
        // The trailing double space before the final question matches the
        // source dataset's sentence pattern.
        std::string text = "A coin is heads up." + actions + "  Is the coin still heads up? Flip means reverse.";
        if (!seen.insert(text).second) continue;
        QuestionInstance q = make_yes_no(TaskId::CoinFlip, std::move(text),
                                         coin_flip_oracle(true, flips) == "yes");
        q.metadata["flips"] = pattern;
        out.push_back(std::move(q));
    }
    return out;
}

std::string dates_tomorrow_oracle(Date today) {
    if (!today.valid()) throw InvalidInputError("dates_tomorrow_oracle: invalid date " + today.iso());
    return today.next_day().mmddyyyy();
}

namespace {

void check_disjoint(const QuestionInstance& q, const std::string& where) {
    for (const auto& g : q.gold_answers) {
        for (const auto& w : q.wrong_answers) {
            if (g == w) throw LoadError(where + ": gold and wrong answers overlap on '" + g + "'");
        }
    }
}

std::vector<std::string> string_set(const nlohmann::json& v) {
    std::vector<std::string> out;
    if (v.is_string()) {
        out.push_back(v.get<std::string>());
    } else if (v.is_array()) {
        for (const auto& item : v) out.push_back(item.get<std::string>());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<QuestionInstance> load_dataset(TaskId task, const std::filesystem::path& path,
                                           std::vector<std::string>* warnings) {
    const TaskSpec& spec = task_spec(task);
    auto records = read_jsonl(path);
    if (records.empty()) throw LoadError(path.string() + ": empty dataset");

    std::vector<QuestionInstance> out;
    std::set<std::string> seen_texts;
    for (const auto& rec : records) {
        const auto& v = rec.value;
        std::string where = path.string() + ":" + std::to_string(rec.line);
        if (!v.contains("text") || !v.at("text").is_string() || v.at("text").get<std::string>().empty()) {
            throw LoadError(where + ": record needs nonempty text");
        }
        QuestionInstance q;
        q.task_id = task;
        q.text = v.at("text").get<std::string>();
        if (v.contains("gold")) q.gold_answers = string_set(v.at("gold"));
        if (v.contains("wrong")) q.wrong_answers = string_set(v.at("wrong"));

        std::vector<std::string> choices;
        if (v.contains("choices")) choices = v.at("choices").get<std::vector<std::string>>();

        switch (spec.answer_mode) {
            case AnswerMode::YesNo: {
                if (q.gold_answers.size() != 1 || (q.gold_answers[0] != "yes" && q.gold_answers[0] != "no")) {
                    throw LoadError(where + ": yes/no task needs gold of exactly \"yes\" or \"no\"");
                }
                if (q.wrong_answers.empty()) {
                    q.wrong_answers = {q.gold_answers[0] == "yes" ? std::string("no") : std::string("yes")};
                }
                break;
            }
            case AnswerMode::MultipleChoice: {
                if (q.gold_answers.empty()) throw LoadError(where + ": record needs gold answers");
                if (!choices.empty()) {
                    std::string letters = letters_for_count(choices.size());
                    q.text += "\nChoices:";
                    for (size_t i = 0; i < choices.size(); ++i) {
                        q.text += ' ';
                        q.text += letters[i];
                        q.text += ". " + choices[i];
                    }
                }
                break;
            }
            case AnswerMode::DateString: {
                std::string derived;
                if (v.contains("gold_date")) {
                    Date today = parse_iso_date(v.at("gold_date").get<std::string>());
                    derived = dates_tomorrow_oracle(today);
                    q.metadata["gold_date"] = today.iso();
                }
                if (derived.empty() && q.gold_answers.empty()) {
                    throw LoadError(where + ": dates record needs gold or gold_date");
                }
                if (!derived.empty()) {
                    if (!q.gold_answers.empty() && q.gold_answers != std::vector<std::string>{derived}) {
                        throw LoadError(where + ": gold disagrees with gold_date-derived answer " + derived);
                    }
                    q.gold_answers = {derived};
                }
                break;
            }
            case AnswerMode::StereoChoice: {
                if (choices.empty() || !v.contains("choice_roles")) {
                    throw LoadError(where + ": stereoset record needs choices and choice_roles");
                }
                std::string letters = letters_for_count(choices.size());
                q.text += " Which of these is more accurate?";
                for (size_t i = 0; i < choices.size(); ++i) {
                    std::string letter(1, letters[i]);
                    q.text += "\n" + letter + ". " + choices[i];
                    q.metadata["choice_text:" + letter] = choices[i];
                }
                for (const auto& [letter, role] : v.at("choice_roles").items()) {
                    if (letter.size() != 1 || letters.find(letter[0]) == std::string::npos) {
                        throw LoadError(where + ": choice_roles letter '" + letter + "' has no matching choice");
                    }
                    q.choice_roles[letter] = choice_role_from_name(role.get<std::string>());
                }
                if (q.choice_roles.size() != choices.size()) {
                    throw LoadError(where + ": every choice needs a role");
                }
                break;
            }
            case AnswerMode::ExactString: {
                if (q.gold_answers.empty()) throw LoadError(where + ": record needs gold answers");
                if (v.contains("mask_position")) {
                    q.metadata["mask_position"] = std::to_string(v.at("mask_position").get<int>());
                }
                break;
            }
        }

        check_disjoint(q, where);
        if (!seen_texts.insert(q.text).second) {
            if (warnings) warnings->push_back(where + ": duplicate question text, deduplicated");
            continue;
        }
        q.question_id = make_question_id(task, q.text);
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<QuestionInstance> sample_instances(std::vector<QuestionInstance> instances, size_t sample_size,
                                               uint64_t seed) {
    Rng rng(seed);
    rng.shuffle(instances);
    if (instances.size() > sample_size) instances.resize(sample_size);
    return instances;
}

std::filesystem::path DataPaths::dataset(TaskId task) const {
    return data_dir / (std::string(task_name(task)) + ".jsonl");
}

std::vector<QuestionInstance> build_instances(TaskId task, const DataPaths& paths, uint64_t base_seed,
                                              std::vector<std::string>* warnings) {
    const TaskSpec& spec = task_spec(task);
    uint64_t seed = derive_seed(base_seed, spec.name);
    switch (task) {
        case TaskId::EvenDay:
            return gen_birthday_parity(load_fact_table(paths.fact_table()), ParityField::Day);
        case TaskId::EvenMonth:
            return gen_birthday_parity(load_fact_table(paths.fact_table()), ParityField::Month);
        case TaskId::EvenYear:
            return gen_birthday_parity(load_fact_table(paths.fact_table()), ParityField::Year);
        case TaskId::CompareAge:
            return gen_compare_age(load_fact_table(paths.fact_table()), spec.default_size, seed, warnings);
        case TaskId::LastLetter2:
            return gen_last_letter(load_name_pool(paths.name_pool()), 2, spec.default_size, seed);
        case TaskId::LastLetter4:
            return gen_last_letter(load_name_pool(paths.name_pool()), 4, spec.default_size, seed);
        case TaskId::CoinFlip:
            return gen_coin_flip(load_name_pool(paths.name_pool()), 2, spec.default_size, seed);
        default:
            return load_dataset(task, paths.dataset(task), warnings);
    }
}

}  // namespace rarbench
