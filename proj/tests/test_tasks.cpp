#include <doctest.h>

#include "rarbench/errors.hpp"
#include "rarbench/rng.hpp"
#include "rarbench/tasks.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>

using namespace rarbench;

namespace {

const std::filesystem::path kData{RARBENCH_DATA_DIR};

// Independent last-letter oracle: walks the string once and collects the
// character right before each word boundary.
std::string scan_last_letters(const std::string& phrase) {
    std::string out;
    for (size_t i = 0; i < phrase.size(); ++i) {
        bool at_word_end = !std::isspace(static_cast<unsigned char>(phrase[i])) &&
                           (i + 1 == phrase.size() || std::isspace(static_cast<unsigned char>(phrase[i + 1])));
        if (at_word_end) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(phrase[i]))));
    }
    return out;
}

// Independent coin oracle: simulate the coin state step by step.
std::string simulate_coin(bool heads, const std::vector<bool>& flips) {
    for (bool f : flips) {
        if (f) heads = !heads;
    }
    return heads ? "yes" : "no";
}

}  // namespace

TEST_CASE("task catalog matches the published sizes") {
    CHECK(task_spec(TaskId::EvenDay).default_size == 105);
    CHECK(task_spec(TaskId::EvenMonth).default_size == 105);
    CHECK(task_spec(TaskId::EvenYear).default_size == 105);
    CHECK(task_spec(TaskId::CompareAge).default_size == 104);
    CHECK(task_spec(TaskId::CSQA).default_size == 220);
    CHECK(task_spec(TaskId::Dates).default_size == 369);
    CHECK(task_spec(TaskId::Sports).default_size == 220);
    CHECK(task_spec(TaskId::LastLetter2).default_size == 220);
    CHECK(task_spec(TaskId::LastLetter4).default_size == 220);
    CHECK(task_spec(TaskId::CoinFlip).default_size == 220);
    CHECK(task_spec(TaskId::StereoSet).default_size == 220);
    CHECK(task_from_name("last_letter2") == TaskId::LastLetter2);
}

TEST_CASE("last_letter_oracle") {
    CHECK(last_letter_oracle("Beth Joel") == "hl");
    CHECK(last_letter_oracle("Kristen Andrea") == "na");
    CHECK(last_letter_oracle("Mia Mariana Marcos Xavier") == "aasr");
    CHECK_THROWS_AS(last_letter_oracle("abc9 def"), InvalidInputError);
    CHECK_THROWS_AS(last_letter_oracle("   "), InvalidInputError);
}

TEST_CASE("last_letter_oracle equals an independent scan on 10,000 random phrases") {
    auto names = load_name_pool(kData / "names.txt");
    Rng rng(99);
    for (int i = 0; i < 10000; ++i) {
        size_t n = 2 + rng.next_below(4);
        std::vector<std::string> words;
        for (size_t j = 0; j < n; ++j) words.push_back(names[rng.next_below(names.size())]);
        std::string phrase;
        for (size_t j = 0; j < words.size(); ++j) {
            if (j) phrase.push_back(' ');
            phrase += words[j];
        }
        REQUIRE(last_letter_oracle(phrase) == scan_last_letters(phrase));
    }
}

TEST_CASE("coin_flip_oracle matches published examples and the simulation") {
    CHECK(coin_flip_oracle(true, {false, false}) == "yes");
    CHECK(coin_flip_oracle(true, {false, true}) == "no");
    CHECK(coin_flip_oracle(true, {true, true}) == "yes");
    for (int k = 0; k <= 20; ++k) {
        std::vector<bool> flips(k, true);
        CHECK(coin_flip_oracle(true, flips) == (k % 2 == 0 ? "yes" : "no"));
        CHECK(coin_flip_oracle(true, flips) == simulate_coin(true, flips));
    }
}

TEST_CASE("gen_birthday_parity text and gold") {
    std::vector<FactEntry> facts = {{"Barack Obama", {1961, 8, 4}}, {"Ada Person", {1900, 5, 15}}};
    auto day = gen_birthday_parity(facts, ParityField::Day);
    REQUIRE(day.size() == 2);
    CHECK(day[0].text == "Was Barack Obama born on an even day?");
    CHECK(day[0].gold_answers == std::vector<std::string>{"yes"});
    CHECK(day[0].wrong_answers == std::vector<std::string>{"no"});
    CHECK(day[1].gold_answers == std::vector<std::string>{"no"});  // day 15

    auto month = gen_birthday_parity(facts, ParityField::Month);
    CHECK(month[0].text == "Was Barack Obama born in an even month?");
    CHECK(month[0].gold_answers == std::vector<std::string>{"yes"});  // August
    auto year = gen_birthday_parity(facts, ParityField::Year);
    CHECK(year[0].text == "Was Barack Obama born in an even year?");
    CHECK(year[0].gold_answers == std::vector<std::string>{"no"});  // 1961

    std::vector<FactEntry> bad = {{"Broken", {2021, 2, 29}}};
    CHECK_THROWS_WITH_AS(gen_birthday_parity(bad, ParityField::Day).size(),
                         doctest::Contains("Broken"), InvalidInputError);
}

TEST_CASE("bundled fact table parity golds match independent arithmetic") {
    auto facts = load_fact_table(kData / "facts.jsonl");
    REQUIRE(facts.size() >= 105);
    for (ParityField field : {ParityField::Day, ParityField::Month, ParityField::Year}) {
        auto instances = gen_birthday_parity(facts, field);
        REQUIRE(instances.size() == facts.size());
        for (size_t i = 0; i < facts.size(); ++i) {
            int value = field == ParityField::Day    ? facts[i].birth_date.day
                        : field == ParityField::Month ? facts[i].birth_date.month
                                                      : facts[i].birth_date.year;
            std::string expect = (value & 1) == 0 ? "yes" : "no";
            REQUIRE(instances[i].gold_answers.front() == expect);
            REQUIRE(instances[i].wrong_answers.front() == (expect == "yes" ? "no" : "yes"));
        }
    }
}

TEST_CASE("gen_compare_age gold follows date order, skips ties, is deterministic") {
    std::vector<FactEntry> pair = {{"Joe Biden", {1942, 11, 20}}, {"Donald Trump", {1946, 6, 14}}};
    auto instances = gen_compare_age(pair, 1, 5);
    REQUIRE(instances.size() == 1);
    const auto& q = instances[0];
    bool biden_first = q.text == "Was Joe Biden born earlier than Donald Trump?";
    bool trump_first = q.text == "Was Donald Trump born earlier than Joe Biden?";
    CHECK((biden_first || trump_first));
    CHECK(q.gold_answers.front() == (biden_first ? "yes" : "no"));

    std::vector<FactEntry> tie = {{"A Person", {1950, 1, 1}}, {"B Person", {1950, 1, 1}},
                                  {"C Person", {1960, 2, 2}}};
    auto out = gen_compare_age(tie, 2, 7);
    CHECK(out.size() == 2);  // only the two non-tie pairings qualify

    // A pool holding nothing but a same-date pair can never satisfy the
    // request; the tie is logged and generation gives up.
    std::vector<FactEntry> only_tie = {{"A Person", {1950, 1, 1}}, {"B Person", {1950, 1, 1}}};
    std::vector<std::string> log;
    CHECK_THROWS_AS(gen_compare_age(only_tie, 1, 7, &log), InvalidInputError);
    REQUIRE_FALSE(log.empty());
    CHECK(log[0].find("A Person") != std::string::npos);

    auto facts = load_fact_table(kData / "facts.jsonl");
    auto a = gen_compare_age(facts, 104, 42);
    auto b = gen_compare_age(facts, 104, 42);
    REQUIRE(a.size() == 104);
    for (size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].text == b[i].text);
        REQUIRE(a[i].question_id == b[i].question_id);
        // Gold agrees with the metadata dates.
        Date da = parse_iso_date(a[i].metadata.at("a_birth_date"));
        Date db = parse_iso_date(a[i].metadata.at("b_birth_date"));
        REQUIRE(a[i].gold_answers.front() == ((da < db) ? "yes" : "no"));
    }
}

TEST_CASE("gen_last_letter produces oracle-consistent, reproducible instances") {
    auto names = load_name_pool(kData / "names.txt");
    auto a = gen_last_letter(names, 4, 50, 3);
    auto b = gen_last_letter(names, 4, 50, 3);
    REQUIRE(a.size() == 50);
    std::set<std::string> ids;
    for (size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].text == b[i].text);
        ids.insert(a[i].question_id);
        const std::string& phrase = a[i].metadata.at("phrase");
        REQUIRE(a[i].text == "Take the last letters of the words in \"" + phrase + "\" and concatenate them.");
        REQUIRE(a[i].gold_answers.front() == scan_last_letters(phrase));
        REQUIRE(a[i].gold_answers.front().size() == 4);
        REQUIRE(a[i].wrong_answers.empty());
    }
    CHECK(ids.size() == 50);
    CHECK_THROWS_AS(gen_last_letter(std::vector<std::string>{"One"}, 2, 5, 1), InvalidInputError);
}

TEST_CASE("gen_coin_flip matches the published sentence pattern") {
    auto names = load_name_pool(kData / "names.txt");
    auto instances = gen_coin_flip(names, 2, 40, 11);
    REQUIRE(instances.size() == 40);
    for (const auto& q : instances) {
        CHECK(q.text.starts_with("A coin is heads up. "));
        CHECK(q.text.ends_with("  Is the coin still heads up? Flip means reverse."));
        const std::string& pattern = q.metadata.at("flips");
        REQUIRE(pattern.size() == 2);
        std::vector<bool> flips;
        for (char c : pattern) flips.push_back(c == 'f');
        REQUIRE(q.gold_answers.front() == simulate_coin(true, flips));
        int sentences = 0;
        for (size_t pos = 0; (pos = q.text.find(" the coin.", pos)) != std::string::npos; pos += 10) ++sentences;
        CHECK(sentences == 2);
    }
    // Zero flips and double flips both leave the coin heads up.
    std::vector<FactEntry> unused;
    CHECK(coin_flip_oracle(true, {false, false}) == "yes");
    CHECK(coin_flip_oracle(true, {true, true}) == "yes");
    CHECK_THROWS_AS(gen_coin_flip(names, 0, 5, 1), InvalidInputError);
}

TEST_CASE("dates_tomorrow_oracle") {
    CHECK(dates_tomorrow_oracle({1899, 12, 31}) == "01/01/1900");
    CHECK(dates_tomorrow_oracle({2021, 5, 1}) == "05/02/2021");
    CHECK(dates_tomorrow_oracle({2020, 2, 28}) == "02/29/2020");
    CHECK_THROWS_AS(dates_tomorrow_oracle({2021, 2, 29}), InvalidInputError);
}

TEST_CASE("load_dataset stereoset populates roles and choice text") {
    auto instances = load_dataset(TaskId::StereoSet, kData / "stereoset.jsonl");
    REQUIRE(!instances.empty());
    const auto& q = instances[0];
    REQUIRE(q.choice_roles.size() == 3);
    CHECK(q.choice_roles.at("A") == ChoiceRole::Stereo);
    CHECK(q.choice_roles.at("B") == ChoiceRole::Anti);
    CHECK(q.choice_roles.at("C") == ChoiceRole::Unrelated);
    CHECK(q.text.find("Which of these is more accurate?") != std::string::npos);
    CHECK(q.text.find("A. ") != std::string::npos);
    CHECK(q.metadata.count("choice_text:C") == 1);
}

TEST_CASE("load_dataset csqa appends lettered choices") {
    auto instances = load_dataset(TaskId::CSQA, kData / "csqa.jsonl");
    REQUIRE(!instances.empty());
    const auto& q = instances[0];
    CHECK(q.text.find("Choices: A. ") != std::string::npos);
    CHECK(q.text.find("E. ") != std::string::npos);
    CHECK(std::find(q.gold_answers.begin(), q.gold_answers.end(), "Express yourself") != q.gold_answers.end());
}

TEST_CASE("load_dataset dates derives gold from gold_date") {
    auto instances = load_dataset(TaskId::Dates, kData / "dates.jsonl");
    REQUIRE(!instances.empty());
    CHECK(instances[0].gold_answers == std::vector<std::string>{"01/01/1900"});
    CHECK(instances[1].gold_answers == std::vector<std::string>{"05/02/2021"});
    CHECK(instances[2].gold_answers == std::vector<std::string>{"02/29/2020"});
}

TEST_CASE("load_dataset error paths") {
    auto dir = std::filesystem::temp_directory_path() / "rarbench_tasks_test";
    std::filesystem::create_directories(dir);

    auto empty = dir / "empty.jsonl";
    { std::ofstream out(empty, std::ios::trunc); }
    CHECK_THROWS_AS(load_dataset(TaskId::Sports, empty), LoadError);

    auto malformed = dir / "malformed.jsonl";
    {
        std::ofstream out(malformed, std::ios::trunc);
        out << R"({"text": "Is it plausible?", "gold": "yes"})" << "\n";
        out << "{not json}\n";
        out << R"({"text": "another", "gold": "no"})" << "\n";
    }
    CHECK_THROWS_WITH_AS(load_dataset(TaskId::Sports, malformed).size(), doctest::Contains(":2"), LoadError);

    auto badgold = dir / "badgold.jsonl";
    {
        std::ofstream out(badgold, std::ios::trunc);
        out << R"({"text": "Is it plausible?", "gold": "maybe"})" << "\n";
    }
    CHECK_THROWS_AS(load_dataset(TaskId::Sports, badgold), LoadError);

    auto dup = dir / "dup.jsonl";
    {
        std::ofstream out(dup, std::ios::trunc);
        out << R"({"text": "Same question?", "gold": "yes"})" << "\n";
        out << R"({"text": "Same question?", "gold": "no"})" << "\n";
    }
    std::vector<std::string> warnings;
    auto instances = load_dataset(TaskId::Sports, dup, &warnings);
    CHECK(instances.size() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("duplicate") != std::string::npos);

    auto overlap = dir / "overlap.jsonl";
    {
        std::ofstream out(overlap, std::ios::trunc);
        out << R"({"text": "Pick one", "gold": ["x"], "wrong": ["x"]})" << "\n";
    }
    CHECK_THROWS_AS(load_dataset(TaskId::MaskedIdiom, overlap), LoadError);

    std::filesystem::remove_all(dir);
}

TEST_CASE("instances have disjoint answers and stable 16-hex ids") {
    DataPaths paths{kData};
    for (TaskId task : {TaskId::EvenDay, TaskId::CoinFlip, TaskId::Sports, TaskId::CSQA}) {
        auto instances = build_instances(task, paths, 1);
        REQUIRE(!instances.empty());
        for (const auto& q : instances) {
            REQUIRE(q.question_id.size() == 16);
            REQUIRE(q.question_id.find_first_not_of("0123456789abcdef") == std::string::npos);
            REQUIRE(q.question_id == make_question_id(q.task_id, q.text));
            for (const auto& g : q.gold_answers) {
                REQUIRE(std::find(q.wrong_answers.begin(), q.wrong_answers.end(), g) == q.wrong_answers.end());
            }
        }
    }
}

TEST_CASE("sample_instances is seed-stable and draws without replacement") {
    DataPaths paths{kData};
    auto all = build_instances(TaskId::EvenDay, paths, 1);
    auto s1 = sample_instances(all, 50, 9);
    auto s2 = sample_instances(all, 50, 9);
    auto s3 = sample_instances(all, 50, 10);
    REQUIRE(s1.size() == 50);
    std::set<std::string> ids;
    bool same = true, diff = false;
    for (size_t i = 0; i < 50; ++i) {
        ids.insert(s1[i].question_id);
        same = same && s1[i].question_id == s2[i].question_id;
        diff = diff || s1[i].question_id != s3[i].question_id;
    }
    CHECK(ids.size() == 50);
    CHECK(same);
    CHECK(diff);
    CHECK(sample_instances(all, 100000, 1).size() == all.size());
}

TEST_CASE("instance json round trip") {
    DataPaths paths{kData};
    auto instances = build_instances(TaskId::StereoSet, paths, 1);
    for (const auto& q : instances) {
        QuestionInstance back = instance_from_json(instance_to_json(q));
        REQUIRE(back.question_id == q.question_id);
        REQUIRE(back.text == q.text);
        REQUIRE(back.gold_answers == q.gold_answers);
        REQUIRE(back.choice_roles == q.choice_roles);
        REQUIRE(back.metadata == q.metadata);
    }
}
