#include <doctest.h>

#include "rarbench/errors.hpp"
#include "rarbench/prompts.hpp"
#include "rarbench/rng.hpp"
#include "rarbench/strings.hpp"

#include <filesystem>
#include <string>
#include <vector>

using namespace rarbench;
using namespace rarbench::prompts;

TEST_CASE("render_rar wraps the question and appends the instruction") {
    CHECK(render_rar("Was Barack Obama born in an even day?") ==
          "\"Was Barack Obama born in an even day?\"\nRephrase and expand the question, and respond.");
    CHECK(render_rar("x") == "\"x\"\nRephrase and expand the question, and respond.");
    CHECK_THROWS_AS(render_rar(""), InvalidInputError);
}

TEST_CASE("render_variant uses the listed instruction order") {
    CHECK(render_variant("Q?", 1) == "\"Q?\"\nReword and elaborate on the inquiry, then provide an answer.");
    CHECK(render_variant("Q?", 2) ==
          "\"Q?\"\nReframe the question with additional context and detail, then provide an answer.");
    CHECK(render_variant("Q?", 3) ==
          "\"Q?\"\nModify the original question for clarity and detail, then offer an answer.");
    CHECK(render_variant("Q?", 4) ==
          "\"Q?\"\nRestate and elaborate on the inquiry before proceeding with a response.");
    CHECK_THROWS_AS(render_variant("Q?", 5), InvalidInputError);
    CHECK_THROWS_AS(render_variant("Q?", 0), InvalidInputError);
    CHECK_THROWS_AS(render_variant("", 1), InvalidInputError);
}

TEST_CASE("render_two_step_rephrase") {
    CHECK(render_two_step_rephrase("Was X born earlier than Y?") ==
          "\"Was X born earlier than Y?\"\nGiven the above question, rephrase and expand it to help you do "
          "better answering. Maintain all information in the original question.");
    CHECK(render_two_step_rephrase("Q") ==
          "\"Q\"\nGiven the above question, rephrase and expand it to help you do better answering. Maintain "
          "all information in the original question.");
    CHECK_THROWS_AS(render_two_step_rephrase(""), InvalidInputError);
}

TEST_CASE("render_two_step_respond emits the three-line prompt") {
    CHECK(render_two_step_respond("a", "b") ==
          "(original) a\n(rephrased) b\nUse your answer for the rephrased question to answer the original "
          "question.");
    CHECK_THROWS_AS(render_two_step_respond("", "b"), InvalidInputError);
    CHECK_THROWS_AS(render_two_step_respond("a", ""), InvalidInputError);
}

TEST_CASE("render_zero_shot_cot") {
    CHECK(render_zero_shot_cot("Q?") == "Q?\nLet's think step by step.");
    CHECK(render_zero_shot_cot("a b") == "a b\nLet's think step by step.");
    CHECK_THROWS_AS(render_zero_shot_cot(""), InvalidInputError);
}

TEST_CASE("render_rar_cot appends the step-by-step sentence to the instruction line") {
    CHECK(render_rar_cot("Q?") ==
          "\"Q?\"\nRephrase and expand the question, and respond. Let's think step by step.");
    CHECK_THROWS_AS(render_rar_cot(""), InvalidInputError);
}

TEST_CASE("render_few_shot joins Q/A blocks with blank lines") {
    std::vector<FewShotExample> one = {
        {"Take the last letters of the words in \"Elon Musk\" and concatenate them.",
         "The first letter of \"Elon\" is \"E\". The first letter of \"Musk\" is \"M\". Concatenating them is "
         "\"EM\". The answer is nk.",
         ExampleLabel::Flawed}};
    std::string prompt =
        render_few_shot(one, "Take the last letters of the words in \"Bill Gates\" and concatenate them.");
    CHECK(prompt.ends_with("The answer is nk.\n\nQ: Take the last letters of the words in \"Bill Gates\" and "
                           "concatenate them.\nA:"));
    CHECK(prompt.starts_with("Q: Take the last letters"));

    std::vector<FewShotExample> four(4, {"q", "a", ExampleLabel::RaRImproved});
    std::string multi = render_few_shot(four, "query");
    CHECK(count_occurrences(multi, "Q: ") == 5);
    CHECK(count_occurrences(multi, "\n\n") == 4);

    CHECK_THROWS_AS(render_few_shot({}, "Q"), InvalidInputError);
    CHECK_THROWS_AS(render_few_shot(one, ""), InvalidInputError);
}

TEST_CASE("apply_format_suffix per task") {
    CHECK(apply_format_suffix(TaskId::CoinFlip, "P") == "P Answer the Yes or No question.");
    CHECK(apply_format_suffix(TaskId::Sports, "P") == "P Answer the Yes or No question.");
    CHECK(apply_format_suffix(TaskId::Dates, "P") == "P Final answer format should be MM/DD/YYYY.");
    CHECK(apply_format_suffix(TaskId::CSQA, "P") == "P Select the *single* most sensible answer.");
    CHECK(apply_format_suffix(TaskId::StereoSet, "P") == "P Select the *single* most sensible answer.");
    CHECK(apply_format_suffix(TaskId::EvenDay, "P") == "P");
    CHECK(apply_format_suffix(TaskId::LastLetter2, "P") == "P");
    CHECK_THROWS_AS(task_from_name("no_such_task"), InvalidInputError);
}

TEST_CASE("rendering is deterministic and embeds the question verbatim") {
    Rng rng(11);
    const std::string alphabet = "abc DEF?!.,'\"123";
    for (int i = 0; i < 200; ++i) {
        std::string q;
        size_t len = 1 + rng.next_below(40);
        for (size_t j = 0; j < len; ++j) q.push_back(alphabet[rng.next_below(alphabet.size())]);
        CHECK(render_rar(q) == render_rar(q));
        CHECK(render_rar(q).find(q) != std::string::npos);
        CHECK(render_variant(q, 1 + static_cast<int>(rng.next_below(4))).find(q) != std::string::npos);
        CHECK(render_two_step_rephrase(q).find(q) != std::string::npos);
        CHECK(render_zero_shot_cot(q).find(q) != std::string::npos);
        CHECK(render_rar_cot(q).find(q) != std::string::npos);
        CHECK(render_two_step_respond(q, "r").find(q) != std::string::npos);
    }
}

TEST_CASE("line endings are bare newlines") {
    std::string all = render_rar("q") + render_two_step_respond("a", "b") + render_zero_shot_cot("q");
    CHECK(all.find('\r') == std::string::npos);
}

TEST_CASE("bundled example file carries both sets in table order") {
    auto all = load_example_file(std::filesystem::path(RARBENCH_DATA_DIR) / "fewshot_examples.jsonl");
    auto flawed = filter_examples(all, ExampleLabel::Flawed);
    auto improved = filter_examples(all, ExampleLabel::RaRImproved);
    REQUIRE(flawed.size() == 4);
    REQUIRE(improved.size() == 4);
    CHECK(flawed[0].question_text ==
          "Take the last letters of the words in \"Elon Musk\" and concatenate them.");
    CHECK(flawed[0].answer_text.ends_with("The answer is nk."));
    CHECK(flawed[3].answer_text.ends_with("The answer is ls."));
    CHECK(improved[0].question_text ==
          "Identify the last letters of each word in the name \"Elon Musk\", then put those letters together.");
    CHECK(improved[0].answer_text.ends_with("the result is 'nk'"));
    CHECK(improved[3].answer_text.ends_with("the result is 'ls'"));
}
