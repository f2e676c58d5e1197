#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "chatprofiler/suggestions.hpp"
#include "fixtures.hpp"

using namespace chatprofiler;

namespace {

GuidelineCatalog shipped_catalog() {
    std::ifstream in(std::string(CHATPROFILER_TEST_DATA_DIR) + "/guidelines.json");
    REQUIRE(in.good());
    return guideline_catalog_from_json(nlohmann::json::parse(in));
}

ChatbotProfile profile_with_flags(std::vector<Flag> flags) {
    ChatbotProfile p;
    p.flags = std::move(flags);
    for (Metric m : all_metrics())
        p.thresholds.entries[metric_key(m)] = {0.0, metric_direction(m)};
    return p;
}

}  // namespace

TEST_CASE("realize_sentence matches the template byte for byte") {
    const auto sentence = realize_sentence(
        "How are you feeling today?",
        "Personalize the chat experience, e.g., addressing users their names",
        "Completion Rate", "too low");
    CHECK(sentence ==
          "For question 'How are you feeling today?', personalize the chat "
          "experience, e.g., addressing users their names because metric "
          "completion rate is too low.");
}

TEST_CASE("realize_sentence never doubles terminal punctuation") {
    const auto sentence =
        realize_sentence("Q?", "Do the thing.", "Repetition Rate", "too high");
    CHECK(sentence ==
          "For question 'Q?', do the thing because metric repetition rate is "
          "too high.");
}

TEST_CASE("shipped catalog covers every metric with the expected fan-out") {
    const auto catalog = shipped_catalog();
    CHECK(catalog.entries.size() == 10);
    CHECK(catalog.for_metric(Metric::informativeness).size() == 2);
    CHECK(catalog.for_metric(Metric::completion_rate).size() == 3);
    CHECK(catalog.for_metric(Metric::repetition_rate).size() == 2);
    CHECK(catalog.for_metric(Metric::empathy_level).size() == 2);
    CHECK(catalog.for_metric(Metric::hate_speech_rate).size() == 1);
    CHECK(catalog.for_metric(Metric::privacy_intrusion_rate).size() == 1);
    CHECK(catalog.for_metric(Metric::response_length).size() == 2);
    CHECK(catalog.for_metric(Metric::engagement_duration).size() == 3);
}

TEST_CASE("a repetition flag yields exactly the two repetition guidelines") {
    const auto catalog = shipped_catalog();
    auto cfg = fixtures::config_with_questions(
        {"How are you feeling today?", "Where are you located?"});
    const auto profile = profile_with_flags(
        {{2, Metric::repetition_rate, 0.5, 0.0, Direction::above}});
    const auto suggestions = generate_suggestions(profile, catalog, cfg);
    REQUIRE(suggestions.size() == 2);
    CHECK(suggestions[0].guideline_id == "G04");
    CHECK(suggestions[1].guideline_id == "G05");
    CHECK(suggestions[1].sentence ==
          "For question 'Where are you located?', reword the question to make "
          "it more acceptable to users because metric repetition rate is too "
          "high.");
    for (const auto& s : suggestions) {
        CHECK(s.question_id == 2);
        CHECK(s.direction_word == "too high");
    }
}

TEST_CASE("an informativeness flag yields both informativeness guidelines") {
    const auto catalog = shipped_catalog();
    auto cfg = fixtures::config_with_questions({"a", "b", "c"});
    const auto profile = profile_with_flags(
        {{3, Metric::informativeness, 0.5, 2.0, Direction::below}});
    const auto suggestions = generate_suggestions(profile, catalog, cfg);
    REQUIRE(suggestions.size() == 2);
    CHECK(suggestions[0].guideline_id == "G01");
    CHECK(suggestions[1].guideline_id == "G02");
    CHECK(suggestions[0].direction_word == "too low");
}

TEST_CASE("empty flags yield no suggestions") {
    const auto catalog = shipped_catalog();
    auto cfg = fixtures::config_with_questions({"a"});
    CHECK(generate_suggestions(profile_with_flags({}), catalog, cfg).empty());
}

TEST_CASE("hate flags map only to the ethics guideline") {
    const auto catalog = shipped_catalog();
    auto cfg = fixtures::config_with_questions({"a"});
    const auto suggestions = generate_suggestions(
        profile_with_flags({{1, Metric::hate_speech_rate, 0.25, 0.0,
                             Direction::above}}),
        catalog, cfg);
    REQUIRE(suggestions.size() == 1);
    CHECK(suggestions[0].guideline_id == "G09");
    CHECK(suggestions[0].sentence.find("remove all the hate or offensive speech") !=
          std::string::npos);
}

TEST_CASE("suggestion count is the sum of per-flag guideline fan-outs") {
    const auto catalog = shipped_catalog();
    auto cfg = fixtures::config_with_questions({"a", "b"});
    const auto profile = profile_with_flags({
        {1, Metric::privacy_intrusion_rate, 0.4, 0.1, Direction::above},
        {2, Metric::completion_rate, 0.2, 0.9, Direction::below},
        {2, Metric::empathy_level, 0.0, 0.1, Direction::below},
    });
    const auto suggestions = generate_suggestions(profile, catalog, cfg);
    CHECK(suggestions.size() == 1 + 3 + 2);
    // ordered by (question_id, metric, guideline_id)
    for (std::size_t i = 1; i < suggestions.size(); ++i) {
        const auto& a = suggestions[i - 1];
        const auto& b = suggestions[i];
        const auto ka = std::make_tuple(a.question_id, static_cast<int>(a.metric),
                                        a.guideline_id);
        const auto kb = std::make_tuple(b.question_id, static_cast<int>(b.metric),
                                        b.guideline_id);
        CHECK(ka < kb);
    }
}

TEST_CASE("suggestion generation is deterministic") {
    const auto catalog = shipped_catalog();
    auto cfg = fixtures::config_with_questions({"a", "b"});
    const auto profile = profile_with_flags({
        {2, Metric::repetition_rate, 0.5, 0.0, Direction::above},
        {1, Metric::informativeness, 0.1, 0.9, Direction::below},
    });
    const auto first = generate_suggestions(profile, catalog, cfg);
    const auto second = generate_suggestions(profile, catalog, cfg);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        CHECK(first[i].sentence == second[i].sentence);
}

TEST_CASE("template round-trip recovers question, metric, and polarity") {
    const auto catalog = shipped_catalog();
    auto cfg = fixtures::config_with_questions(
        {"What do you do outside work?"});
    const auto suggestions = generate_suggestions(
        profile_with_flags({{1, Metric::engagement_duration, 0.1, 1.0,
                             Direction::below}}),
        catalog, cfg);
    REQUIRE_FALSE(suggestions.empty());
    const auto& sentence = suggestions[0].sentence;
    // parse back: For question 'Q', ... because metric M is Z.
    const auto q_start = sentence.find('\'');
    const auto q_end = sentence.rfind("', ");
    const std::string q = sentence.substr(q_start + 1, q_end - q_start - 1);
    CHECK(q == "What do you do outside work?");
    const auto m_pos = sentence.rfind(" because metric ");
    const auto is_pos = sentence.rfind(" is ");
    const std::string m =
        sentence.substr(m_pos + 16, is_pos - m_pos - 16);
    CHECK(m == "engagement duration");
    CHECK(sentence.substr(is_pos + 4) == "too low.");
}

TEST_CASE("catalog validation rejects gaps and duplicates") {
    GuidelineCatalog missing;
    missing.entries.push_back({"G1", "Do something", {"informativeness"}});
    CHECK_THROWS_AS(missing.validate(), ConfigError);

    GuidelineCatalog dup;
    for (Metric m : all_metrics())
        dup.entries.push_back({"G1", "Do something", {metric_key(m)}});
    CHECK_THROWS_AS(dup.validate(), ConfigError);
}
