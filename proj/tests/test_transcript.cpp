#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "chatprofiler/transcript.hpp"
#include "fixtures.hpp"

using namespace chatprofiler;
using fixtures::bot;
using fixtures::user;

namespace {

std::vector<Session> parse(const std::string& jsonl) {
    std::istringstream in(jsonl);
    return parse_corpus(in);
}

InterviewConfig five_question_config() {
    auto cfg = fixtures::config_with_questions(
        {"How are you feeling today?", "Where are you located?",
         "What do you do outside work?",
         "What are the challenges you currently face?",
         "What do you think you can do to help w/ this pandemic?"});
    return cfg;
}

}  // namespace

TEST_CASE("parse_corpus reads one session per line") {
    const auto corpus = parse(
        R"({"session_id":"s1","messages":[)"
        R"({"role":"bot","text":"hi","timestamp":1.0},)"
        R"({"role":"user","text":"hello","timestamp":2.0}]})"
        "\n");
    REQUIRE(corpus.size() == 1);
    CHECK(corpus[0].session_id == "s1");
    REQUIRE(corpus[0].messages.size() == 2);
    CHECK(corpus[0].messages[0].role == Role::bot);
    CHECK(corpus[0].messages[1].role == Role::user);
}

TEST_CASE("parse_corpus on empty input yields an empty corpus") {
    CHECK(parse("").empty());
    CHECK(parse("\n\n  \n").empty());
}

TEST_CASE("parse_corpus rejects unknown roles with the line number") {
    const std::string line =
        R"({"session_id":"s1","messages":[{"role":"agent","text":"x","timestamp":1}]})";
    try {
        parse(line);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(std::string(e.what()).find("agent") != std::string::npos);
    }
}

TEST_CASE("parse_corpus enforces message contracts") {
    CHECK_THROWS_AS(
        parse(R"({"session_id":"s","messages":[{"role":"bot","timestamp":1}]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse(R"({"session_id":"s","messages":[{"role":"bot","text":"x"}]})"),
        ParseError);
    CHECK_THROWS_AS(
        parse(R"({"session_id":"s","messages":[{"role":"bot","text":"x","timestamp":-1}]})"),
        ParseError);
    CHECK_THROWS_AS(parse(R"({"messages":[]})"), ParseError);
    CHECK_THROWS_AS(parse(R"(not json)"), ParseError);
    CHECK_THROWS_AS(parse(R"({"session_id":"s","satisfaction_rating":9})"),
                    ParseError);
}

TEST_CASE("parse_corpus rejects duplicate session ids") {
    const std::string dup =
        R"({"session_id":"s1","messages":[]})"
        "\n"
        R"({"session_id":"s1","messages":[]})";
    try {
        parse(dup);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("s1") != std::string::npos);
    }
}

TEST_CASE("parse_corpus line numbers survive earlier good lines") {
    const std::string two_lines =
        R"({"session_id":"ok","messages":[]})"
        "\n"
        R"({"session_id":"bad","messages":[{"role":"x","text":"t","timestamp":1}]})";
    try {
        parse(two_lines);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("parse_corpus ignores unknown fields and sorts by timestamp stably") {
    const auto corpus = parse(
        R"({"session_id":"s1","platform":"x","messages":[)"
        R"({"role":"user","text":"b","timestamp":5.0,"extra":1},)"
        R"({"role":"bot","text":"a","timestamp":1.0},)"
        R"({"role":"bot","text":"tie1","timestamp":5.0}]})");
    REQUIRE(corpus[0].messages.size() == 3);
    CHECK(corpus[0].messages[0].text == "a");
    CHECK(corpus[0].messages[1].text == "b");      // file order kept on ties
    CHECK(corpus[0].messages[2].text == "tie1");
}

TEST_CASE("corpus round-trips through serialization") {
    const std::string input =
        R"({"session_id":"s1","messages":[{"role":"bot","text":"q é?","timestamp":1.5,"question_id":1},{"role":"user","text":"a","timestamp":2.0}],"satisfaction_rating":4,"trust_rating":5,"feedback_texts":["nice"]})"
        "\n";
    const auto corpus = parse(input);
    std::ostringstream out;
    write_corpus(out, corpus);
    const auto reparsed = parse(out.str());
    REQUIRE(reparsed.size() == corpus.size());
    const auto& a = corpus[0];
    const auto& b = reparsed[0];
    CHECK(a.session_id == b.session_id);
    CHECK(a.satisfaction_rating == b.satisfaction_rating);
    CHECK(a.trust_rating == b.trust_rating);
    CHECK(a.feedback_texts == b.feedback_texts);
    REQUIRE(a.messages.size() == b.messages.size());
    for (std::size_t i = 0; i < a.messages.size(); ++i) {
        CHECK(a.messages[i].role == b.messages[i].role);
        CHECK(a.messages[i].text == b.messages[i].text);
        CHECK(a.messages[i].timestamp == b.messages[i].timestamp);
        CHECK(a.messages[i].question_id == b.messages[i].question_id);
    }
}

TEST_CASE("random corpora survive a serialize/parse round-trip") {
    std::mt19937_64 gen(404);
    const std::vector<std::string> texts = {
        "hello", "", "  spaces  ", "uni \xC3\xA9\xC3\xA0", "tab\there",
        "quote\"back\\slash", "newline\nin text", "I'd say 5!"};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Session> corpus;
        const std::size_t n_sessions = 1 + gen() % 4;
        for (std::size_t k = 0; k < n_sessions; ++k) {
            Session s;
            s.session_id = "r" + std::to_string(trial) + "_" + std::to_string(k);
            double t = 0;
            const std::size_t n_msgs = gen() % 6;
            for (std::size_t m = 0; m < n_msgs; ++m) {
                Message msg;
                msg.role = gen() % 2 ? Role::bot : Role::user;
                msg.text = texts[gen() % texts.size()];
                msg.timestamp = (t += static_cast<double>(gen() % 100) / 4.0);
                if (gen() % 3 == 0) msg.question_id = 1 + static_cast<int>(gen() % 5);
                s.messages.push_back(std::move(msg));
            }
            if (gen() % 2) s.satisfaction_rating = 1 + static_cast<int>(gen() % 5);
            if (gen() % 2) s.trust_rating = 1 + static_cast<int>(gen() % 5);
            if (gen() % 3 == 0) s.feedback_texts = {texts[gen() % texts.size()]};
            corpus.push_back(std::move(s));
        }
        std::ostringstream out;
        write_corpus(out, corpus);
        std::istringstream in(out.str());
        const auto reparsed = parse_corpus(in);
        REQUIRE(reparsed.size() == corpus.size());
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            CHECK(session_to_json(corpus[k]) == session_to_json(reparsed[k]));
        }
    }
}

TEST_CASE("segment_session groups by explicit question ids") {
    Session s;
    s.session_id = "s1";
    s.messages = {bot("q1", 1, 1), user("a1", 2, 1), bot("q2", 3, 2),
                  user("a2", 4, 2)};
    const auto cfg = fixtures::config_with_questions({"one", "two"});
    const auto segments = segment_session(s, cfg);
    REQUIRE(segments.size() == 2);
    CHECK(segments[0].question_id == 1);
    CHECK(segments[0].advanced);
    CHECK(segments[1].question_id == 2);
    CHECK_FALSE(segments[1].advanced);  // no post-interview messages
}

TEST_CASE("fuzzy segmentation opens on the drifting question spelling") {
    Session s;
    s.session_id = "s1";
    s.messages = {bot("How are you feeling today?", 1), user("fine", 2),
                  bot("Where you are located?", 3), user("earth", 4)};
    const auto cfg = five_question_config();
    const auto segments = segment_session(s, cfg);
    REQUIRE(segments.size() == 2);
    CHECK(segments[1].question_id == 2);
    REQUIRE(segments[1].bot_messages().size() == 1);
    CHECK(segments[1].user_messages().size() == 1);
}

TEST_CASE("a session matching zero questions yields no segments") {
    Session s;
    s.session_id = "s1";
    s.messages = {bot("completely unrelated chatter", 1), user("ok", 2)};
    CHECK(segment_session(s, five_question_config()).empty());
}

TEST_CASE("post-interview messages mark the last question as advanced") {
    auto cfg = five_question_config();
    cfg.questions.push_back({6, "How satisfied are you, 1 to 5?"});
    cfg.rating_question_ids = {6};
    Session s;
    s.session_id = "s1";
    double t = 1;
    for (const auto& q : cfg.interview_questions()) {
        s.messages.push_back(bot(q.canonical_text, t++));
        s.messages.push_back(user("answer words here", t++));
    }
    s.messages.push_back(bot("How satisfied are you, 1 to 5?", t++));
    s.messages.push_back(user("5", t++));
    const auto segments = segment_session(s, cfg);
    REQUIRE(segments.size() == 5);
    for (const auto& seg : segments) CHECK(seg.advanced);
}

TEST_CASE("dropout mid-interview leaves later advanced flags false") {
    Session s;
    s.session_id = "s1";
    s.messages = {bot("How are you feeling today?", 1), user("fine", 2),
                  bot("Where are you located?", 3)};
    const auto segments = segment_session(s, five_question_config());
    REQUIRE(segments.size() == 2);
    CHECK(segments[0].advanced);
    CHECK_FALSE(segments[1].advanced);
}

TEST_CASE("monotone advancement holds under out-of-order questions") {
    Session s;
    s.session_id = "s1";
    s.messages = {bot("What do you do outside work?", 1), user("read", 2),
                  bot("Where are you located?", 3), user("earth", 4)};
    auto result = segment_session_full(s, five_question_config());
    REQUIRE(result.segments.size() == 2);
    CHECK_FALSE(result.warnings.empty());  // Q2 matched after Q3
    // ascending ids; advanced=false only allowed at the tail
    bool seen_false = false;
    for (const auto& seg : result.segments) {
        if (seen_false) FAIL("advanced=false was followed by another segment");
        if (!seg.advanced) seen_false = true;
    }
}

TEST_CASE("re-asking the current question stays inside its segment") {
    Session s;
    s.session_id = "s1";
    s.messages = {bot("Where are you located?", 1), user("why", 2),
                  bot("Where are you located?", 3), user("earth", 4)};
    auto cfg = fixtures::config_with_questions({"Where are you located?"});
    const auto segments = segment_session(s, cfg);
    REQUIRE(segments.size() == 1);
    CHECK(segments[0].bot_messages().size() == 2);
    CHECK(segments[0].user_messages().size() == 2);
}

TEST_CASE("segmentation partition: messages appear at most once, in order") {
    Session s;
    s.session_id = "s1";
    double t = 0;
    for (int round = 0; round < 3; ++round) {
        s.messages.push_back(bot("How are you feeling today?", t++));
        s.messages.push_back(user("reply " + std::to_string(round), t++));
        s.messages.push_back(bot("Where are you located?", t++));
        s.messages.push_back(user("place " + std::to_string(round), t++));
    }
    const auto segments = segment_session(s, five_question_config());
    std::size_t covered = 0;
    for (const auto& seg : segments) {
        covered += seg.messages.size();
        for (std::size_t i = 1; i < seg.messages.size(); ++i)
            CHECK(seg.messages[i - 1].timestamp <= seg.messages[i].timestamp);
    }
    CHECK(covered <= s.messages.size());
}

TEST_CASE("extract_ratings prefers wire fields") {
    Session s;
    s.session_id = "s1";
    s.satisfaction_rating = 3;
    s.trust_rating = 2;
    s.feedback_texts = {"already here"};
    const auto r = extract_ratings(s, five_question_config());
    CHECK(r.satisfaction == 3);
    CHECK(r.trust == 2);
    CHECK(r.feedback_texts == std::vector<std::string>{"already here"});
}

TEST_CASE("extract_ratings parses rating responses") {
    auto cfg = five_question_config();
    cfg.questions.push_back({6, "How satisfied are you, 1 to 5?"});
    cfg.questions.push_back({7, "How much do you trust this chatbot, 1 to 5?"});
    cfg.rating_question_ids = {6, 7};

    const auto make_session = [&](const std::string& sat_reply,
                                  const std::string& trust_reply) {
        Session s;
        s.session_id = "s1";
        s.messages = {bot("How are you feeling today?", 1), user("fine", 2),
                      bot("How satisfied are you, 1 to 5?", 3),
                      user(sat_reply, 4),
                      bot("How much do you trust this chatbot, 1 to 5?", 5),
                      user(trust_reply, 6)};
        return s;
    };

    SECTION("plain integer") {
        const auto r = extract_ratings(make_session("4", "3"), cfg);
        CHECK(r.satisfaction == 4);
        CHECK(r.trust == 3);
    }
    SECTION("integer embedded in prose") {
        const auto r = extract_ratings(make_session("I'd say 5!", "2 I guess"), cfg);
        CHECK(r.satisfaction == 5);
        CHECK(r.trust == 2);
    }
    SECTION("no integer yields absent plus rationale") {
        const auto r = extract_ratings(make_session("pretty good", "3"), cfg);
        CHECK_FALSE(r.satisfaction.has_value());
        CHECK(r.trust == 3);
        REQUIRE(r.feedback_texts.size() == 1);
        CHECK(r.feedback_texts[0] == "pretty good");
    }
    SECTION("out-of-range integer is a warning, not a rating") {
        const auto r = extract_ratings(make_session("7", "4"), cfg);
        CHECK_FALSE(r.satisfaction.has_value());
        CHECK(r.trust == 4);
        CHECK_FALSE(r.warnings.empty());
    }
    SECTION("rationale after the rating goes to feedback") {
        Session s;
        s.session_id = "s1";
        s.messages = {bot("How satisfied are you, 1 to 5?", 1), user("4", 2),
                      bot("why?", 3), user("it was friendly", 4)};
        const auto r = extract_ratings(s, cfg);
        CHECK(r.satisfaction == 4);
        REQUIRE(r.feedback_texts.size() == 1);
        CHECK(r.feedback_texts[0] == "it was friendly");
    }
}

TEST_CASE("interview config validation") {
    CHECK_THROWS_AS(fixtures::config_with_questions({}).validate(), ConfigError);
    CHECK_THROWS_AS(fixtures::config_with_questions({"ok", "  "}).validate(),
                    ConfigError);
    auto gap = fixtures::config_with_questions({"a", "b"});
    gap.questions[1].question_id = 3;
    CHECK_THROWS_AS(gap.validate(), ConfigError);
    auto bad_threshold = fixtures::config_with_questions({"a"});
    bad_threshold.fuzzy_match_threshold = 0.0;
    CHECK_THROWS_AS(bad_threshold.validate(), ConfigError);
    auto dup_rating = fixtures::config_with_questions({"a", "b"});
    dup_rating.rating_question_ids = {2, 2};
    CHECK_THROWS_AS(dup_rating.validate(), ConfigError);
    auto all_rating = fixtures::config_with_questions({"a"});
    all_rating.rating_question_ids = {1};
    CHECK_THROWS_AS(all_rating.validate(), ConfigError);
}

TEST_CASE("interview config JSON round-trip") {
    auto cfg = fixtures::config_with_questions({"one?", "two?"});
    cfg.rating_question_ids = {2};
    cfg.thresholds_override["informativeness"] = 1.5;
    cfg.rng_seed = 7;
    const auto j = interview_config_to_json(cfg);
    const auto back = interview_config_from_json(j);
    CHECK(back.questions.size() == 2);
    CHECK(back.rating_question_ids == std::vector<int>{2});
    CHECK(back.thresholds_override.at("informativeness") == 1.5);
    CHECK(back.rng_seed == 7);
    CHECK(back.completion_q1_convention == Q1Convention::denominator);
}
