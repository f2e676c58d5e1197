#include <catch2/catch_amalgamated.hpp>

#include "chatprofiler/text.hpp"

using namespace chatprofiler;

TEST_CASE("tokenize lowercases and splits on punctuation") {
    CHECK(text::tokenize("Where are you located?") ==
          std::vector<std::string>{"where", "are", "you", "located"});
    CHECK(text::tokenize("Hello,world!foo") ==
          std::vector<std::string>{"hello", "world", "foo"});
    CHECK(text::tokenize("") == std::vector<std::string>{});
    CHECK(text::tokenize("  \t\n ") == std::vector<std::string>{});
}

TEST_CASE("tokenize keeps word-internal apostrophes") {
    CHECK(text::tokenize("I don't know") ==
          std::vector<std::string>{"i", "don't", "know"});
    CHECK(text::tokenize("'quoted'") == std::vector<std::string>{"quoted"});
    // curly apostrophe folds to ASCII
    CHECK(text::tokenize("don\xE2\x80\x99t") == std::vector<std::string>{"don't"});
}

TEST_CASE("tokenize handles non-ASCII text") {
    CHECK(text::tokenize("caf\xC3\xA9 time") ==
          std::vector<std::string>{"caf\xC3\xA9", "time"});
    // em dash and ellipsis separate; CJK stays one token per run
    CHECK(text::tokenize("a\xE2\x80\x94" "b") == std::vector<std::string>{"a", "b"});
    CHECK(text::tokenize("\xE4\xBD\xA0\xE5\xA5\xBD\xE3\x80\x82ok").size() == 2);
}

TEST_CASE("tokenize survives malformed UTF-8") {
    const std::string bad = "ab\xFF\xFE cd\xC3";
    const auto tokens = text::tokenize(bad);
    REQUIRE(tokens.size() >= 2);
    CHECK(tokens[0] == "ab");
}

TEST_CASE("whitespace token count") {
    CHECK(text::whitespace_token_count("I am fine") == 3);
    CHECK(text::whitespace_token_count("my ssn is 123-45-6789") == 4);
    CHECK(text::whitespace_token_count("my social security is 123-45-6789") == 5);
    CHECK(text::whitespace_token_count("") == 0);
    CHECK(text::whitespace_token_count("   ") == 0);
    CHECK(text::whitespace_token_count("one\xC2\xA0two") == 2);  // NBSP splits
}

TEST_CASE("normalize lowercases, strips punctuation, collapses whitespace") {
    CHECK(text::normalize("Where are you   located?") == "where are you located");
    CHECK(text::normalize("  Hello,   World!  ") == "hello world");
    CHECK(text::normalize("???") == "");
}

TEST_CASE("similarity ratio matches brute-force LCS definition") {
    CHECK(text::similarity_ratio("", "") == 1.0);
    CHECK(text::similarity_ratio("abc", "abc") == 1.0);
    CHECK(text::similarity_ratio("abc", "xyz") == 0.0);
    // 2*LCS/(la+lb): LCS("kitten","sitting") = 4
    CHECK(text::similarity_ratio("kitten", "sitting") ==
          Catch::Approx(8.0 / 13.0));
}

TEST_CASE("reworded question spellings clear the 0.8 threshold") {
    const std::string a = text::normalize("Where you are located?");
    const std::string b = text::normalize("Where are you located?");
    const double sim = text::similarity_ratio(a, b);
    CHECK(sim >= 0.8);
    CHECK(sim == Catch::Approx(34.0 / 42.0));
}

TEST_CASE("similarity is reflexive after normalization") {
    for (const auto* q : {"How are you feeling today?", "a", "Zw\xC3\xB6lf?"}) {
        const auto n = text::normalize(q);
        CHECK(text::similarity_ratio(n, n) == 1.0);
    }
}

TEST_CASE("levenshtein distance sanity") {
    CHECK(text::levenshtein("kitten", "sitting") == 3);
    CHECK(text::levenshtein("", "abc") == 3);
    CHECK(text::levenshtein("abc", "abc") == 0);
}
