#include <cmath>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "chatprofiler/resources.hpp"
#include "fixtures.hpp"

using namespace chatprofiler;

TEST_CASE("frequency table surprisal bounds from a two-word vocabulary") {
    std::istringstream in("the\t1000\nquantum\t1\n");
    const auto ft = load_frequency_table(in);
    CHECK(ft.total() == 1001);
    // -log2(1000/1001) and -log2(1/1001), by hand
    CHECK(ft.min_surprisal() == Catch::Approx(0.0014419741739).margin(1e-9));
    CHECK(ft.max_surprisal() == Catch::Approx(9.9672262588360).margin(1e-9));
    CHECK(ft.normalized_surprisal("quantum") == 1.0);
    CHECK(ft.normalized_surprisal("the") == 0.0);
}

TEST_CASE("every vocabulary word normalizes into [0,1]") {
    std::istringstream in("a\t7\nb\t3\nc\t900\nd\t41\ne\t1\n");
    const auto ft = load_frequency_table(in);
    for (const auto* w : {"a", "b", "c", "d", "e"}) {
        const double s = *ft.surprisal(w);
        CHECK(s >= ft.min_surprisal());
        CHECK(s <= ft.max_surprisal());
        const double n = ft.normalized_surprisal(w);
        CHECK(n >= 0.0);
        CHECK(n <= 1.0);
    }
    CHECK(ft.normalized_surprisal("zzz") == 1.0);  // out of vocabulary
}

TEST_CASE("single-token vocabulary degenerates safely") {
    std::vector<std::string> warnings;
    std::istringstream in("only\t5\n");
    const auto ft = load_frequency_table(in, &warnings);
    CHECK(ft.min_surprisal() == ft.max_surprisal());
    CHECK(ft.normalized_surprisal("only") == 0.0);
    CHECK(ft.normalized_surprisal("other") == 1.0);
    CHECK_FALSE(warnings.empty());
}

TEST_CASE("frequency table rejects bad input") {
    std::istringstream neg("foo\t-3\n");
    try {
        load_frequency_table(neg);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    std::istringstream zero("foo\t0\n");
    CHECK_THROWS_AS(load_frequency_table(zero), ParseError);
    std::istringstream empty("");
    CHECK_THROWS_AS(load_frequency_table(empty), ParseError);
    std::istringstream notab("foo 3\n");
    CHECK_THROWS_AS(load_frequency_table(notab), ParseError);
}

TEST_CASE("loading is deterministic") {
    const std::string body = "x\t3\ny\t11\nz\t2\n";
    std::istringstream a(body), b(body);
    const auto fa = load_frequency_table(a);
    const auto fb = load_frequency_table(b);
    CHECK(fa.total() == fb.total());
    CHECK(fa.min_surprisal() == fb.min_surprisal());
    CHECK(fa.max_surprisal() == fb.max_surprisal());
}

TEST_CASE("embedding table infers and enforces dimension") {
    std::istringstream ok("alpha 1 0 0\nbeta 0 1 0\n");
    const auto t = load_embeddings(ok);
    CHECK(t.dimension == 3);
    CHECK(t.vectors.size() == 2);

    std::istringstream ragged("alpha 1 0 0\nbeta 0 1 0 4\n");
    try {
        load_embeddings(ragged);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    std::istringstream bad("alpha 1 zz 0\n");
    CHECK_THROWS_AS(load_embeddings(bad), ParseError);
    std::istringstream empty("");
    CHECK_THROWS_AS(load_embeddings(empty), ParseError);
}

TEST_CASE("empathy lexicon dedupes with a warning") {
    std::vector<std::string> warnings;
    std::istringstream in("# header\nsorry\ncomfort\nSorry\n");
    const auto lex = load_empathy_lexicon(in, &warnings);
    CHECK(lex.words.size() == 2);
    CHECK(warnings.size() == 1);
}

TEST_CASE("a 480-word empathy file loads at full size") {
    // 15 content words for each of 32 emotion categories
    std::ostringstream body;
    for (int i = 0; i < 480; ++i) body << "word" << i << "\n";
    std::istringstream in(body.str());
    std::vector<std::string> warnings;
    const auto lex = load_empathy_lexicon(in, &warnings);
    CHECK(lex.words.size() == 480);
    CHECK(warnings.empty());
}

TEST_CASE("sentiment lexicon sections parse") {
    std::istringstream in(
        "good\t1.9\nbad\t-2.5\n#boosters\nvery\t0.293\n#negations\nnot\nnever\n");
    const auto lex = load_sentiment_lexicon(in);
    CHECK(lex.polarity.at("good") == 1.9);
    CHECK(lex.booster_words.at("very") == 0.293);
    CHECK(lex.negation_words.count("not") == 1);

    std::istringstream clash(
        "good\t1.0\n#negations\nvery\n#boosters\nvery\t0.2\n");
    CHECK_THROWS_AS(load_sentiment_lexicon(clash), ParseError);
}

TEST_CASE("offensive lexicon holds tokens and phrases") {
    const auto lex = fixtures::offensive_with({"idiot", "Shut Up!"});
    CHECK(lex.terms.count({"idiot"}) == 1);
    CHECK(lex.terms.count({"shut", "up"}) == 1);
}

TEST_CASE("pii detectors compile and validate checksums") {
    const auto pii = fixtures::default_pii();
    CHECK(pii.count_matches("my ssn is 123-45-6789") == 1);
    CHECK(pii.count_matches("mail me at a.b@example.com please") == 1);
    CHECK(pii.count_matches("call 555-123-4567 now") == 1);
    CHECK(pii.count_matches("no pii here, none") == 0);
    // Luhn separates real from mistyped card numbers
    CHECK(pii.count_matches("card 4111111111111111") == 1);
    CHECK(pii.count_matches("card 4111111111111112") == 0);
    CHECK(pii.count_matches("card 4111-1111-1111-1111 ok") == 1);

    std::istringstream bad(R"([{"name":"ssn","regex":"(unclosed"}])");
    CHECK_THROWS_AS(load_pii_detectors(bad), ParseError);
    std::istringstream dup(
        R"([{"name":"a","regex":"x"},{"name":"a","regex":"y"}])");
    CHECK_THROWS_AS(load_pii_detectors(dup), ParseError);
}

TEST_CASE("luhn checksum by independent fixtures") {
    CHECK(luhn_valid("79927398713"));
    CHECK_FALSE(luhn_valid("79927398714"));
    CHECK(luhn_valid("4111 1111 1111 1111"));
    CHECK_FALSE(luhn_valid("1"));
}

TEST_CASE("shipped resource bundle loads cleanly") {
    const auto paths = ResourcePaths::in_directory(CHATPROFILER_TEST_DATA_DIR);
    const auto bundle = load_resources(paths);
    CHECK(bundle.frequency.vocabulary_size() > 10000);
    CHECK(bundle.frequency.normalized_surprisal("the") == 0.0);
    CHECK(bundle.empathy.words.size() > 400);
    CHECK(bundle.empathy.words.count("sorry") == 1);
    CHECK(bundle.sentiment.polarity.count("good") == 1);
    CHECK(bundle.offensive.terms.size() > 50);
    CHECK(bundle.pii.detectors.size() == 4);
    CHECK(bundle.embeddings.dimension == 50);
}
