#pragma once

// In-memory builders for small test corpora and resources.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chatprofiler/metrics.hpp"
#include "chatprofiler/resources.hpp"
#include "chatprofiler/transcript.hpp"

namespace fixtures {

using namespace chatprofiler;

inline Message bot(std::string text, double ts, std::optional<int> qid = {}) {
    return Message{Role::bot, std::move(text), ts, qid};
}

inline Message user(std::string text, double ts, std::optional<int> qid = {}) {
    return Message{Role::user, std::move(text), ts, qid};
}

inline Segment make_segment(std::vector<Message> messages, int qid = 1,
                            bool advanced = false) {
    Segment seg;
    seg.question_id = qid;
    seg.messages = std::move(messages);
    seg.advanced = advanced;
    return seg;
}

inline InterviewConfig config_with_questions(std::vector<std::string> texts) {
    InterviewConfig cfg;
    for (std::size_t i = 0; i < texts.size(); ++i)
        cfg.questions.push_back({static_cast<int>(i) + 1, std::move(texts[i])});
    return cfg;
}

inline FrequencyTable tiny_frequency_table() {
    return FrequencyTable({{"the", 1000}, {"quantum", 1}});
}

inline EmpathyLexicon empathy_with(std::vector<std::string> words) {
    EmpathyLexicon lex;
    for (auto& w : words) lex.words.insert(std::move(w));
    return lex;
}

inline SentimentLexicon small_sentiment() {
    SentimentLexicon lex;
    lex.polarity = {{"good", 1.9},  {"great", 3.1}, {"love", 3.2},
                    {"bad", -2.5},  {"terrible", -3.1}, {"boring", -1.3}};
    lex.booster_words = {{"very", 0.293}, {"really", 0.293}};
    lex.negation_words = {"not", "no", "never", "don't"};
    return lex;
}

inline OffensiveLexicon offensive_with(std::vector<std::string> entries) {
    std::ostringstream ss;
    for (const auto& e : entries) ss << e << "\n";
    std::istringstream in(ss.str());
    return load_offensive_lexicon(in);
}

inline PiiDetectorSet default_pii() {
    std::istringstream in(R"([
      {"name": "us_social_security_number", "regex": "\\b\\d{3}-\\d{2}-\\d{4}\\b"},
      {"name": "email_address",
       "regex": "[A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\\.[A-Za-z]{2,}"},
      {"name": "us_phone_number",
       "regex": "\\b\\(?\\d{3}\\)?[-. ]\\d{3}[-. ]\\d{4}\\b"},
      {"name": "credit_card_number",
       "regex": "\\b\\d(?:[- ]?\\d){12,18}\\b", "checksum": "luhn"}
    ])");
    return load_pii_detectors(in);
}

inline EmbeddingTable embeddings_with(
    std::map<std::string, std::vector<double>> vectors) {
    EmbeddingTable t;
    for (auto& [word, vec] : vectors) {
        t.dimension = vec.size();
        t.vectors[word] = std::move(vec);
    }
    return t;
}

/// Minimal but complete bundle for pipeline-level tests.
inline ResourceBundle small_bundle() {
    ResourceBundle bundle{
        tiny_frequency_table(),
        empathy_with({"sorry", "thanks", "glad"}),
        small_sentiment(),
        offensive_with({"idiot", "shut up", "stupid"}),
        default_pii(),
        embeddings_with({{"where", {1.0, 0.0}},
                         {"are", {0.5, 0.5}},
                         {"you", {0.0, 1.0}},
                         {"located", {1.0, 1.0}}}),
        {}};
    return bundle;
}

}  // namespace fixtures
