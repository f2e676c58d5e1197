#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chatprofiler/resources.hpp"
#include "chatprofiler/transcript.hpp"

namespace chatprofiler {

// ---------------------------------------------------------------------------
// Metric identities
// ---------------------------------------------------------------------------

/// The question-level metrics, in presentation order. Completion rate is
/// computed per question over all sessions; the others per segment.
enum class Metric {
    informativeness,
    response_length,
    engagement_duration,
    completion_rate,
    empathy_level,
    repetition_rate,
    hate_speech_rate,
    privacy_intrusion_rate,
};

enum class Direction { below, above };

inline constexpr std::array<Metric, 8> all_metrics() {
    return {Metric::informativeness,  Metric::response_length,
            Metric::engagement_duration, Metric::completion_rate,
            Metric::empathy_level,    Metric::repetition_rate,
            Metric::hate_speech_rate, Metric::privacy_intrusion_rate};
}

inline std::string metric_key(Metric m) {
    switch (m) {
        case Metric::informativeness: return "informativeness";
        case Metric::response_length: return "response_length";
        case Metric::engagement_duration: return "engagement_duration";
        case Metric::completion_rate: return "completion_rate";
        case Metric::empathy_level: return "empathy_level";
        case Metric::repetition_rate: return "repetition_rate";
        case Metric::hate_speech_rate: return "hate_speech_rate";
        case Metric::privacy_intrusion_rate: return "privacy_intrusion_rate";
    }
    return {};
}

/// Human-readable form used in realized suggestion sentences.
inline std::string metric_display(Metric m) {
    std::string key = metric_key(m);
    for (auto& c : key)
        if (c == '_') c = ' ';
    return key;
}

inline std::optional<Metric> parse_metric(const std::string& key) {
    for (Metric m : all_metrics())
        if (metric_key(m) == key) return m;
    return std::nullopt;
}

/// Which side of the threshold triggers a suggestion. Low elicitation and
/// experience scores are bad; high repetition, hate and privacy rates are bad.
inline Direction metric_direction(Metric m) {
    switch (m) {
        case Metric::repetition_rate:
        case Metric::hate_speech_rate:
        case Metric::privacy_intrusion_rate:
            return Direction::above;
        default:
            return Direction::below;
    }
}

// ---------------------------------------------------------------------------
// Per-segment values
// ---------------------------------------------------------------------------

struct MetricVector {
    double informativeness = 0.0;       // >= 0
    std::size_t response_length = 0;    // whitespace words
    double engagement_duration = 0.0;   // minutes
    double empathy_level = 0.0;         // [0,1]
    double repetition_rate = 0.0;       // [0,1]
    double hate_speech_rate = 0.0;      // [0,1]
    double privacy_intrusion_rate = 0.0;  // [0,1]
};

struct SentimentBreakdown {
    double positive_frac = 0.0;
    double neutral_frac = 0.0;
    double negative_frac = 0.0;
    std::size_t n_texts = 0;  // 0 means no feedback was present

    bool has_feedback() const { return n_texts > 0; }
};

// ---------------------------------------------------------------------------
// Metric operations
// ---------------------------------------------------------------------------

/// Sum of the min-max normalized surprisal of each word of `user_text`.
inline double informativeness(const std::string& user_text,
                              const FrequencyTable& ft) {
    double sum = 0.0;
    for (const auto& token : text::tokenize(user_text))
        sum += ft.normalized_surprisal(token);
    return sum;
}

inline double informativeness(const std::vector<Message>& user_messages,
                              const FrequencyTable& ft) {
    double sum = 0.0;
    for (const auto& m : user_messages) sum += informativeness(m.text, ft);
    return sum;
}

/// Whitespace word count across the segment's user messages.
inline std::size_t response_length(const std::vector<Message>& user_messages) {
    std::size_t count = 0;
    for (const auto& m : user_messages)
        count += text::whitespace_token_count(m.text);
    return count;
}

/// Minutes between the first bot message and the last message of the segment.
inline double engagement_duration(const Segment& seg) {
    double first_bot = -1.0;
    double last = -1.0;
    for (const auto& m : seg.messages) {
        if (m.role == Role::bot && first_bot < 0.0) first_bot = m.timestamp;
        last = m.timestamp;
    }
    if (first_bot < 0.0 || last < 0.0) return 0.0;
    return std::max(0.0, (last - first_bot) / 60.0);
}

/// Fraction of empathetic tokens among the segment's bot-utterance tokens.
inline double empathy_level(const Segment& seg, const EmpathyLexicon& lex) {
    std::size_t empathetic = 0;
    std::size_t total = 0;
    for (const auto& m : seg.messages) {
        if (m.role != Role::bot) continue;
        for (const auto& token : text::tokenize(m.text)) {
            ++total;
            if (lex.words.count(token)) ++empathetic;
        }
    }
    if (total == 0) return 0.0;
    return static_cast<double>(empathetic) / static_cast<double>(total);
}

/// Fraction of bot bi-gram occurrences that repeat an earlier one. Bi-grams
/// are taken per utterance, never across two utterances, and pooled over the
/// segment; each distinct bi-gram contributes occurrences-beyond-first.
inline double repetition_rate(const Segment& seg) {
    std::map<std::pair<std::string, std::string>, std::size_t> occurrences;
    std::size_t total = 0;
    for (const auto& m : seg.messages) {
        if (m.role != Role::bot) continue;
        const auto tokens = text::tokenize(m.text);
        for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
            ++occurrences[{tokens[i], tokens[i + 1]}];
            ++total;
        }
    }
    if (total == 0) return 0.0;
    std::size_t repeated = 0;
    for (const auto& [bigram, n] : occurrences) repeated += n - 1;
    return static_cast<double>(repeated) / static_cast<double>(total);
}

namespace detail {

inline bool contains_phrase(const std::vector<std::string>& tokens,
                            const std::vector<std::string>& phrase) {
    if (phrase.empty() || phrase.size() > tokens.size()) return false;
    for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
        bool match = true;
        for (std::size_t k = 0; k < phrase.size(); ++k) {
            if (tokens[i + k] != phrase[k]) { match = false; break; }
        }
        if (match) return true;
    }
    return false;
}

}  // namespace detail

/// Fraction of the segment's bot utterances containing an offensive term
/// or phrase.
inline double hate_speech_rate(const Segment& seg, const OffensiveLexicon& lex) {
    std::size_t utterances = 0;
    std::size_t flagged = 0;
    for (const auto& m : seg.messages) {
        if (m.role != Role::bot) continue;
        ++utterances;
        const auto tokens = text::tokenize(m.text);
        for (const auto& term : lex.terms) {
            if (detail::contains_phrase(tokens, term)) {
                ++flagged;
                break;
            }
        }
    }
    if (utterances == 0) return 0.0;
    return static_cast<double>(flagged) / static_cast<double>(utterances);
}

/// Detected sensitive entities per user-response word. Each matched entity
/// counts once; the denominator is the whitespace word count.
inline double privacy_intrusion_rate(const Segment& seg,
                                     const PiiDetectorSet& detectors) {
    std::size_t entities = 0;
    std::size_t words = 0;
    for (const auto& m : seg.messages) {
        if (m.role != Role::user) continue;
        entities += detectors.count_matches(m.text);
        words += text::whitespace_token_count(m.text);
    }
    if (words == 0) return 0.0;
    // entity spans can overlap token boundaries; the rate is still a rate
    return std::min(1.0, static_cast<double>(entities) / static_cast<double>(words));
}

/// All per-segment metrics at once.
inline MetricVector compute_metrics(const Segment& seg, const ResourceBundle& res) {
    MetricVector v;
    const auto users = seg.user_messages();
    v.informativeness = informativeness(users, res.frequency);
    v.response_length = response_length(users);
    v.engagement_duration = engagement_duration(seg);
    v.empathy_level = empathy_level(seg, res.empathy);
    v.repetition_rate = repetition_rate(seg);
    v.hate_speech_rate = hate_speech_rate(seg, res.offensive);
    v.privacy_intrusion_rate = privacy_intrusion_rate(seg, res.pii);
    return v;
}

// ---------------------------------------------------------------------------
// Sentiment
// ---------------------------------------------------------------------------

/// Rule-augmented lexicon score of one text, normalized to [-1,1] by
/// score/sqrt(score^2+15). Boosters adjust the next polar token by their
/// increment; a negation within the three preceding tokens flips the sign.
inline double sentiment_score(const std::string& feedback,
                              const SentimentLexicon& lex) {
    const auto tokens = text::tokenize(feedback);
    double score = 0.0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto it = lex.polarity.find(tokens[i]);
        if (it == lex.polarity.end()) continue;
        double v = it->second;
        bool negated = false;
        for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
            const std::string& prev = tokens[i - back];
            const auto booster = lex.booster_words.find(prev);
            if (booster != lex.booster_words.end())
                v += (v >= 0.0 ? 1.0 : -1.0) * booster->second;
            if (lex.negation_words.count(prev)) negated = true;
        }
        if (negated) v = -v;
        score += v;
    }
    return score / std::sqrt(score * score + 15.0);
}

enum class SentimentClass { positive, neutral, negative };

inline SentimentClass classify_sentiment(double normalized_score) {
    if (normalized_score >= 0.05) return SentimentClass::positive;
    if (normalized_score <= -0.05) return SentimentClass::negative;
    return SentimentClass::neutral;
}

/// Class fractions over a set of feedback texts; all-zero when none exist.
inline SentimentBreakdown sentiment_breakdown(
    const std::vector<std::string>& feedback_texts, const SentimentLexicon& lex) {
    SentimentBreakdown b;
    b.n_texts = feedback_texts.size();
    if (feedback_texts.empty()) return b;
    std::size_t pos = 0, neu = 0, neg = 0;
    for (const auto& t : feedback_texts) {
        switch (classify_sentiment(sentiment_score(t, lex))) {
            case SentimentClass::positive: ++pos; break;
            case SentimentClass::neutral: ++neu; break;
            case SentimentClass::negative: ++neg; break;
        }
    }
    const double n = static_cast<double>(b.n_texts);
    b.positive_frac = static_cast<double>(pos) / n;
    b.neutral_frac = static_cast<double>(neu) / n;
    b.negative_frac = static_cast<double>(neg) / n;
    return b;
}

// ---------------------------------------------------------------------------
// Completion rate
// ---------------------------------------------------------------------------

/// Completion rate for one question over that question's segments. Cq counts
/// responded segments that advanced, Tq counts responded segments.
/// The opening question is referenced against the whole corpus under the
/// default convention; the literal convention divides the participant count
/// by Tq instead.
inline std::optional<double> completion_rate(
    int question_id, const std::vector<Segment>& segments_for_question,
    std::size_t corpus_size, const InterviewConfig& cfg) {
    std::size_t responded = 0;
    std::size_t completed = 0;
    for (const auto& seg : segments_for_question) {
        const bool has_user = std::any_of(
            seg.messages.begin(), seg.messages.end(),
            [](const Message& m) { return m.role == Role::user; });
        if (!has_user) continue;
        ++responded;
        if (seg.advanced) ++completed;
    }
    if (question_id == 1) {
        if (cfg.completion_q1_convention == Q1Convention::denominator) {
            if (corpus_size == 0) return std::nullopt;
            return static_cast<double>(completed) / static_cast<double>(corpus_size);
        }
        // literal reading: participant count as the numerator (may exceed 1)
        if (responded == 0) return std::nullopt;
        return static_cast<double>(corpus_size) / static_cast<double>(responded);
    }
    if (responded == 0) return std::nullopt;
    return static_cast<double>(completed) / static_cast<double>(responded);
}

}  // namespace chatprofiler
