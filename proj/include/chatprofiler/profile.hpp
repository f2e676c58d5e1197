#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chatprofiler/metrics.hpp"
#include "chatprofiler/resources.hpp"
#include "chatprofiler/transcript.hpp"

namespace chatprofiler {

// ---------------------------------------------------------------------------
// Profile data model
// ---------------------------------------------------------------------------

struct QuestionStats {
    int question_id = 0;
    std::string question_text;
    std::size_t n_segments = 0;   // sessions that reached the question
    std::size_t n_responded = 0;  // segments with at least one user message
    // keyed by metric, absent when n_segments == 0
    std::map<std::string, double> means;
    std::map<std::string, double> stddevs;
    std::optional<double> completion_rate;

    std::optional<double> mean_of(Metric m) const {
        if (m == Metric::completion_rate) return completion_rate;
        const auto it = means.find(metric_key(m));
        if (it == means.end()) return std::nullopt;
        return it->second;
    }
};

struct InterviewStats {
    std::size_t n_sessions = 0;
    std::optional<double> mean_satisfaction;  // [1,5]
    std::optional<double> mean_trust;         // [1,5]
    SentimentBreakdown sentiment;
    double completion_rate = 0.0;  // sessions finishing the whole interview
};

struct Threshold {
    double value = 0.0;
    Direction direction = Direction::below;
};

struct ThresholdSet {
    std::map<std::string, Threshold> entries;  // one per question-level metric

    const Threshold& at(Metric m) const { return entries.at(metric_key(m)); }
};

struct Flag {
    int question_id = 0;
    Metric metric = Metric::informativeness;
    double observed = 0.0;
    double threshold = 0.0;
    Direction direction = Direction::below;
};

/// One segment together with its metric values, kept for evidence extraction.
struct SegmentRecord {
    std::string session_id;
    Segment segment;
    MetricVector metrics;
};

struct ChatbotProfile {
    std::vector<QuestionStats> per_question;  // ascending question_id
    InterviewStats interview;
    ThresholdSet thresholds;
    std::vector<Flag> flags;
    // segments grouped by question, each sorted by session_id
    std::map<int, std::vector<SegmentRecord>> segments_by_question;
    std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// Threshold derivation
// ---------------------------------------------------------------------------

/// Q1's mean scores become the default thresholds; hate speech is pinned to
/// zero. Config overrides replace individual values but never the pin.
inline ThresholdSet derive_thresholds(const QuestionStats& q1,
                                      const InterviewConfig& cfg) {
    if (cfg.thresholds_override.count(metric_key(Metric::hate_speech_rate)))
        throw ConfigError("hate_speech_rate threshold is fixed at 0 and "
                          "cannot be overridden");
    for (const auto& [key, value] : cfg.thresholds_override) {
        if (!parse_metric(key))
            throw ConfigError("thresholds_override names unknown metric \"" +
                              key + "\"");
    }
    ThresholdSet set;
    for (Metric m : all_metrics()) {
        Threshold t;
        t.direction = metric_direction(m);
        if (m == Metric::hate_speech_rate) {
            t.value = 0.0;
        } else if (const auto it = cfg.thresholds_override.find(metric_key(m));
                   it != cfg.thresholds_override.end()) {
            t.value = it->second;
        } else if (const auto mean = q1.mean_of(m); mean.has_value()) {
            t.value = *mean;
        } else {
            throw ConfigError(
                "cannot derive threshold for " + metric_key(m) +
                ": the opening question has no data and no override is set");
        }
        set.entries[metric_key(m)] = t;
    }
    return set;
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

namespace detail {

inline double metric_value(const MetricVector& v, Metric m) {
    switch (m) {
        case Metric::informativeness: return v.informativeness;
        case Metric::response_length: return static_cast<double>(v.response_length);
        case Metric::engagement_duration: return v.engagement_duration;
        case Metric::empathy_level: return v.empathy_level;
        case Metric::repetition_rate: return v.repetition_rate;
        case Metric::hate_speech_rate: return v.hate_speech_rate;
        case Metric::privacy_intrusion_rate: return v.privacy_intrusion_rate;
        case Metric::completion_rate: break;
    }
    return 0.0;
}

inline constexpr std::array<Metric, 7> segment_metrics() {
    return {Metric::informativeness,  Metric::response_length,
            Metric::engagement_duration, Metric::empathy_level,
            Metric::repetition_rate,  Metric::hate_speech_rate,
            Metric::privacy_intrusion_rate};
}

// Welford accumulation; identical inputs give an exactly-zero deviation.
struct Accumulator {
    double mean_ = 0.0;
    double m2_ = 0.0;
    std::size_t n = 0;

    void add(double x) {
        ++n;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n);
        m2_ += delta * (x - mean_);
    }
    double mean() const { return n == 0 ? 0.0 : mean_; }
    double stddev() const {
        if (n == 0) return 0.0;
        return std::sqrt(std::max(0.0, m2_ / static_cast<double>(n)));
    }
};

}  // namespace detail

/// Builds the full chatbot profile: per-question means and deviations over
/// every session's segments, interview-level stats, Q1-derived thresholds,
/// and the flags breaching them.
inline ChatbotProfile aggregate(const std::vector<Session>& corpus,
                                const InterviewConfig& cfg,
                                const ResourceBundle& resources) {
    if (corpus.empty()) throw ConfigError("corpus is empty");
    cfg.validate();
    ChatbotProfile profile;

    // deterministic reduce: sessions processed in session_id order
    std::vector<const Session*> ordered;
    ordered.reserve(corpus.size());
    for (const auto& s : corpus) ordered.push_back(&s);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Session* a, const Session* b) {
                         return a->session_id < b->session_id;
                     });

    const int last_qid = cfg.last_interview_question_id();
    std::size_t finished_sessions = 0;
    detail::Accumulator satisfaction_acc, trust_acc;
    std::vector<std::string> feedback;

    for (const Session* s : ordered) {
        auto seg_result = segment_session_full(*s, cfg);
        for (auto& w : seg_result.warnings)
            profile.warnings.push_back(std::move(w));
        for (auto& seg : seg_result.segments) {
            SegmentRecord rec;
            rec.session_id = s->session_id;
            rec.metrics = compute_metrics(seg, resources);
            const int qid = seg.question_id;
            rec.segment = std::move(seg);
            if (qid == last_qid && rec.segment.advanced) ++finished_sessions;
            profile.segments_by_question[qid].push_back(std::move(rec));
        }
        auto ratings = extract_ratings(*s, cfg);
        for (auto& w : ratings.warnings)
            profile.warnings.push_back(std::move(w));
        if (ratings.satisfaction) satisfaction_acc.add(*ratings.satisfaction);
        if (ratings.trust) trust_acc.add(*ratings.trust);
        for (auto& f : ratings.feedback_texts) feedback.push_back(std::move(f));
    }

    for (const auto& q : cfg.interview_questions()) {
        QuestionStats stats;
        stats.question_id = q.question_id;
        stats.question_text = q.canonical_text;
        const auto it = profile.segments_by_question.find(q.question_id);
        std::vector<Segment> segments;
        if (it != profile.segments_by_question.end()) {
            stats.n_segments = it->second.size();
            std::map<std::string, detail::Accumulator> acc;
            for (const auto& rec : it->second) {
                segments.push_back(rec.segment);
                const bool has_user = std::any_of(
                    rec.segment.messages.begin(), rec.segment.messages.end(),
                    [](const Message& m) { return m.role == Role::user; });
                if (has_user) ++stats.n_responded;
                for (Metric m : detail::segment_metrics())
                    acc[metric_key(m)].add(detail::metric_value(rec.metrics, m));
            }
            for (const auto& [key, a] : acc) {
                stats.means[key] = a.mean();
                stats.stddevs[key] = a.stddev();
            }
        }
        stats.completion_rate =
            completion_rate(q.question_id, segments, corpus.size(), cfg);
        profile.per_question.push_back(std::move(stats));
    }

    profile.interview.n_sessions = corpus.size();
    if (satisfaction_acc.n > 0)
        profile.interview.mean_satisfaction = satisfaction_acc.mean();
    if (trust_acc.n > 0) profile.interview.mean_trust = trust_acc.mean();
    profile.interview.sentiment = sentiment_breakdown(feedback, resources.sentiment);
    profile.interview.completion_rate =
        static_cast<double>(finished_sessions) / static_cast<double>(corpus.size());

    const QuestionStats* q1 = nullptr;
    for (const auto& qs : profile.per_question)
        if (qs.question_id == 1) q1 = &qs;
    if (q1 == nullptr || q1->n_segments == 0) {
        // thresholds are underivable without data unless fully overridden
        QuestionStats empty;
        empty.question_id = 1;
        profile.thresholds = derive_thresholds(empty, cfg);
    } else {
        profile.thresholds = derive_thresholds(*q1, cfg);
    }

    for (const auto& qs : profile.per_question) {
        if (qs.n_segments == 0) continue;
        for (Metric m : all_metrics()) {
            const auto observed = qs.mean_of(m);
            if (!observed) continue;
            const Threshold& t = profile.thresholds.at(m);
            const bool breach = t.direction == Direction::below
                                    ? *observed < t.value
                                    : *observed > t.value;
            if (breach)
                profile.flags.push_back(
                    {qs.question_id, m, *observed, t.value, t.direction});
        }
    }
    return profile;
}

}  // namespace chatprofiler
