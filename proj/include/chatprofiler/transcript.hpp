#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "chatprofiler/error.hpp"
#include "chatprofiler/text.hpp"

namespace chatprofiler {

enum class Role { bot, user };

inline std::string role_name(Role r) { return r == Role::bot ? "bot" : "user"; }

struct Message {
    Role role = Role::bot;
    std::string text;
    double timestamp = 0.0;  // seconds since epoch, fractional allowed
    std::optional<int> question_id;
};

struct Session {
    std::string session_id;
    std::vector<Message> messages;  // non-decreasing timestamps
    std::optional<int> satisfaction_rating;  // 1..5
    std::optional<int> trust_rating;         // 1..5
    std::vector<std::string> feedback_texts;
};

/// The slice of one session attributable to a single interview question,
/// from the bot asking it until the next question opens.
struct Segment {
    int question_id = 0;
    std::vector<Message> messages;  // session order
    bool advanced = false;  // reached the next question or the end marker

    std::vector<Message> bot_messages() const {
        std::vector<Message> out;
        for (const auto& m : messages)
            if (m.role == Role::bot) out.push_back(m);
        return out;
    }
    std::vector<Message> user_messages() const {
        std::vector<Message> out;
        for (const auto& m : messages)
            if (m.role == Role::user) out.push_back(m);
        return out;
    }
};

struct QuestionSpec {
    int question_id = 0;
    std::string canonical_text;
};

/// Which completion-rate convention applies to the opening question.
enum class Q1Convention { denominator, numerator };

struct InterviewConfig {
    std::vector<QuestionSpec> questions;  // ids 1..n consecutive
    std::vector<int> rating_question_ids;  // trailing questions eliciting ratings
    double fuzzy_match_threshold = 0.8;
    std::map<std::string, double> thresholds_override;
    int max_evidence_per_suggestion = 2;
    std::uint64_t rng_seed = 0;
    Q1Convention completion_q1_convention = Q1Convention::denominator;

    bool is_rating_question(int qid) const {
        return std::find(rating_question_ids.begin(), rating_question_ids.end(),
                         qid) != rating_question_ids.end();
    }

    /// The interview proper: configured questions that are not rating elicitors.
    std::vector<QuestionSpec> interview_questions() const {
        std::vector<QuestionSpec> out;
        for (const auto& q : questions)
            if (!is_rating_question(q.question_id)) out.push_back(q);
        return out;
    }

    int last_interview_question_id() const {
        int last = 0;
        for (const auto& q : questions)
            if (!is_rating_question(q.question_id)) last = q.question_id;
        return last;
    }

    std::string question_text(int qid) const {
        for (const auto& q : questions)
            if (q.question_id == qid) return q.canonical_text;
        return {};
    }

    void validate() const {
        if (questions.empty())
            throw ConfigError("interview config has no questions");
        for (std::size_t i = 0; i < questions.size(); ++i) {
            if (questions[i].question_id != static_cast<int>(i) + 1)
                throw ConfigError("question_ids must be 1..n consecutive");
            if (text::trim(questions[i].canonical_text).empty())
                throw ConfigError("canonical_text of question " +
                                  std::to_string(i + 1) + " is empty");
        }
        if (!(fuzzy_match_threshold > 0.0 && fuzzy_match_threshold <= 1.0))
            throw ConfigError("fuzzy_match_threshold must lie in (0,1]");
        if (max_evidence_per_suggestion < 1)
            throw ConfigError("max_evidence_per_suggestion must be >= 1");
        std::set<int> seen_ratings;
        for (int qid : rating_question_ids) {
            if (qid < 1 || qid > static_cast<int>(questions.size()))
                throw ConfigError("rating_question_id " + std::to_string(qid) +
                                  " is not a configured question");
            if (!seen_ratings.insert(qid).second)
                throw ConfigError("rating_question_id " + std::to_string(qid) +
                                  " is listed twice");
        }
        if (last_interview_question_id() == 0)
            throw ConfigError("every configured question is a rating question");
    }
};

inline InterviewConfig interview_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("interview config must be a JSON object");
    InterviewConfig cfg;
    if (!j.contains("questions") || !j["questions"].is_array())
        throw ConfigError("interview config is missing the questions array");
    for (const auto& qj : j["questions"]) {
        QuestionSpec q;
        if (!qj.contains("question_id") || !qj["question_id"].is_number_integer())
            throw ConfigError("question entry is missing question_id");
        if (!qj.contains("canonical_text") || !qj["canonical_text"].is_string())
            throw ConfigError("question entry is missing canonical_text");
        q.question_id = qj["question_id"].get<int>();
        q.canonical_text = qj["canonical_text"].get<std::string>();
        cfg.questions.push_back(std::move(q));
    }
    if (j.contains("rating_question_ids") && !j["rating_question_ids"].is_null())
        cfg.rating_question_ids = j["rating_question_ids"].get<std::vector<int>>();
    if (j.contains("fuzzy_match_threshold") && !j["fuzzy_match_threshold"].is_null())
        cfg.fuzzy_match_threshold = j["fuzzy_match_threshold"].get<double>();
    if (j.contains("thresholds_override") && !j["thresholds_override"].is_null()) {
        if (!j["thresholds_override"].is_object())
            throw ConfigError("thresholds_override must be an object");
        for (const auto& [key, value] : j["thresholds_override"].items()) {
            if (!value.is_number())
                throw ConfigError("thresholds_override." + key + " must be a number");
            cfg.thresholds_override[key] = value.get<double>();
        }
    }
    if (j.contains("max_evidence_per_suggestion") &&
        !j["max_evidence_per_suggestion"].is_null())
        cfg.max_evidence_per_suggestion = j["max_evidence_per_suggestion"].get<int>();
    if (j.contains("rng_seed") && !j["rng_seed"].is_null()) {
        if (!j["rng_seed"].is_number_integer() || j["rng_seed"].get<double>() < 0)
            throw ConfigError("rng_seed must be a non-negative integer");
        cfg.rng_seed = j["rng_seed"].get<std::uint64_t>();
    }
    if (j.contains("completion_q1_convention") &&
        !j["completion_q1_convention"].is_null()) {
        const std::string c = j["completion_q1_convention"].get<std::string>();
        if (c == "denominator") {
            cfg.completion_q1_convention = Q1Convention::denominator;
        } else if (c == "numerator") {
            cfg.completion_q1_convention = Q1Convention::numerator;
        } else {
            throw ConfigError("completion_q1_convention must be \"denominator\" "
                              "or \"numerator\"");
        }
    }
    cfg.validate();
    return cfg;
}

inline nlohmann::json interview_config_to_json(const InterviewConfig& cfg) {
    nlohmann::json j;
    j["questions"] = nlohmann::json::array();
    for (const auto& q : cfg.questions)
        j["questions"].push_back(
            {{"question_id", q.question_id}, {"canonical_text", q.canonical_text}});
    j["rating_question_ids"] = cfg.rating_question_ids;
    j["fuzzy_match_threshold"] = cfg.fuzzy_match_threshold;
    j["thresholds_override"] = cfg.thresholds_override;
    j["max_evidence_per_suggestion"] = cfg.max_evidence_per_suggestion;
    j["rng_seed"] = cfg.rng_seed;
    j["completion_q1_convention"] =
        cfg.completion_q1_convention == Q1Convention::denominator ? "denominator"
                                                                  : "numerator";
    return j;
}

// ---------------------------------------------------------------------------
// Wire format (JSONL, one session per line)
// ---------------------------------------------------------------------------

namespace detail {

inline Message parse_message(const nlohmann::json& j, long line) {
    if (!j.is_object()) throw ParseError("message is not an object", line);
    Message m;
    if (!j.contains("role") || !j["role"].is_string())
        throw ParseError("message is missing a role", line);
    const std::string role = j["role"].get<std::string>();
    if (role == "bot") {
        m.role = Role::bot;
    } else if (role == "user") {
        m.role = Role::user;
    } else {
        throw ParseError("unknown role \"" + role + "\"", line);
    }
    if (!j.contains("text") || !j["text"].is_string())
        throw ParseError("message is missing text", line);
    m.text = j["text"].get<std::string>();
    if (!j.contains("timestamp") || !j["timestamp"].is_number())
        throw ParseError("message is missing a timestamp", line);
    m.timestamp = j["timestamp"].get<double>();
    if (!std::isfinite(m.timestamp) || m.timestamp < 0.0)
        throw ParseError("timestamp must be finite and non-negative", line);
    if (j.contains("question_id") && !j["question_id"].is_null()) {
        if (!j["question_id"].is_number_integer())
            throw ParseError("question_id must be an integer", line);
        const int qid = j["question_id"].get<int>();
        if (qid < 1) throw ParseError("question_id must be >= 1", line);
        m.question_id = qid;
    }
    return m;
}

inline std::optional<int> parse_rating_field(const nlohmann::json& j,
                                             const char* key, long line) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    if (!j[key].is_number_integer())
        throw ParseError(std::string(key) + " must be an integer", line);
    const int v = j[key].get<int>();
    if (v < 1 || v > 5)
        throw ParseError(std::string(key) + " must lie in [1,5]", line);
    return v;
}

}  // namespace detail

inline Session parse_session_line(const std::string& line_text, long line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), line);
    }
    if (!j.is_object()) throw ParseError("session is not a JSON object", line);
    Session s;
    if (!j.contains("session_id") || !j["session_id"].is_string())
        throw ParseError("session is missing session_id", line);
    s.session_id = j["session_id"].get<std::string>();
    if (j.contains("messages")) {
        if (!j["messages"].is_array())
            throw ParseError("messages must be an array", line);
        for (const auto& mj : j["messages"])
            s.messages.push_back(detail::parse_message(mj, line));
    }
    // file order is kept for equal timestamps
    std::stable_sort(s.messages.begin(), s.messages.end(),
                     [](const Message& a, const Message& b) {
                         return a.timestamp < b.timestamp;
                     });
    s.satisfaction_rating = detail::parse_rating_field(j, "satisfaction_rating", line);
    s.trust_rating = detail::parse_rating_field(j, "trust_rating", line);
    if (j.contains("feedback_texts") && !j["feedback_texts"].is_null()) {
        if (!j["feedback_texts"].is_array())
            throw ParseError("feedback_texts must be an array", line);
        for (const auto& f : j["feedback_texts"]) {
            if (!f.is_string())
                throw ParseError("feedback_texts entries must be strings", line);
            s.feedback_texts.push_back(f.get<std::string>());
        }
    }
    return s;
}

/// Parses a JSONL stream, one session per line. Throws on the first bad line.
inline std::vector<Session> parse_corpus(std::istream& in) {
    std::vector<Session> corpus;
    std::set<std::string> ids;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        corpus.push_back(parse_session_line(line, lineno));
        if (!ids.insert(corpus.back().session_id).second)
            throw ParseError("duplicate session_id \"" +
                                 corpus.back().session_id + "\"",
                             lineno);
    }
    return corpus;
}

/// Lenient variant used by `validate`: collects one message per bad line
/// instead of stopping at the first.
inline std::vector<Session> parse_corpus_collect(std::istream& in,
                                                 std::vector<std::string>& errors) {
    std::vector<Session> corpus;
    std::set<std::string> ids;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            corpus.push_back(parse_session_line(line, lineno));
            if (!ids.insert(corpus.back().session_id).second) {
                corpus.pop_back();
                throw ParseError("duplicate session_id", lineno);
            }
        } catch (const ParseError& e) {
            errors.emplace_back(e.what());
        }
    }
    return corpus;
}

inline nlohmann::json session_to_json(const Session& s) {
    nlohmann::json j;
    j["session_id"] = s.session_id;
    j["messages"] = nlohmann::json::array();
    for (const auto& m : s.messages) {
        nlohmann::json mj;
        mj["role"] = role_name(m.role);
        mj["text"] = m.text;
        mj["timestamp"] = m.timestamp;
        if (m.question_id) mj["question_id"] = *m.question_id;
        j["messages"].push_back(std::move(mj));
    }
    if (s.satisfaction_rating) j["satisfaction_rating"] = *s.satisfaction_rating;
    if (s.trust_rating) j["trust_rating"] = *s.trust_rating;
    if (!s.feedback_texts.empty()) j["feedback_texts"] = s.feedback_texts;
    return j;
}

inline void write_corpus(std::ostream& out, const std::vector<Session>& corpus) {
    for (const auto& s : corpus) out << session_to_json(s).dump() << "\n";
}

// ---------------------------------------------------------------------------
// Segmentation
// ---------------------------------------------------------------------------

struct SegmentationResult {
    std::vector<Segment> segments;  // interview questions only, ascending id
    bool has_post_interview = false;
    // user responses inside each rating question's zone, in session order
    std::map<int, std::vector<Message>> rating_responses;
    std::vector<std::string> warnings;
};

namespace detail {

/// Per-message question assignment. With explicit question_ids the labels
/// win; otherwise each bot message that fuzzy-matches a canonical question
/// opens that question's zone.
inline std::vector<std::optional<int>> assign_questions(
    const Session& s, const InterviewConfig& cfg,
    std::vector<std::string>& warnings) {
    std::vector<std::optional<int>> assignment(s.messages.size());
    const bool explicit_mode = std::any_of(
        s.messages.begin(), s.messages.end(),
        [](const Message& m) { return m.question_id.has_value(); });
    const int max_qid = static_cast<int>(cfg.questions.size());

    std::vector<std::string> normalized;
    normalized.reserve(cfg.questions.size());
    for (const auto& q : cfg.questions)
        normalized.push_back(text::normalize(q.canonical_text));

    std::optional<int> current;
    int max_opened = 0;
    for (std::size_t i = 0; i < s.messages.size(); ++i) {
        const Message& m = s.messages[i];
        const std::optional<int> before = current;
        if (explicit_mode) {
            if (m.question_id) current = *m.question_id;
        } else if (m.role == Role::bot) {
            const std::string norm = text::normalize(m.text);
            double best = -1.0;
            int best_qid = 0;
            for (std::size_t k = 0; k < normalized.size(); ++k) {
                const double sim = text::similarity_ratio(norm, normalized[k]);
                if (sim > best) {
                    best = sim;
                    best_qid = cfg.questions[k].question_id;
                }
            }
            if (best >= cfg.fuzzy_match_threshold && best_qid != 0)
                current = best_qid;
        }
        if (current && before != current) {
            if (*current < max_opened) {
                warnings.push_back("session " + s.session_id + ": question " +
                                   std::to_string(*current) +
                                   " matched after question " +
                                   std::to_string(max_opened));
            }
            if (*current > max_qid) {
                warnings.push_back("session " + s.session_id +
                                   ": question_id " + std::to_string(*current) +
                                   " is not configured; treated as post-interview");
            }
            max_opened = std::max(max_opened, *current);
        }
        assignment[i] = current;
    }
    return assignment;
}

}  // namespace detail

inline SegmentationResult segment_session_full(const Session& s,
                                               const InterviewConfig& cfg) {
    cfg.validate();
    SegmentationResult result;
    const auto assignment = detail::assign_questions(s, cfg, result.warnings);
    const int max_qid = static_cast<int>(cfg.questions.size());

    std::map<int, Segment> by_question;
    for (std::size_t i = 0; i < s.messages.size(); ++i) {
        if (!assignment[i]) continue;  // chatter before the first question
        const int qid = *assignment[i];
        if (qid > max_qid || cfg.is_rating_question(qid)) {
            result.has_post_interview = true;
            if (cfg.is_rating_question(qid) && s.messages[i].role == Role::user)
                result.rating_responses[qid].push_back(s.messages[i]);
            continue;
        }
        auto& seg = by_question[qid];
        seg.question_id = qid;
        seg.messages.push_back(s.messages[i]);
    }

    for (auto& [qid, seg] : by_question) {
        const bool asked = std::any_of(
            seg.messages.begin(), seg.messages.end(),
            [](const Message& m) { return m.role == Role::bot; });
        if (!asked) continue;  // a segment exists only if the question was asked
        for (auto& m : seg.messages) m.question_id = qid;
        result.segments.push_back(std::move(seg));
    }
    for (auto& seg : result.segments) {
        const bool later_segment = std::any_of(
            result.segments.begin(), result.segments.end(),
            [&](const Segment& other) { return other.question_id > seg.question_id; });
        seg.advanced = later_segment || result.has_post_interview;
    }
    return result;
}

inline std::vector<Segment> segment_session(const Session& s,
                                            const InterviewConfig& cfg) {
    return segment_session_full(s, cfg).segments;
}

// ---------------------------------------------------------------------------
// Rating extraction
// ---------------------------------------------------------------------------

struct Ratings {
    std::optional<int> satisfaction;
    std::optional<int> trust;
    std::vector<std::string> feedback_texts;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::optional<long> first_integer_token(const std::string& s) {
    for (const auto& tok : text::tokenize(s)) {
        if (tok.empty()) continue;
        bool digits = true;
        for (char c : tok)
            if (c < '0' || c > '9') { digits = false; break; }
        if (digits && tok.size() <= 9) return std::stol(tok);
    }
    return std::nullopt;
}

}  // namespace detail

/// Satisfaction comes from the first designated rating question, trust from
/// the second; responses to any later designated question are rationale.
inline Ratings extract_ratings(const Session& s, const InterviewConfig& cfg) {
    Ratings out;
    out.satisfaction = s.satisfaction_rating;
    out.trust = s.trust_rating;
    out.feedback_texts = s.feedback_texts;

    const auto seg = segment_session_full(s, cfg);
    for (std::size_t idx = 0; idx < cfg.rating_question_ids.size(); ++idx) {
        const int qid = cfg.rating_question_ids[idx];
        const auto it = seg.rating_responses.find(qid);
        if (it == seg.rating_responses.end()) continue;
        std::optional<int>* slot = nullptr;
        if (idx == 0) slot = &out.satisfaction;
        else if (idx == 1) slot = &out.trust;

        bool rating_consumed = false;
        for (const auto& msg : it->second) {
            const auto value = detail::first_integer_token(msg.text);
            if (slot != nullptr && !rating_consumed && value.has_value()) {
                rating_consumed = true;
                if (*value >= 1 && *value <= 5) {
                    if (!slot->has_value()) *slot = static_cast<int>(*value);
                } else {
                    out.warnings.push_back(
                        "session " + s.session_id + ": rating " +
                        std::to_string(*value) + " outside [1,5] ignored");
                }
                continue;
            }
            if (!text::trim(msg.text).empty())
                out.feedback_texts.push_back(msg.text);
        }
    }
    return out;
}

}  // namespace chatprofiler
