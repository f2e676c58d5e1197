#pragma once

#include <cmath>
#include <cstdio>
#include <ctime>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "chatprofiler/error.hpp"
#include "chatprofiler/profile.hpp"
#include "chatprofiler/suggestions.hpp"

namespace chatprofiler {

struct ReportDocument {
    std::string schema_version = "1";
    std::string generated_at;  // ISO-8601 UTC
    InterviewConfig config;
    ChatbotProfile profile;
    std::vector<Suggestion> suggestions;
    bool include_suggestions = false;
    std::vector<std::string> warnings;
};

inline std::string format_timestamp_utc(std::int64_t epoch_seconds) {
    std::time_t t = static_cast<std::time_t>(epoch_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec);
    return buf;
}

// ---------------------------------------------------------------------------
// JSON emission
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json opt_number(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

inline nlohmann::json sentiment_to_json(const SentimentBreakdown& s) {
    return {{"positive_frac", s.positive_frac},
            {"neutral_frac", s.neutral_frac},
            {"negative_frac", s.negative_frac},
            {"n_texts", s.n_texts}};
}

inline nlohmann::json profile_to_json(const ChatbotProfile& p) {
    nlohmann::json j;
    j["per_question"] = nlohmann::json::array();
    for (const auto& q : p.per_question) {
        nlohmann::json qj;
        qj["question_id"] = q.question_id;
        qj["question_text"] = q.question_text;
        qj["n_segments"] = q.n_segments;
        qj["n_responded"] = q.n_responded;
        qj["completion_rate"] =
            q.completion_rate ? nlohmann::json(*q.completion_rate)
                              : nlohmann::json(nullptr);
        if (q.n_segments > 0) {
            qj["means"] = q.means;
            qj["stddevs"] = q.stddevs;
        } else {
            qj["means"] = nullptr;
            qj["stddevs"] = nullptr;
        }
        j["per_question"].push_back(std::move(qj));
    }
    j["interview"] = {
        {"n_sessions", p.interview.n_sessions},
        {"mean_satisfaction", opt_number(p.interview.mean_satisfaction)},
        {"mean_trust", opt_number(p.interview.mean_trust)},
        {"sentiment", sentiment_to_json(p.interview.sentiment)},
        {"completion_rate", p.interview.completion_rate}};
    j["thresholds"] = nlohmann::json::object();
    for (const auto& [key, t] : p.thresholds.entries)
        j["thresholds"][key] = {
            {"value", t.value},
            {"direction", t.direction == Direction::below ? "below" : "above"}};
    j["flags"] = nlohmann::json::array();
    for (const auto& f : p.flags)
        j["flags"].push_back(
            {{"question_id", f.question_id},
             {"metric", metric_key(f.metric)},
             {"observed", f.observed},
             {"threshold", f.threshold},
             {"direction", f.direction == Direction::below ? "below" : "above"}});
    return j;
}

inline nlohmann::json evidence_to_json(const EvidenceBundle& e) {
    nlohmann::json j;
    j["clusters"] = nlohmann::json::array();
    for (const auto& c : e.clusters)
        j["clusters"].push_back({{"coverage_frac", c.coverage_frac},
                                 {"session_id", c.representative.session_id},
                                 {"question_id", c.representative.question_id},
                                 {"transcript", c.transcript}});
    j["omitted_segment_refs"] = nlohmann::json::array();
    for (const auto& ref : e.omitted_segment_refs)
        j["omitted_segment_refs"].push_back(
            {{"session_id", ref.session_id}, {"question_id", ref.question_id}});
    return j;
}

inline nlohmann::json suggestion_to_json(const Suggestion& s) {
    return {{"question_id", s.question_id},
            {"question_text", s.question_text},
            {"metric", metric_key(s.metric)},
            {"direction_word", s.direction_word},
            {"guideline_id", s.guideline_id},
            {"sentence", s.sentence},
            {"observed", s.observed},
            {"threshold", s.threshold},
            {"evidence", evidence_to_json(s.evidence)}};
}

inline void require_finite(const nlohmann::json& j, const std::string& path) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v))
            throw Error("non-finite value at " + path);
    } else if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            require_finite(value, path + "." + key);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& value : j) require_finite(value, path + "[" + std::to_string(i++) + "]");
    }
}

}  // namespace detail

inline nlohmann::json report_to_json(const ReportDocument& doc) {
    nlohmann::json j;
    j["schema_version"] = doc.schema_version;
    j["generated_at"] = doc.generated_at;
    j["config"] = interview_config_to_json(doc.config);
    j["profile"] = detail::profile_to_json(doc.profile);
    if (doc.include_suggestions) {
        j["suggestions"] = nlohmann::json::array();
        for (const auto& s : doc.suggestions)
            j["suggestions"].push_back(detail::suggestion_to_json(s));
    }
    j["warnings"] = doc.warnings;
    return j;
}

/// Canonical serialization: keys sorted, shortest round-trip floats, two
/// space indentation, trailing newline. Identical documents produce
/// identical bytes; non-finite values are rejected. Invalid UTF-8 that
/// reaches an in-memory document is replaced, not fatal.
inline std::string emit_json(const ReportDocument& doc) {
    const nlohmann::json j = report_to_json(doc);
    detail::require_finite(j, "$");
    return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

// ---------------------------------------------------------------------------
// HTML emission
// ---------------------------------------------------------------------------

namespace detail {

inline std::string escape_html(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string fmt_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    if (s == "-0" || s == "-0.0" || s == "-0.00") s.erase(0, 1);
    return s;
}

inline int display_decimals(Metric m) {
    return m == Metric::engagement_duration ? 1 : 2;
}

inline std::string fmt_percent(double frac) {
    return std::to_string(static_cast<long>(std::llround(frac * 100.0))) + "%";
}

/// One bar chart across questions with a dashed threshold rule.
inline std::string bar_chart_svg(const std::vector<int>& question_ids,
                                 const std::vector<std::optional<double>>& values,
                                 double threshold, Direction direction,
                                 const std::vector<bool>& flagged, int decimals) {
    const int width = 560, height = 200;
    const int left = 40, right = 16, top = 18, bottom = 32;
    const int plot_w = width - left - right;
    const int plot_h = height - top - bottom;
    double max_value = threshold;
    for (const auto& v : values)
        if (v) max_value = std::max(max_value, *v);
    if (max_value <= 0.0) max_value = 1.0;
    max_value *= 1.15;

    std::string svg;
    svg += "<svg class=\"chart\" viewBox=\"0 0 " + std::to_string(width) + " " +
           std::to_string(height) + "\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" role=\"img\">\n";
    svg += "<line x1=\"" + std::to_string(left) + "\" y1=\"" +
           std::to_string(top + plot_h) + "\" x2=\"" +
           std::to_string(left + plot_w) + "\" y2=\"" +
           std::to_string(top + plot_h) + "\" class=\"axis\"/>\n";

    const std::size_t n = question_ids.size();
    const double slot = static_cast<double>(plot_w) / static_cast<double>(n);
    const double bar_w = slot * 0.55;
    for (std::size_t i = 0; i < n; ++i) {
        const double cx = left + slot * (static_cast<double>(i) + 0.5);
        const double label_y = top + plot_h + 16;
        svg += "<text x=\"" + fmt_fixed(cx, 1) + "\" y=\"" +
               fmt_fixed(label_y, 1) + "\" class=\"xlabel\">Q" +
               std::to_string(question_ids[i]) + "</text>\n";
        if (!values[i]) continue;
        const double h = plot_h * (*values[i] / max_value);
        const double x = cx - bar_w / 2.0;
        const double y = top + plot_h - h;
        svg += "<rect x=\"" + fmt_fixed(x, 1) + "\" y=\"" + fmt_fixed(y, 1) +
               "\" width=\"" + fmt_fixed(bar_w, 1) + "\" height=\"" +
               fmt_fixed(h, 1) + "\" class=\"" +
               (flagged[i] ? "bar flagged" : "bar") + "\"/>\n";
        svg += "<text x=\"" + fmt_fixed(cx, 1) + "\" y=\"" +
               fmt_fixed(y - 4, 1) + "\" class=\"value\">" +
               fmt_fixed(*values[i], decimals) + "</text>\n";
    }
    const double ty = top + plot_h - plot_h * (threshold / max_value);
    svg += "<line x1=\"" + std::to_string(left) + "\" y1=\"" + fmt_fixed(ty, 1) +
           "\" x2=\"" + std::to_string(left + plot_w) + "\" y2=\"" +
           fmt_fixed(ty, 1) + "\" class=\"threshold\"/>\n";
    svg += "<text x=\"" + std::to_string(left + 2) + "\" y=\"" +
           fmt_fixed(ty - 4, 1) + "\" class=\"tlabel\">threshold " +
           fmt_fixed(threshold, decimals) + " (" +
           (direction == Direction::below ? "flag below" : "flag above") +
           ")</text>\n";
    svg += "</svg>\n";
    return svg;
}

inline std::string pie_slice_path(double cx, double cy, double r,
                                  double start_frac, double end_frac) {
    const double tau = 6.283185307179586;
    const double a0 = tau * start_frac - tau / 4.0;
    const double a1 = tau * end_frac - tau / 4.0;
    const double x0 = cx + r * std::cos(a0), y0 = cy + r * std::sin(a0);
    const double x1 = cx + r * std::cos(a1), y1 = cy + r * std::sin(a1);
    const int large = (end_frac - start_frac) > 0.5 ? 1 : 0;
    return "M" + fmt_fixed(cx, 2) + "," + fmt_fixed(cy, 2) + " L" +
           fmt_fixed(x0, 2) + "," + fmt_fixed(y0, 2) + " A" + fmt_fixed(r, 2) +
           "," + fmt_fixed(r, 2) + " 0 " + std::to_string(large) + " 1 " +
           fmt_fixed(x1, 2) + "," + fmt_fixed(y1, 2) + " Z";
}

inline std::string sentiment_pie_svg(const SentimentBreakdown& s) {
    struct Slice { const char* name; const char* cls; double frac; };
    const std::vector<Slice> slices = {{"positive", "pos", s.positive_frac},
                                       {"neutral", "neu", s.neutral_frac},
                                       {"negative", "neg", s.negative_frac}};
    std::string svg = "<svg class=\"pie\" viewBox=\"0 0 360 190\" width=\"360\" "
                      "height=\"190\" role=\"img\">\n";
    const double cx = 95, cy = 95, r = 80;
    double cursor = 0.0;
    for (const auto& sl : slices) {
        if (sl.frac <= 0.0) continue;
        if (sl.frac >= 1.0 - 1e-12) {
            svg += "<circle cx=\"" + fmt_fixed(cx, 1) + "\" cy=\"" +
                   fmt_fixed(cy, 1) + "\" r=\"" + fmt_fixed(r, 1) +
                   "\" class=\"" + std::string(sl.cls) + "\"/>\n";
            cursor = 1.0;
            break;
        }
        svg += "<path d=\"" + pie_slice_path(cx, cy, r, cursor, cursor + sl.frac) +
               "\" class=\"" + std::string(sl.cls) + "\"/>\n";
        cursor += sl.frac;
    }
    double ly = 40;
    for (const auto& sl : slices) {
        svg += "<rect x=\"200\" y=\"" + fmt_fixed(ly - 11, 1) +
               "\" width=\"12\" height=\"12\" class=\"" + std::string(sl.cls) +
               "\"/>\n";
        svg += "<text x=\"220\" y=\"" + fmt_fixed(ly, 1) + "\" class=\"legend\">" +
               std::string(sl.name) + " " + fmt_percent(sl.frac) + "</text>\n";
        ly += 22;
    }
    svg += "</svg>\n";
    return svg;
}

inline const char* css() {
    return R"(body{font-family:system-ui,sans-serif;margin:2rem auto;max-width:62rem;color:#1c2330;background:#fafbfc}
h1{font-size:1.5rem}h2{font-size:1.2rem;margin-top:2rem;border-bottom:1px solid #d8dee6;padding-bottom:.3rem}
h3{font-size:1.02rem;margin-bottom:.3rem}
table.summary{border-collapse:collapse;margin:.6rem 0}table.summary td,table.summary th{border:1px solid #d8dee6;padding:.3rem .7rem;text-align:left}
svg.chart .bar{fill:#4a7fb5}svg.chart .bar.flagged{fill:#c9463d}
svg.chart .axis{stroke:#5b6570;stroke-width:1}
svg.chart .threshold{stroke:#2c3e50;stroke-width:1.2;stroke-dasharray:5 4}
svg.chart text{font-size:11px;fill:#374151}svg.chart .xlabel{text-anchor:middle}svg.chart .value{text-anchor:middle;font-size:10px}
svg.chart .tlabel{font-size:10px;fill:#2c3e50}
svg.pie .pos{fill:#5b9e6f}svg.pie .neu{fill:#b9c0c9}svg.pie .neg{fill:#c9463d}svg.pie .legend{font-size:12px;fill:#374151}
.suggestion{background:#fff;border:1px solid #d8dee6;border-left:4px solid #c9463d;border-radius:4px;padding:.6rem .9rem;margin:.6rem 0}
.suggestion .why{color:#5b6570;font-size:.88rem}
details{margin:.4rem 0}summary{cursor:pointer;color:#34557d}
pre.transcript{background:#f2f4f7;border-radius:4px;padding:.5rem .8rem;white-space:pre-wrap;font-size:.86rem}
.flagnote{color:#c9463d;font-weight:600}.ok{color:#3c6e4b;font-weight:600}
.meta{color:#5b6570;font-size:.88rem})";
}

}  // namespace detail

/// One self-contained page: summary table, sentiment pie, per-metric bar
/// charts with thresholds, and per-question suggestions with collapsible
/// evidence transcripts. No external resources are referenced.
inline std::string emit_html(const ReportDocument& doc) {
    using detail::escape_html;
    using detail::fmt_fixed;
    const ChatbotProfile& p = doc.profile;
    std::string html;
    html += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
    html += "<title>Chatbot Profile</title>\n<style>" + std::string(detail::css()) +
            "</style>\n</head>\n<body>\n";
    html += "<h1>Chatbot Profile</h1>\n";
    html += "<p class=\"meta\">generated " + escape_html(doc.generated_at) + " · " +
            std::to_string(p.interview.n_sessions) + " sessions · " +
            std::to_string(p.per_question.size()) + " interview questions</p>\n";

    html += "<h2>Interview-level results</h2>\n<table class=\"summary\">\n";
    html += "<tr><th>Metric</th><th>Value</th></tr>\n";
    const auto opt_cell = [&](const std::optional<double>& v, int decimals) {
        return v ? fmt_fixed(*v, decimals) : std::string("&mdash;");
    };
    html += "<tr><td>Satisfaction rating (mean)</td><td>" +
            opt_cell(p.interview.mean_satisfaction, 2) + "</td></tr>\n";
    html += "<tr><td>Trust rating (mean)</td><td>" +
            opt_cell(p.interview.mean_trust, 2) + "</td></tr>\n";
    html += "<tr><td>Interview completion rate</td><td>" +
            fmt_fixed(p.interview.completion_rate, 2) + "</td></tr>\n";
    html += "</table>\n";

    html += "<h2>User sentiment</h2>\n";
    if (p.interview.sentiment.has_feedback()) {
        html += detail::sentiment_pie_svg(p.interview.sentiment);
        html += "<p class=\"meta\">" +
                std::to_string(p.interview.sentiment.n_texts) +
                " feedback responses</p>\n";
    } else {
        html += "<p class=\"meta\">No feedback responses collected.</p>\n";
    }

    html += "<h2>Question-level metrics</h2>\n";
    std::vector<int> qids;
    for (const auto& q : p.per_question) qids.push_back(q.question_id);
    for (Metric m : all_metrics()) {
        const Threshold& t = p.thresholds.at(m);
        std::vector<std::optional<double>> values;
        std::vector<bool> flagged;
        for (const auto& q : p.per_question) {
            values.push_back(q.n_segments > 0 ? q.mean_of(m) : std::nullopt);
            bool f = false;
            for (const auto& flag : p.flags)
                if (flag.question_id == q.question_id && flag.metric == m) f = true;
            flagged.push_back(f);
        }
        html += "<h3>" + escape_html(metric_display(m)) + "</h3>\n";
        html += detail::bar_chart_svg(qids, values, t.value, t.direction, flagged,
                                      detail::display_decimals(m));
    }

    html += "<h2>Design suggestions</h2>\n";
    if (!doc.include_suggestions) {
        html += "<p class=\"meta\">Run the report with suggestions enabled to "
                "see design suggestions.</p>\n";
    } else if (doc.suggestions.empty()) {
        html += "<p class=\"ok\">No design suggestions triggered.</p>\n";
    } else {
        // one block per flag; its guideline sentences share the evidence
        int current_q = -1;
        std::size_t i = 0;
        while (i < doc.suggestions.size()) {
            const auto& s = doc.suggestions[i];
            if (s.question_id != current_q) {
                current_q = s.question_id;
                html += "<h3>Q" + std::to_string(s.question_id) + ": " +
                        escape_html(s.question_text) + "</h3>\n";
            }
            html += "<div class=\"suggestion\">\n";
            html += "<p class=\"why\"><span class=\"flagnote\">" +
                    escape_html(metric_display(s.metric)) + " " +
                    escape_html(s.direction_word) + "</span> &middot; observed " +
                    fmt_fixed(s.observed, detail::display_decimals(s.metric)) +
                    " vs threshold " +
                    fmt_fixed(s.threshold, detail::display_decimals(s.metric)) +
                    "</p>\n";
            std::size_t j = i;
            while (j < doc.suggestions.size() &&
                   doc.suggestions[j].question_id == s.question_id &&
                   doc.suggestions[j].metric == s.metric) {
                html += "<p>" + escape_html(doc.suggestions[j].sentence) +
                        " <span class=\"meta\">[" +
                        escape_html(doc.suggestions[j].guideline_id) +
                        "]</span></p>\n";
                ++j;
            }
            for (const auto& c : s.evidence.clusters) {
                html += "<details>\n<summary>evidence &mdash; cluster coverage " +
                        detail::fmt_percent(c.coverage_frac) + " (session " +
                        escape_html(c.representative.session_id) + ")</summary>\n";
                html += "<pre class=\"transcript\">" + escape_html(c.transcript) +
                        "</pre>\n</details>\n";
            }
            if (!s.evidence.omitted_segment_refs.empty()) {
                html += "<p class=\"meta\">" +
                        std::to_string(s.evidence.omitted_segment_refs.size()) +
                        " further matching segment(s) in the JSON profile.</p>\n";
            }
            html += "</div>\n";
            i = j;
        }
    }

    if (!doc.warnings.empty()) {
        html += "<h2>Warnings</h2>\n<ul>\n";
        for (const auto& w : doc.warnings)
            html += "<li class=\"meta\">" + escape_html(w) + "</li>\n";
        html += "</ul>\n";
    }
    html += "</body>\n</html>\n";
    return html;
}

}  // namespace chatprofiler
