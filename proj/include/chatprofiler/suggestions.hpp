#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "chatprofiler/error.hpp"
#include "chatprofiler/metrics.hpp"
#include "chatprofiler/profile.hpp"

namespace chatprofiler {

// ---------------------------------------------------------------------------
// Guideline catalog
// ---------------------------------------------------------------------------

struct Guideline {
    std::string guideline_id;
    std::string text;                      // imperative design action
    std::set<std::string> metrics;         // metric keys this guideline remedies
};

struct GuidelineCatalog {
    std::vector<Guideline> entries;  // ordered by guideline_id

    std::vector<const Guideline*> for_metric(Metric m) const {
        std::vector<const Guideline*> out;
        const std::string key = metric_key(m);
        for (const auto& g : entries)
            if (g.metrics.count(key)) out.push_back(&g);
        return out;
    }

    void validate() const {
        if (entries.empty()) throw ConfigError("guideline catalog is empty");
        std::set<std::string> ids;
        for (const auto& g : entries) {
            if (!ids.insert(g.guideline_id).second)
                throw ConfigError("duplicate guideline id \"" + g.guideline_id + "\"");
            if (text::trim(g.text).empty())
                throw ConfigError("guideline " + g.guideline_id + " has empty text");
            for (const auto& key : g.metrics)
                if (!parse_metric(key))
                    throw ConfigError("guideline " + g.guideline_id +
                                      " names unknown metric \"" + key + "\"");
        }
        for (Metric m : all_metrics()) {
            if (for_metric(m).empty())
                throw ConfigError("no guideline covers metric " + metric_key(m));
        }
    }
};

inline GuidelineCatalog guideline_catalog_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ConfigError("guideline catalog must be a JSON array");
    GuidelineCatalog catalog;
    for (const auto& gj : j) {
        Guideline g;
        if (!gj.contains("id") || !gj["id"].is_string())
            throw ConfigError("guideline entry is missing id");
        if (!gj.contains("text") || !gj["text"].is_string())
            throw ConfigError("guideline entry is missing text");
        if (!gj.contains("metrics") || !gj["metrics"].is_array())
            throw ConfigError("guideline entry is missing metrics");
        g.guideline_id = gj["id"].get<std::string>();
        g.text = gj["text"].get<std::string>();
        for (const auto& m : gj["metrics"]) g.metrics.insert(m.get<std::string>());
        catalog.entries.push_back(std::move(g));
    }
    std::sort(catalog.entries.begin(), catalog.entries.end(),
              [](const Guideline& a, const Guideline& b) {
                  return a.guideline_id < b.guideline_id;
              });
    catalog.validate();
    return catalog;
}

// ---------------------------------------------------------------------------
// Surface realization
// ---------------------------------------------------------------------------

/// Renders the suggestion template "For question Q, do D because metric M
/// is Z" deterministically: the guideline verb is lowercased, the metric is
/// spelled in lowercase with spaces, terminal punctuation is one period.
inline std::string realize_sentence(const std::string& question,
                                    const std::string& guideline,
                                    const std::string& metric_name,
                                    const std::string& z) {
    std::string action = text::trim(guideline);
    while (!action.empty() && (action.back() == '.' || action.back() == '!'))
        action.pop_back();
    if (!action.empty() && action.front() >= 'A' && action.front() <= 'Z')
        action.front() = static_cast<char>(action.front() - 'A' + 'a');
    std::string metric = text::to_lower_ascii(metric_name);
    for (auto& c : metric)
        if (c == '_') c = ' ';
    return "For question '" + question + "', " + action + " because metric " +
           metric + " is " + z + ".";
}

// ---------------------------------------------------------------------------
// Evidence bundle (filled by the evidence extractor)
// ---------------------------------------------------------------------------

struct SegmentRef {
    std::string session_id;
    int question_id = 0;

    bool operator<(const SegmentRef& o) const {
        return std::tie(session_id, question_id) <
               std::tie(o.session_id, o.question_id);
    }
    bool operator==(const SegmentRef& o) const {
        return session_id == o.session_id && question_id == o.question_id;
    }
};

struct EvidenceCluster {
    double coverage_frac = 0.0;  // cluster size / filtered segment count
    SegmentRef representative;
    std::string transcript;  // rendered "role: text" lines
};

struct EvidenceBundle {
    std::vector<EvidenceCluster> clusters;  // coverage-ranked, at most K
    std::vector<SegmentRef> omitted_segment_refs;

    bool empty() const { return clusters.empty(); }
};

// ---------------------------------------------------------------------------
// Suggestion generation
// ---------------------------------------------------------------------------

struct Suggestion {
    int question_id = 0;
    std::string question_text;
    Metric metric = Metric::informativeness;
    std::string direction_word;  // "too low" | "too high"
    std::string guideline_id;
    std::string sentence;
    double observed = 0.0;
    double threshold = 0.0;
    EvidenceBundle evidence;
};

/// One suggestion per (flag, applicable guideline), ordered by question, then
/// metric, then guideline id. Evidence attachment happens separately.
inline std::vector<Suggestion> generate_suggestions(const ChatbotProfile& profile,
                                                    const GuidelineCatalog& catalog,
                                                    const InterviewConfig& cfg) {
    catalog.validate();
    std::vector<Flag> flags = profile.flags;
    std::stable_sort(flags.begin(), flags.end(), [](const Flag& a, const Flag& b) {
        if (a.question_id != b.question_id) return a.question_id < b.question_id;
        return static_cast<int>(a.metric) < static_cast<int>(b.metric);
    });
    std::vector<Suggestion> out;
    for (const Flag& flag : flags) {
        const auto guidelines = catalog.for_metric(flag.metric);
        if (guidelines.empty())
            throw ConfigError("no guideline covers flagged metric " +
                              metric_key(flag.metric));
        const std::string z =
            flag.direction == Direction::below ? "too low" : "too high";
        for (const Guideline* g : guidelines) {
            Suggestion s;
            s.question_id = flag.question_id;
            s.question_text = cfg.question_text(flag.question_id);
            s.metric = flag.metric;
            s.direction_word = z;
            s.guideline_id = g->guideline_id;
            s.sentence = realize_sentence(s.question_text, g->text,
                                          metric_display(flag.metric), z);
            s.observed = flag.observed;
            s.threshold = flag.threshold;
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace chatprofiler
