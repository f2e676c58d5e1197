#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "chatprofiler/kmeans.hpp"
#include "chatprofiler/metrics.hpp"
#include "chatprofiler/profile.hpp"
#include "chatprofiler/suggestions.hpp"
#include "chatprofiler/transcript.hpp"

namespace chatprofiler {

// ---------------------------------------------------------------------------
// Segment embeddings
// ---------------------------------------------------------------------------

struct SegmentEmbedding {
    SegmentRef ref;
    std::vector<double> vector;
};

/// Mean word vector over all of the segment's tokens, both roles. Tokens
/// missing from the table are skipped; a fully out-of-vocabulary segment
/// embeds as the zero vector.
inline SegmentEmbedding embed_segment(const Segment& seg,
                                      const EmbeddingTable& table,
                                      const std::string& session_id = {}) {
    SegmentEmbedding out;
    out.ref = {session_id, seg.question_id};
    out.vector.assign(table.dimension, 0.0);
    std::size_t found = 0;
    for (const auto& m : seg.messages) {
        for (const auto& token : text::tokenize(m.text)) {
            const auto* vec = table.find(token);
            if (vec == nullptr) continue;
            ++found;
            for (std::size_t d = 0; d < table.dimension; ++d)
                out.vector[d] += (*vec)[d];
        }
    }
    if (found > 0) {
        for (auto& x : out.vector) x /= static_cast<double>(found);
    }
    return out;
}

/// Clusters segment embeddings by cosine similarity (via L2 normalization)
/// with the elbow rule choosing k.
inline ClusterResult cluster_segments(const std::vector<SegmentEmbedding>& embeddings,
                                      std::uint64_t seed) {
    std::vector<std::vector<double>> points;
    points.reserve(embeddings.size());
    for (const auto& e : embeddings) points.push_back(e.vector);
    return cluster_embeddings(std::move(points), seed);
}

// ---------------------------------------------------------------------------
// Evidence selection
// ---------------------------------------------------------------------------

inline std::string render_transcript(const Segment& seg) {
    std::string out;
    for (const auto& m : seg.messages) {
        out += role_name(m.role);
        out += ": ";
        out += m.text;
        out += "\n";
    }
    return out;
}

/// Ranks clusters by size (ties broken by the lowest member session_id),
/// keeps the top min(K, k), and picks one representative per cluster with
/// the seeded generator.
inline EvidenceBundle select_evidence(const std::vector<SegmentRecord>& segments,
                                      const std::vector<std::size_t>& assignments,
                                      std::size_t k, int top_k, std::uint64_t seed) {
    EvidenceBundle bundle;
    const std::size_t n = segments.size();
    if (n == 0 || top_k < 1) return bundle;

    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < n; ++i) members[assignments[i]].push_back(i);

    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < k; ++c)
        if (!members[c].empty()) order.push_back(c);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (members[a].size() != members[b].size())
            return members[a].size() > members[b].size();
        return segments[members[a].front()].session_id <
               segments[members[b].front()].session_id;
    });

    const std::size_t shown =
        std::min<std::size_t>(static_cast<std::size_t>(top_k), order.size());
    std::mt19937_64 gen(rng::mix_seed(seed, 0x9E3779B9ULL));
    std::vector<SegmentRef> chosen;
    for (std::size_t rank = 0; rank < shown; ++rank) {
        const auto& cluster = members[order[rank]];
        const std::size_t pick = cluster[rng::uniform_index(gen, cluster.size())];
        EvidenceCluster ec;
        ec.coverage_frac =
            static_cast<double>(cluster.size()) / static_cast<double>(n);
        ec.representative = {segments[pick].session_id,
                             segments[pick].segment.question_id};
        ec.transcript = render_transcript(segments[pick].segment);
        chosen.push_back(ec.representative);
        bundle.clusters.push_back(std::move(ec));
    }
    for (const auto& rec : segments) {
        SegmentRef ref{rec.session_id, rec.segment.question_id};
        if (std::find(chosen.begin(), chosen.end(), ref) == chosen.end())
            bundle.omitted_segment_refs.push_back(ref);
    }
    std::sort(bundle.omitted_segment_refs.begin(),
              bundle.omitted_segment_refs.end());
    return bundle;
}

// ---------------------------------------------------------------------------
// Flag-driven extraction
// ---------------------------------------------------------------------------

namespace detail {

/// Per-segment value used for breach filtering. Completion at segment level
/// is whether the conversation advanced past the question.
inline double segment_metric_value(const SegmentRecord& rec, Metric m) {
    if (m == Metric::completion_rate) return rec.segment.advanced ? 1.0 : 0.0;
    return metric_value(rec.metrics, m);
}

}  // namespace detail

/// Selects the flagged question's segments that individually breach the
/// flagged threshold, clusters them, and picks the top-K representatives.
/// No breaching segment means an empty bundle; the suggestion still stands.
inline EvidenceBundle extract_for_flag(const Flag& flag,
                                       const ChatbotProfile& profile,
                                       const ResourceBundle& resources,
                                       const InterviewConfig& cfg) {
    const auto it = profile.segments_by_question.find(flag.question_id);
    if (it == profile.segments_by_question.end()) return {};

    std::vector<SegmentRecord> breaching;
    for (const auto& rec : it->second) {
        const double value = detail::segment_metric_value(rec, flag.metric);
        const bool breach = flag.direction == Direction::below
                                ? value < flag.threshold
                                : value > flag.threshold;
        if (breach) breaching.push_back(rec);
    }
    if (breaching.empty()) return {};
    std::sort(breaching.begin(), breaching.end(),
              [](const SegmentRecord& a, const SegmentRecord& b) {
                  return std::tie(a.session_id, a.segment.question_id) <
                         std::tie(b.session_id, b.segment.question_id);
              });

    std::vector<SegmentEmbedding> embeddings;
    embeddings.reserve(breaching.size());
    for (const auto& rec : breaching)
        embeddings.push_back(
            embed_segment(rec.segment, resources.embeddings, rec.session_id));

    const std::uint64_t seed =
        rng::mix_seed(cfg.rng_seed,
                      rng::mix_seed(static_cast<std::uint64_t>(flag.question_id),
                                    static_cast<std::uint64_t>(flag.metric)));
    const auto clusters = cluster_segments(embeddings, seed);
    return select_evidence(breaching, clusters.assignments, clusters.k,
                           cfg.max_evidence_per_suggestion, seed);
}

/// Attaches evidence to every suggestion; suggestions born from the same
/// flag share one bundle.
inline void attach_evidence(std::vector<Suggestion>& suggestions,
                            const ChatbotProfile& profile,
                            const ResourceBundle& resources,
                            const InterviewConfig& cfg) {
    std::map<std::pair<int, Metric>, EvidenceBundle> cache;
    for (auto& s : suggestions) {
        const auto key = std::make_pair(s.question_id, s.metric);
        auto it = cache.find(key);
        if (it == cache.end()) {
            Flag flag{s.question_id, s.metric, s.observed, s.threshold,
                      s.direction_word == "too low" ? Direction::below
                                                    : Direction::above};
            it = cache.emplace(key, extract_for_flag(flag, profile, resources, cfg))
                     .first;
        }
        s.evidence = it->second;
    }
}

}  // namespace chatprofiler
