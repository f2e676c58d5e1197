#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "chatprofiler/evidence.hpp"
#include "chatprofiler/profile.hpp"
#include "chatprofiler/report.hpp"
#include "chatprofiler/suggestions.hpp"
#include "chatprofiler/transcript.hpp"

namespace chatprofiler {

/// Whole analysis pass: profile the corpus and, when asked, generate
/// suggestions with clustered conversation evidence.
inline ReportDocument run_pipeline(const std::vector<Session>& corpus,
                                   const InterviewConfig& cfg,
                                   const ResourceBundle& resources,
                                   const GuidelineCatalog& catalog,
                                   bool include_suggestions) {
    ReportDocument doc;
    doc.config = cfg;
    doc.profile = aggregate(corpus, cfg, resources);
    doc.warnings = resources.warnings;
    for (const auto& w : doc.profile.warnings) doc.warnings.push_back(w);
    doc.include_suggestions = include_suggestions;
    if (include_suggestions) {
        doc.suggestions = generate_suggestions(doc.profile, catalog, cfg);
        attach_evidence(doc.suggestions, doc.profile, resources, cfg);
    }
    return doc;
}

/// Reproducible-build convention: SOURCE_DATE_EPOCH pins the report
/// timestamp; without it the epoch origin is used so repeated runs stay
/// byte-identical.
inline std::string resolve_timestamp() {
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
        try {
            return format_timestamp_utc(std::stoll(env));
        } catch (const std::exception&) {
            // fall through to the fixed origin
        }
    }
    return format_timestamp_utc(0);
}

}  // namespace chatprofiler
