// Command-line front door: validate transcripts, profile a chatbot from its
// chat logs, generate design suggestions, and render the static HTML report.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chatprofiler/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInternalError = 2;

#ifndef CHATPROFILER_DATA_DIR
#define CHATPROFILER_DATA_DIR "data"
#endif

struct Options {
    std::string transcripts;
    std::string interview;
    std::string out_json;
    std::string out_html;
    std::string resource_dir;
    std::string frequency, empathy, sentiment, offensive, pii, embeddings;
    std::string guidelines;
    std::optional<std::uint64_t> seed;
    bool verbose = false;
};

std::string default_resource_dir() {
    if (const char* env = std::getenv("CHATPROFILER_RESOURCES")) return env;
    return CHATPROFILER_DATA_DIR;
}

chatprofiler::ResourcePaths resolve_resources(const Options& opt) {
    const std::string dir =
        opt.resource_dir.empty() ? default_resource_dir() : opt.resource_dir;
    auto paths = chatprofiler::ResourcePaths::in_directory(dir);
    if (!opt.frequency.empty()) paths.frequency = opt.frequency;
    if (!opt.empathy.empty()) paths.empathy = opt.empathy;
    if (!opt.sentiment.empty()) paths.sentiment = opt.sentiment;
    if (!opt.offensive.empty()) paths.offensive = opt.offensive;
    if (!opt.pii.empty()) paths.pii = opt.pii;
    if (!opt.embeddings.empty()) paths.embeddings = opt.embeddings;
    return paths;
}

std::string resolve_guidelines(const Options& opt) {
    if (!opt.guidelines.empty()) return opt.guidelines;
    const std::string dir =
        opt.resource_dir.empty() ? default_resource_dir() : opt.resource_dir;
    return dir + "/guidelines.json";
}

nlohmann::json load_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in)
        throw chatprofiler::ParseError(std::string("cannot open ") + what + ": " +
                                       path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw chatprofiler::ParseError(std::string("malformed ") + what + " (" +
                                       path + "): " + e.what());
    }
}

std::vector<chatprofiler::Session> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw chatprofiler::ParseError("cannot open transcripts: " + path);
    return chatprofiler::parse_corpus(in);
}

void write_file(const std::string& path, const std::string& bytes) {
    if (path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw chatprofiler::Error("cannot write " + path);
    out << bytes;
}

int run_validate(const Options& opt) {
    std::ifstream in(opt.transcripts);
    if (!in) {
        std::cerr << "error: cannot open transcripts: " << opt.transcripts << "\n";
        return kExitInputError;
    }
    std::vector<std::string> errors;
    const auto corpus = chatprofiler::parse_corpus_collect(in, errors);
    if (!opt.interview.empty()) {
        try {
            const auto cfg = chatprofiler::interview_config_from_json(
                load_json_file(opt.interview, "interview config"));
            (void)cfg;
        } catch (const chatprofiler::Error& e) {
            errors.emplace_back(std::string("interview config: ") + e.what());
        }
    }
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
    if (!errors.empty()) return kExitInputError;
    std::cerr << "ok: " << corpus.size() << " session(s)\n";
    return kExitOk;
}

int run_analysis(const Options& opt, bool suggestions, bool html) {
    auto cfg = chatprofiler::interview_config_from_json(
        load_json_file(opt.interview, "interview config"));
    if (opt.seed) cfg.rng_seed = *opt.seed;
    const auto corpus = load_corpus(opt.transcripts);
    const auto resources = chatprofiler::load_resources(resolve_resources(opt));
    chatprofiler::GuidelineCatalog catalog;
    if (suggestions)
        catalog = chatprofiler::guideline_catalog_from_json(
            load_json_file(resolve_guidelines(opt), "guideline catalog"));

    auto doc = chatprofiler::run_pipeline(corpus, cfg, resources, catalog,
                                          suggestions);
    doc.generated_at = chatprofiler::resolve_timestamp();

    if (opt.verbose) {
        std::cerr << "profiled " << corpus.size() << " session(s), "
                  << doc.profile.flags.size() << " flag(s)";
        if (suggestions)
            std::cerr << ", " << doc.suggestions.size() << " suggestion(s)";
        std::cerr << "\n";
        for (const auto& w : doc.warnings) std::cerr << "warning: " << w << "\n";
    }

    write_file(opt.out_json.empty() ? "-" : opt.out_json,
               chatprofiler::emit_json(doc));
    if (html) write_file(opt.out_html, chatprofiler::emit_html(doc));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interview chatbot profiler: metrics, design suggestions and "
                 "reports from chat transcripts"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* cmd, bool needs_interview) {
        cmd->add_option("--transcripts", opt.transcripts,
                        "chat transcripts (JSONL, one session per line)")
            ->required();
        auto* iv = cmd->add_option("--interview", opt.interview,
                                   "interview config (JSON)");
        if (needs_interview) iv->required();
        cmd->add_option("--resources", opt.resource_dir,
                        "resource directory (default: $CHATPROFILER_RESOURCES "
                        "or the bundled data)");
        cmd->add_option("--frequency", opt.frequency, "word frequency table (TSV)");
        cmd->add_option("--empathy", opt.empathy, "empathy lexicon");
        cmd->add_option("--sentiment", opt.sentiment, "sentiment lexicon");
        cmd->add_option("--offensive", opt.offensive, "offensive-terms lexicon");
        cmd->add_option("--pii", opt.pii, "PII detector definitions (JSON)");
        cmd->add_option("--embeddings", opt.embeddings, "word embedding table");
        cmd->add_option("--guidelines", opt.guidelines,
                        "design guideline catalog (JSON)");
        cmd->add_option("--seed", opt.seed, "random seed override");
        cmd->add_flag("-v,--verbose", opt.verbose, "diagnostics to stderr");
    };

    auto* validate =
        app.add_subcommand("validate", "check transcripts and config for schema errors");
    add_common(validate, false);

    auto* profile =
        app.add_subcommand("profile", "compute the chatbot profile as JSON");
    add_common(profile, true);
    profile->add_option("--out-json", opt.out_json, "output path (default: stdout)");

    auto* suggest = app.add_subcommand(
        "suggest", "profile plus design suggestions and conversation evidence");
    add_common(suggest, true);
    suggest->add_option("--out-json", opt.out_json, "output path (default: stdout)");

    auto* report =
        app.add_subcommand("report", "full JSON profile plus a static HTML report");
    add_common(report, true);
    report->add_option("--out-json", opt.out_json, "JSON output path")->required();
    report->add_option("--out-html", opt.out_html, "HTML output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (app.got_subcommand(validate)) return run_validate(opt);
        if (app.got_subcommand(profile)) return run_analysis(opt, false, false);
        if (app.got_subcommand(suggest)) return run_analysis(opt, true, false);
        return run_analysis(opt, true, true);
    } catch (const chatprofiler::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const chatprofiler::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
}
