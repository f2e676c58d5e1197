#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "chatprofiler/error.hpp"
#include "chatprofiler/text.hpp"

namespace chatprofiler {

// ---------------------------------------------------------------------------
// Word frequency and surprisal
// ---------------------------------------------------------------------------

/// Reference frequency model behind the informativeness metric. Surprisal of
/// a word is -log2(count/total); min/max are precomputed over the vocabulary.
class FrequencyTable {
public:
    FrequencyTable(std::unordered_map<std::string, std::uint64_t> counts,
                   std::vector<std::string>* warnings = nullptr)
        : counts_(std::move(counts)) {
        if (counts_.empty()) throw ParseError("frequency table is empty");
        for (const auto& [token, count] : counts_) total_ += count;
        min_surprisal_ = std::numeric_limits<double>::infinity();
        max_surprisal_ = -std::numeric_limits<double>::infinity();
        for (const auto& [token, count] : counts_) {
            const double s = surprisal_of_count(count);
            min_surprisal_ = std::min(min_surprisal_, s);
            max_surprisal_ = std::max(max_surprisal_, s);
        }
        if (max_surprisal_ <= min_surprisal_ && warnings != nullptr)
            warnings->push_back(
                "frequency table is degenerate (single surprisal value); "
                "normalized surprisal of in-vocabulary words is 0");
    }

    std::uint64_t total() const { return total_; }
    std::size_t vocabulary_size() const { return counts_.size(); }
    double min_surprisal() const { return min_surprisal_; }
    double max_surprisal() const { return max_surprisal_; }

    bool contains(const std::string& token) const {
        return counts_.count(token) > 0;
    }

    std::optional<double> surprisal(const std::string& token) const {
        const auto it = counts_.find(token);
        if (it == counts_.end()) return std::nullopt;
        return surprisal_of_count(it->second);
    }

    /// Min-max normalized surprisal in [0,1]. Out-of-vocabulary tokens are
    /// maximally surprising (1). A degenerate single-surprisal vocabulary
    /// normalizes in-vocabulary words to 0.
    double normalized_surprisal(const std::string& token) const {
        const auto s = surprisal(token);
        if (!s) return 1.0;
        const double span = max_surprisal_ - min_surprisal_;
        if (span <= 0.0) return 0.0;
        return (*s - min_surprisal_) / span;
    }

private:
    double surprisal_of_count(std::uint64_t count) const {
        return -std::log2(static_cast<double>(count) / static_cast<double>(total_));
    }

    std::unordered_map<std::string, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    double min_surprisal_ = 0.0;
    double max_surprisal_ = 0.0;
};

inline FrequencyTable load_frequency_table(std::istream& in,
                                           std::vector<std::string>* warnings = nullptr) {
    std::unordered_map<std::string, std::uint64_t> counts;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("expected token<TAB>count", lineno);
        const std::string token = text::trim(line.substr(0, tab));
        const std::string count_str = text::trim(line.substr(tab + 1));
        if (token.empty()) throw ParseError("empty token", lineno);
        long long value = 0;
        try {
            std::size_t used = 0;
            value = std::stoll(count_str, &used);
            if (used != count_str.size()) throw std::invalid_argument(count_str);
        } catch (const std::exception&) {
            throw ParseError("count \"" + count_str + "\" is not an integer", lineno);
        }
        if (value <= 0)
            throw ParseError("count must be positive, got " + count_str, lineno);
        counts[text::to_lower_ascii(token)] += static_cast<std::uint64_t>(value);
    }
    if (counts.empty()) throw ParseError("frequency table is empty");
    return FrequencyTable(std::move(counts), warnings);
}

inline FrequencyTable load_frequency_table(const std::string& path,
                                           std::vector<std::string>* warnings = nullptr) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open frequency table: " + path);
    return load_frequency_table(in, warnings);
}

// ---------------------------------------------------------------------------
// Word lexicons
// ---------------------------------------------------------------------------

struct EmpathyLexicon {
    std::set<std::string> words;
};

struct SentimentLexicon {
    std::map<std::string, double> polarity;       // token -> valence
    std::map<std::string, double> booster_words;  // token -> increment
    std::set<std::string> negation_words;
};

struct OffensiveLexicon {
    // single tokens and multi-token phrases, stored in tokenized form
    std::set<std::vector<std::string>> terms;

    bool empty() const { return terms.empty(); }
};

inline EmpathyLexicon load_empathy_lexicon(std::istream& in,
                                           std::vector<std::string>* warnings = nullptr) {
    EmpathyLexicon lex;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string entry = text::trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        const auto tokens = text::tokenize(entry);
        if (tokens.size() != 1)
            throw ParseError("empathy entries must be single words: \"" + entry + "\"",
                             lineno);
        if (!lex.words.insert(tokens[0]).second && warnings != nullptr)
            warnings->push_back("duplicate empathy entry \"" + tokens[0] +
                                "\" on line " + std::to_string(lineno));
    }
    if (lex.words.empty()) throw ParseError("empathy lexicon is empty");
    return lex;
}

inline SentimentLexicon load_sentiment_lexicon(std::istream& in,
                                               std::vector<std::string>* warnings = nullptr) {
    SentimentLexicon lex;
    enum class Section { polarity, boosters, negations };
    Section section = Section::polarity;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string entry = text::trim(line);
        if (entry.empty()) continue;
        if (entry == "#boosters") { section = Section::boosters; continue; }
        if (entry == "#negations") { section = Section::negations; continue; }
        if (entry[0] == '#') continue;
        if (section == Section::negations) {
            const std::string word = text::to_lower_ascii(entry);
            if (lex.booster_words.count(word))
                throw ParseError("\"" + word + "\" is both booster and negation",
                                 lineno);
            if (!lex.negation_words.insert(word).second && warnings != nullptr)
                warnings->push_back("duplicate negation \"" + word + "\" on line " +
                                    std::to_string(lineno));
            continue;
        }
        const auto tab = entry.find('\t');
        if (tab == std::string::npos)
            throw ParseError("expected token<TAB>valence", lineno);
        const std::string token = text::to_lower_ascii(text::trim(entry.substr(0, tab)));
        double value = 0.0;
        try {
            value = std::stod(text::trim(entry.substr(tab + 1)));
        } catch (const std::exception&) {
            throw ParseError("valence is not a number", lineno);
        }
        if (!std::isfinite(value)) throw ParseError("valence must be finite", lineno);
        auto& target = section == Section::polarity ? lex.polarity : lex.booster_words;
        if (section == Section::boosters && lex.negation_words.count(token))
            throw ParseError("\"" + token + "\" is both booster and negation", lineno);
        if (!target.emplace(token, value).second && warnings != nullptr)
            warnings->push_back("duplicate sentiment entry \"" + token +
                                "\" on line " + std::to_string(lineno));
    }
    if (lex.polarity.empty()) throw ParseError("sentiment lexicon has no polar words");
    return lex;
}

inline OffensiveLexicon load_offensive_lexicon(std::istream& in,
                                               std::vector<std::string>* warnings = nullptr) {
    OffensiveLexicon lex;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string entry = text::trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        const auto tokens = text::tokenize(entry);
        if (tokens.empty())
            throw ParseError("entry \"" + entry + "\" has no word characters", lineno);
        if (!lex.terms.insert(tokens).second && warnings != nullptr)
            warnings->push_back("duplicate offensive entry \"" + entry +
                                "\" on line " + std::to_string(lineno));
    }
    if (lex.terms.empty()) throw ParseError("offensive lexicon is empty");
    return lex;
}

// ---------------------------------------------------------------------------
// PII detectors
// ---------------------------------------------------------------------------

/// Luhn checksum over the digits of `s`; non-digits are ignored.
inline bool luhn_valid(const std::string& s) {
    std::vector<int> digits;
    for (char c : s)
        if (c >= '0' && c <= '9') digits.push_back(c - '0');
    if (digits.size() < 2) return false;
    // every second digit from the right is doubled
    const int parity = static_cast<int>(digits.size()) % 2;
    int sum = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        int d = digits[i];
        if (static_cast<int>(i) % 2 == parity) {
            d *= 2;
            if (d > 9) d -= 9;
        }
        sum += d;
    }
    return sum % 10 == 0;
}

struct PiiDetector {
    std::string name;       // unique infotype name
    std::string pattern;    // source regex
    std::regex regex;       // compiled form
    bool luhn_checksum = false;
};

struct PiiDetectorSet {
    std::vector<PiiDetector> detectors;

    /// Number of detected entities in `s`. Every matched entity counts one,
    /// regardless of how many tokens it spans.
    std::size_t count_matches(const std::string& s) const {
        std::size_t count = 0;
        for (const auto& det : detectors) {
            for (auto it = std::sregex_iterator(s.begin(), s.end(), det.regex);
                 it != std::sregex_iterator(); ++it) {
                if (det.luhn_checksum && !luhn_valid(it->str())) continue;
                ++count;
            }
        }
        return count;
    }
};

inline PiiDetectorSet load_pii_detectors(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed PII detector file: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("PII detector file must be a JSON array");
    PiiDetectorSet set;
    std::set<std::string> names;
    for (const auto& dj : j) {
        PiiDetector det;
        if (!dj.contains("name") || !dj["name"].is_string())
            throw ParseError("PII detector is missing a name");
        if (!dj.contains("regex") || !dj["regex"].is_string())
            throw ParseError("PII detector is missing a regex");
        det.name = dj["name"].get<std::string>();
        det.pattern = dj["regex"].get<std::string>();
        if (!names.insert(det.name).second)
            throw ParseError("duplicate PII detector name \"" + det.name + "\"");
        try {
            det.regex = std::regex(det.pattern, std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
            throw ParseError("PII pattern \"" + det.name +
                             "\" does not compile: " + e.what());
        }
        if (dj.contains("checksum") && !dj["checksum"].is_null()) {
            const std::string c = dj["checksum"].get<std::string>();
            if (c != "luhn")
                throw ParseError("unknown checksum rule \"" + c + "\"");
            det.luhn_checksum = true;
        }
        set.detectors.push_back(std::move(det));
    }
    if (set.detectors.empty()) throw ParseError("PII detector set is empty");
    return set;
}

// ---------------------------------------------------------------------------
// Word embeddings
// ---------------------------------------------------------------------------

struct EmbeddingTable {
    std::size_t dimension = 0;
    std::unordered_map<std::string, std::vector<double>> vectors;

    const std::vector<double>* find(const std::string& token) const {
        const auto it = vectors.find(token);
        return it == vectors.end() ? nullptr : &it->second;
    }
};

inline EmbeddingTable load_embeddings(std::istream& in) {
    EmbeddingTable table;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string token;
        ss >> token;
        std::vector<double> vec;
        std::string comp;
        while (ss >> comp) {
            try {
                std::size_t used = 0;
                const double v = std::stod(comp, &used);
                if (used != comp.size()) throw std::invalid_argument(comp);
                if (!std::isfinite(v))
                    throw ParseError("non-finite component", lineno);
                vec.push_back(v);
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception&) {
                throw ParseError("component \"" + comp + "\" is not a number", lineno);
            }
        }
        if (vec.empty()) throw ParseError("embedding row has no components", lineno);
        if (table.dimension == 0) table.dimension = vec.size();
        if (vec.size() != table.dimension)
            throw ParseError("expected " + std::to_string(table.dimension) +
                                 " components, got " + std::to_string(vec.size()),
                             lineno);
        table.vectors[text::to_lower_ascii(token)] = std::move(vec);
    }
    if (table.vectors.empty()) throw ParseError("embedding table is empty");
    return table;
}

inline EmbeddingTable load_embeddings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open embedding table: " + path);
    return load_embeddings(in);
}

// ---------------------------------------------------------------------------
// Bundle
// ---------------------------------------------------------------------------

/// Every static resource the pipeline needs, loaded once and shared.
struct ResourceBundle {
    FrequencyTable frequency;
    EmpathyLexicon empathy;
    SentimentLexicon sentiment;
    OffensiveLexicon offensive;
    PiiDetectorSet pii;
    EmbeddingTable embeddings;
    std::vector<std::string> warnings;
};

struct ResourcePaths {
    std::string frequency;
    std::string empathy;
    std::string sentiment;
    std::string offensive;
    std::string pii;
    std::string embeddings;

    static ResourcePaths in_directory(const std::string& dir) {
        ResourcePaths p;
        p.frequency = dir + "/frequency.tsv";
        p.empathy = dir + "/empathy.txt";
        p.sentiment = dir + "/sentiment.tsv";
        p.offensive = dir + "/offensive.txt";
        p.pii = dir + "/pii.json";
        p.embeddings = dir + "/embeddings.txt";
        return p;
    }
};

namespace detail {

inline std::ifstream open_or_throw(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw ParseError(std::string("cannot open ") + what + ": " + path);
    return in;
}

}  // namespace detail

inline ResourceBundle load_resources(const ResourcePaths& paths) {
    std::vector<std::string> warnings;
    auto freq_in = detail::open_or_throw(paths.frequency, "frequency table");
    auto empathy_in = detail::open_or_throw(paths.empathy, "empathy lexicon");
    auto sentiment_in = detail::open_or_throw(paths.sentiment, "sentiment lexicon");
    auto offensive_in = detail::open_or_throw(paths.offensive, "offensive lexicon");
    auto pii_in = detail::open_or_throw(paths.pii, "PII detector file");
    auto emb_in = detail::open_or_throw(paths.embeddings, "embedding table");
    ResourceBundle bundle{
        load_frequency_table(freq_in, &warnings),
        load_empathy_lexicon(empathy_in, &warnings),
        load_sentiment_lexicon(sentiment_in, &warnings),
        load_offensive_lexicon(offensive_in, &warnings),
        load_pii_detectors(pii_in),
        load_embeddings(emb_in),
        {}};
    bundle.warnings = std::move(warnings);
    return bundle;
}

}  // namespace chatprofiler
