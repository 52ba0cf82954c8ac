#include "narrative/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "narrative/error.hpp"
#include "narrative/io.hpp"
#include "narrative/text.hpp"

namespace narrative::lexicon {

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool parse_double(const std::string& field, double& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && !field.empty();
}

bool parse_rank(const std::string& field, std::int64_t& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && !field.empty();
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

[[noreturn]] void fail_line(const std::filesystem::path& path, std::size_t line, const std::string& what) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": " << what;
    throw FormatError(msg.str());
}

struct ColumnLayout {
    std::size_t word = 0;
    std::optional<std::size_t> rank;
    std::size_t arousal = 0;
    std::size_t valence = 0;
    std::size_t dominance = 0;
    std::size_t arity = 0;
};

}  // namespace

std::string_view to_string(Dimension d) {
    switch (d) {
        case Dimension::Valence: return "valence";
        case Dimension::Arousal: return "arousal";
        case Dimension::Dominance: return "dominance";
    }
    return "arousal";
}

Dimension dimension_from_name(std::string_view name) {
    const std::string lower = ascii_lower(name);
    if (lower == "valence") return Dimension::Valence;
    if (lower == "arousal") return Dimension::Arousal;
    if (lower == "dominance") return Dimension::Dominance;
    throw InvalidArgument("unknown dimension: " + std::string(name));
}

ColumnMap vad_ranked_columns() {
    ColumnMap m;
    m.name_to_role = {{"Word", "word"},
                      {"Ranking", "rank"},
                      {"Arousal", "arousal"},
                      {"Valence", "valence"},
                      {"Dominance", "dominance"}};
    return m;
}

ColumnMap nrc_vad_columns() {
    ColumnMap m;
    m.name_to_role = {{"word", "word"},
                      {"valence", "valence"},
                      {"arousal", "arousal"},
                      {"dominance", "dominance"}};
    return m;
}

Lexicon Lexicon::from_entries(std::vector<LexiconEntry> entries) {
    if (entries.empty()) throw FormatError("no entries");

    std::stable_sort(entries.begin(), entries.end(),
                     [](const LexiconEntry& a, const LexiconEntry& b) { return a.rank < b.rank; });

    Lexicon lex;
    lex.index_.reserve(entries.size());
    std::unordered_set<std::int64_t> ranks;
    ranks.reserve(entries.size());

    for (std::size_t pos = 0; pos < entries.size(); ++pos) {
        LexiconEntry& e = entries[pos];
        if (!text::is_letters_only(e.word)) {
            throw FormatError("word is not letters-only: \"" + e.word + "\"");
        }
        if (text::lowercase(e.word) != e.word) {
            throw FormatError("word is not lowercase: \"" + e.word + "\"");
        }
        if (e.rank <= 0) throw FormatError("rank must be positive for \"" + e.word + "\"");
        if (!ranks.insert(e.rank).second) {
            throw FormatError("duplicate rank " + std::to_string(e.rank));
        }
        for (double s : {e.arousal, e.valence, e.dominance}) {
            if (!(s >= 0.0 && s <= 1.0)) {
                throw FormatError("score out of [0,1] for \"" + e.word + "\"");
            }
        }
        if (!lex.index_.emplace(e.word, pos).second) {
            throw FormatError("duplicate word \"" + e.word + "\"");
        }
    }
    lex.entries_ = std::move(entries);
    return lex;
}

std::optional<std::size_t> Lexicon::position(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double Lexicon::score(std::size_t pos, Dimension d) const {
    const LexiconEntry& e = entries_[pos];
    switch (d) {
        case Dimension::Valence: return e.valence;
        case Dimension::Arousal: return e.arousal;
        case Dimension::Dominance: return e.dominance;
    }
    return e.arousal;
}

Lexicon load_lexicon(const std::filesystem::path& path, const ColumnMap& columns) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon file: " + path.string());

    // Keep original 1-based line numbers for diagnostics.
    std::vector<std::pair<std::size_t, std::string>> lines;
    {
        std::string raw;
        std::size_t lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            if (trim(raw).empty()) continue;
            lines.emplace_back(lineno, raw);
        }
    }
    if (lines.empty()) throw FormatError(path.string() + ": no entries");

    const char delim = io::detect_delimiter(lines.front().second);

    ColumnLayout layout;
    std::size_t first_data = 0;

    if (columns.empty()) {
        // Default positional layout: Word, Ranking, Arousal, Valence, Dominance.
        // A first row whose word column literally says "word" (and whose score
        // column is non-numeric) is a header; a malformed data row is not.
        layout = ColumnLayout{0, 1, 2, 3, 4, 5};
        const auto head = io::split_record(lines.front().second, delim);
        if (head.size() == 5) {
            double probe = 0.0;
            if (ascii_lower(trim(head[0])) == "word" && !parse_double(trim(head[2]), probe)) {
                first_data = 1;
            }
        }
    } else {
        const auto head = io::split_record(lines.front().second, delim);
        std::map<std::string, std::size_t> header_index;
        for (std::size_t i = 0; i < head.size(); ++i) header_index[ascii_lower(trim(head[i]))] = i;

        bool have_word = false, have_a = false, have_v = false, have_d = false;
        for (const auto& [name, role] : columns.name_to_role) {
            auto it = header_index.find(ascii_lower(name));
            if (it == header_index.end()) {
                throw FormatError(path.string() + ":1: declared column \"" + name +
                                  "\" not found in header");
            }
            if (role == "word") { layout.word = it->second; have_word = true; }
            else if (role == "rank") { layout.rank = it->second; }
            else if (role == "arousal") { layout.arousal = it->second; have_a = true; }
            else if (role == "valence") { layout.valence = it->second; have_v = true; }
            else if (role == "dominance") { layout.dominance = it->second; have_d = true; }
            else throw InvalidArgument("unknown column role: " + role);
        }
        if (!have_word || !have_a || !have_v || !have_d) {
            throw InvalidArgument("column map must cover word, arousal, valence, dominance");
        }
        layout.arity = head.size();
        first_data = 1;
    }

    std::vector<LexiconEntry> entries;
    entries.reserve(lines.size());
    std::unordered_map<std::string, std::size_t> seen_words;   // word -> line
    std::unordered_map<std::int64_t, std::size_t> seen_ranks;  // rank -> line
    std::int64_t running_rank = 0;

    for (std::size_t r = first_data; r < lines.size(); ++r) {
        const auto& [lineno, raw] = lines[r];
        const auto fields = io::split_record(raw, delim);
        if (fields.size() != layout.arity) {
            fail_line(path, lineno,
                      "wrong number of fields (expected " + std::to_string(layout.arity) +
                          ", got " + std::to_string(fields.size()) + ")");
        }

        LexiconEntry e;
        e.word = text::lowercase(trim(fields[layout.word]));
        if (e.word.empty() || !text::is_letters_only(e.word)) {
            fail_line(path, lineno, "word must be non-empty letters: \"" + trim(fields[layout.word]) + "\"");
        }

        if (layout.rank.has_value()) {
            const std::string field = trim(fields[*layout.rank]);
            if (!parse_rank(field, e.rank) || e.rank <= 0) {
                fail_line(path, lineno, "rank is not a positive integer: \"" + field + "\"");
            }
        } else {
            e.rank = ++running_rank;
        }

        const auto read_score = [&](std::size_t col, const char* name) {
            const std::string field = trim(fields[col]);
            double v = 0.0;
            if (!parse_double(field, v)) {
                fail_line(path, lineno, std::string(name) + " is not numeric: \"" + field + "\"");
            }
            if (!(v >= 0.0 && v <= 1.0)) {
                fail_line(path, lineno, std::string(name) + " out of [0,1]: \"" + field + "\"");
            }
            return v;
        };
        e.arousal = read_score(layout.arousal, "arousal");
        e.valence = read_score(layout.valence, "valence");
        e.dominance = read_score(layout.dominance, "dominance");

        if (auto [it, inserted] = seen_words.emplace(e.word, lineno); !inserted) {
            fail_line(path, lineno,
                      "duplicate word \"" + e.word + "\" (first at line " +
                          std::to_string(it->second) + ")");
        }
        if (auto [it, inserted] = seen_ranks.emplace(e.rank, lineno); !inserted) {
            fail_line(path, lineno,
                      "duplicate rank " + std::to_string(e.rank) + " (first at line " +
                          std::to_string(it->second) + ")");
        }
        entries.push_back(std::move(e));
    }

    if (entries.empty()) throw FormatError(path.string() + ": no entries");
    return Lexicon::from_entries(std::move(entries));
}

void save_lexicon(const Lexicon& lex, const std::filesystem::path& path) {
    std::string out = "Word\tRanking\tArousal\tValence\tDominance\n";
    for (const LexiconEntry& e : lex.entries()) {
        out += e.word;
        out += '\t';
        out += std::to_string(e.rank);
        out += '\t';
        out += format_double(e.arousal);
        out += '\t';
        out += format_double(e.valence);
        out += '\t';
        out += format_double(e.dominance);
        out += '\n';
    }
    io::atomic_write(path, out);
}

ScoreVector score_vector(const Lexicon& lex, Dimension d) {
    if (lex.size() == 0) throw InvalidArgument("empty lexicon");
    ScoreVector sv;
    sv.dimension = d;
    sv.values.reserve(lex.size());
    for (std::size_t pos = 0; pos < lex.size(); ++pos) sv.values.push_back(lex.score(pos, d));
    return sv;
}

StopMask stop_mask(const Lexicon& lex, Dimension d, double band_delta,
                   const std::set<std::string>& explicit_words) {
    if (band_delta < 0.0) throw InvalidArgument("band_delta must be >= 0");

    StopMask mask;
    mask.band_delta = band_delta;
    mask.excluded.assign(lex.size(), 0);

    for (const std::string& raw : explicit_words) {
        const std::string word = text::lowercase(raw);
        mask.explicit_list.insert(word);
        if (auto pos = lex.position(word)) {
            mask.excluded[*pos] = 1;
        } else {
            text::debug_log("stop word not in lexicon: " + word);
        }
    }
    if (band_delta > 0.0) {
        for (std::size_t pos = 0; pos < lex.size(); ++pos) {
            if (std::abs(lex.score(pos, d) - 0.5) < band_delta) mask.excluded[pos] = 1;
        }
    }
    return mask;
}

std::set<std::string> load_word_set(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open word list: " + path.string());
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string word = trim(line);
        if (word.empty() || word.front() == '#') continue;
        words.insert(text::lowercase(word));
    }
    return words;
}

}  // namespace narrative::lexicon
