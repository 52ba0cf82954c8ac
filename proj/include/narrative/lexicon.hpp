#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace narrative::lexicon {

/// One scored word. Scores live in [0,1]; ranks are unique positive integers.
struct LexiconEntry {
    std::string word;   // lowercase, letters only
    std::int64_t rank = 0;
    double arousal = 0.0;
    double valence = 0.0;
    double dominance = 0.0;
};

enum class Dimension { Valence, Arousal, Dominance };

std::string_view to_string(Dimension d);
Dimension dimension_from_name(std::string_view name);  // throws InvalidArgument

/// Immutable word table ordered by ascending rank, with a word -> position
/// index. Words are unique after lowercasing. Safe to share across threads.
class Lexicon {
public:
    // Validates entries, sorts by rank, builds the index.
    static Lexicon from_entries(std::vector<LexiconEntry> entries);

    std::size_t size() const { return entries_.size(); }
    const LexiconEntry& entry(std::size_t pos) const { return entries_[pos]; }
    const std::vector<LexiconEntry>& entries() const { return entries_; }

    // Vocabulary position of an (already lowercase) word.
    std::optional<std::size_t> position(std::string_view word) const;
    bool contains(std::string_view word) const { return position(word).has_value(); }

    double score(std::size_t pos, Dimension d) const;

private:
    Lexicon() = default;
    std::vector<LexiconEntry> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Per-dimension scores aligned to vocabulary positions.
struct ScoreVector {
    Dimension dimension = Dimension::Arousal;
    std::vector<double> values;
};

/// Marks vocabulary positions excluded from scoring. A position is excluded
/// iff its word is in the explicit list or its score on the chosen dimension
/// sits within band_delta of the 0.5 midpoint.
struct StopMask {
    std::vector<std::uint8_t> excluded;  // 1 = excluded, aligned to positions
    double band_delta = 0.0;
    std::set<std::string> explicit_list;

    bool is_excluded(std::size_t pos) const { return excluded[pos] != 0; }
};

/// Maps file column names (matched case-insensitively against the header
/// row) to roles: "word", "rank", "arousal", "valence", "dominance".
/// An empty map selects the default positional layout
/// Word, Ranking, Arousal, Valence, Dominance, with an optional header.
/// When no column carries the "rank" role, ranks are assigned from file
/// order (1-based).
struct ColumnMap {
    std::map<std::string, std::string> name_to_role;
    bool empty() const { return name_to_role.empty(); }
};

// Named presets for the two layouts seen in the wild.
ColumnMap vad_ranked_columns();  // Word, Ranking, Arousal, Valence, Dominance
ColumnMap nrc_vad_columns();     // Word, Valence, Arousal, Dominance (no rank)

/// Loads a delimiter-separated lexicon file (comma or tab, auto-detected).
/// Errors carry 1-based line numbers. Throws IoError / FormatError.
Lexicon load_lexicon(const std::filesystem::path& path, const ColumnMap& columns = {});

/// Writes the canonical form: tab-separated with the default header.
/// load_lexicon(save_lexicon(lex)) reproduces lex exactly.
void save_lexicon(const Lexicon& lex, const std::filesystem::path& path);

/// Score values of one dimension in vocabulary order.
ScoreVector score_vector(const Lexicon& lex, Dimension d = Dimension::Arousal);

/// Builds the exclusion mask. Explicit words absent from the lexicon are
/// ignored (reported via the debug log hook).
StopMask stop_mask(const Lexicon& lex, Dimension d, double band_delta,
                   const std::set<std::string>& explicit_words);

/// One word per line, lowercased; '#' lines are comments.
std::set<std::string> load_word_set(const std::filesystem::path& path);

}  // namespace narrative::lexicon
