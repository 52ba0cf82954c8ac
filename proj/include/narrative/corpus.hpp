#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "narrative/lexicon.hpp"

namespace narrative::corpus {

struct WordList {
    std::string source_id;
    std::vector<std::string> words;  // lowercase, letters only, document order
};

/// Splits text into maximal runs of letters, lowercased. Digits, punctuation
/// and whitespace are discarded; invalid UTF-8 bytes count as non-letters.
WordList tokenize(std::string_view text, std::string source_id = {});

struct Segment {
    std::string doc;
    std::size_t index = 0;   // 0-based segment number
    std::vector<std::string> words;  // exactly window_size tokens
};

struct Segmentation {
    std::vector<Segment> segments;
    std::size_t discarded_words = 0;  // trailing remainder shorter than one window
};

/// Consecutive non-overlapping windows of exactly window_size words; the
/// trailing remainder is dropped and its length reported.
Segmentation segment(const WordList& words, std::size_t window_size);

/// Sparse in-vocabulary counts for one segment.
struct FreqVector {
    std::string doc;
    std::size_t index = 0;
    std::map<std::size_t, std::int64_t> counts;  // vocabulary position -> count >= 1
    std::int64_t total_in_vocab = 0;
    std::int64_t total_words = 0;

    // Fraction of segment words found in the lexicon; 0 for empty segments.
    double coverage() const {
        return total_words > 0 ? static_cast<double>(total_in_vocab) / static_cast<double>(total_words) : 0.0;
    }
};

/// Counts segment words against the lexicon. Out-of-vocabulary words are
/// not counted but show up in the coverage ratio.
FreqVector frequency_vector(const Segment& seg, const lexicon::Lexicon& lex);

struct SegmentMatrix {
    std::string doc;
    std::size_t window_size = 0;
    std::vector<FreqVector> rows;  // in segment order
};

/// Stacks per-segment frequency vectors. All rows must come from the same
/// document and be in segment order; anything else throws InvalidArgument.
SegmentMatrix stack(std::vector<FreqVector> rows, std::size_t window_size);

struct ManifestEntry {
    std::string id;
    std::string title;
    std::filesystem::path path;  // resolved relative to the manifest file
};

/// Corpus manifest: delimiter-separated rows of id, title, path. A header
/// row ("id", "title", "path") is recognized and skipped.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

}  // namespace narrative::corpus
