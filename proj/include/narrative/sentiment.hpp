#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "narrative/corpus.hpp"
#include "narrative/lexicon.hpp"

namespace narrative::sentiment {

/// One scored segment. A missing score means nothing in the accumulated
/// window survived masking; it is never silently 0 or 0.5.
struct ArcPoint {
    std::size_t segment = 0;
    std::optional<double> score;  // in [0,1] when present
    double coverage = 0.0;        // in-vocabulary fraction of this segment
};

struct SentimentArc {
    std::string doc;
    int context = 1;              // accumulation length used to produce it
    bool all_undefined = false;   // set by interpolate_gaps when no anchor exists
    std::vector<ArcPoint> points; // one per matrix row, in order

    std::size_t defined_count() const;
    // Scores only, with gaps dropped.
    std::vector<double> defined_values() const;
};

/// Frequency-weighted mean of lexicon scores over unmasked positions:
/// sum(score[i] * f[i]) / sum(f[i]). Returns nullopt when the masked vector
/// is empty. Vectors must be aligned to the same lexicon.
std::optional<double> emotion_score(const corpus::FreqVector& freq,
                                    const lexicon::ScoreVector& scores,
                                    const lexicon::StopMask& mask);

/// Scores every segment against the trailing accumulation of the most
/// recent `context` rows (fewer during warm-up). The accumulator is updated
/// incrementally: each step adds the current row and, once the window is
/// full, retires the oldest row after scoring. Integer counts are carried
/// exactly, so the running accumulation cannot drift from a fresh re-sum.
SentimentArc arc(const corpus::SegmentMatrix& matrix,
                 const lexicon::ScoreVector& scores,
                 const lexicon::StopMask& mask,
                 int context = 10);

/// Linear interpolation across undefined points; leading/trailing gaps take
/// the nearest defined value. An arc with no defined point is returned
/// unchanged with all_undefined set.
SentimentArc interpolate_gaps(const SentimentArc& input);

// Arc files. CSV rows: doc_id, segment_index, score, coverage (score empty
// on gaps). JSON carries window/context metadata alongside the points.
void write_arc_csv(const SentimentArc& arc, const std::filesystem::path& path);
void write_arc_json(const SentimentArc& arc, std::size_t window_size,
                    std::string_view dimension, const std::filesystem::path& path);
SentimentArc read_arc(const std::filesystem::path& path);  // .csv or .json

}  // namespace narrative::sentiment
