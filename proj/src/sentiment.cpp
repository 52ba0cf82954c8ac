#include "narrative/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "narrative/error.hpp"
#include "narrative/io.hpp"
#include "narrative/kernels.hpp"
#include "narrative/text.hpp"

namespace narrative::sentiment {

namespace {

// Masked scoring reduces to two dense dot products against the accumulated
// frequency vector: numerator over score-carrying positions, denominator
// over a 0/1 mask. Masked positions contribute to neither.
struct ScoringWorkspace {
    std::vector<double> masked_scores;
    std::vector<double> mask01;

    ScoringWorkspace(const lexicon::ScoreVector& scores, const lexicon::StopMask& mask) {
        if (scores.values.size() != mask.excluded.size()) {
            throw InvalidArgument("score vector and stop mask have different lengths");
        }
        const std::size_t n = scores.values.size();
        masked_scores.resize(n);
        mask01.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool excluded = mask.excluded[i] != 0;
            masked_scores[i] = excluded ? 0.0 : scores.values[i];
            mask01[i] = excluded ? 0.0 : 1.0;
        }
    }

    std::optional<double> score(std::span<const double> accumulated) const {
        const auto [weighted, total] = kernels::dot2(masked_scores, mask01, accumulated);
        if (total == 0.0) return std::nullopt;
        return std::clamp(weighted / total, 0.0, 1.0);
    }
};

void check_alignment(const corpus::FreqVector& freq, std::size_t vocab_size) {
    if (!freq.counts.empty() && freq.counts.rbegin()->first >= vocab_size) {
        throw InvalidArgument("frequency vector position " +
                              std::to_string(freq.counts.rbegin()->first) +
                              " exceeds lexicon size " + std::to_string(vocab_size));
    }
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

std::size_t SentimentArc::defined_count() const {
    std::size_t n = 0;
    for (const ArcPoint& p : points) {
        if (p.score.has_value()) ++n;
    }
    return n;
}

std::vector<double> SentimentArc::defined_values() const {
    std::vector<double> values;
    values.reserve(points.size());
    for (const ArcPoint& p : points) {
        if (p.score.has_value()) values.push_back(*p.score);
    }
    return values;
}

std::optional<double> emotion_score(const corpus::FreqVector& freq,
                                    const lexicon::ScoreVector& scores,
                                    const lexicon::StopMask& mask) {
    const ScoringWorkspace ws(scores, mask);
    check_alignment(freq, scores.values.size());

    std::vector<double> dense(scores.values.size(), 0.0);
    for (const auto& [pos, count] : freq.counts) dense[pos] = static_cast<double>(count);
    return ws.score(dense);
}

SentimentArc arc(const corpus::SegmentMatrix& matrix,
                 const lexicon::ScoreVector& scores,
                 const lexicon::StopMask& mask,
                 int context) {
    if (context < 1) throw InvalidArgument("context must be >= 1");
    const ScoringWorkspace ws(scores, mask);

    SentimentArc result;
    result.doc = matrix.doc;
    result.context = context;
    result.points.reserve(matrix.rows.size());

    // Integer counts held in doubles stay exact under add/subtract, so the
    // rolling window cannot drift from a fresh re-sum of the same rows.
    std::vector<double> accumulated(scores.values.size(), 0.0);
    const auto apply = [&](const corpus::FreqVector& row, double sign) {
        check_alignment(row, accumulated.size());
        for (const auto& [pos, count] : row.counts) {
            accumulated[pos] += sign * static_cast<double>(count);
        }
    };

    const std::size_t n = matrix.rows.size();
    const std::size_t window = static_cast<std::size_t>(context);
    for (std::size_t t = 0; t < n; ++t) {
        apply(matrix.rows[t], +1.0);
        ArcPoint point;
        point.segment = t;
        point.score = ws.score(accumulated);
        point.coverage = matrix.rows[t].coverage();
        result.points.push_back(point);
        // Retire the oldest row once the window is full.
        if (t + 1 >= window) apply(matrix.rows[t + 1 - window], -1.0);
    }
    return result;
}

SentimentArc interpolate_gaps(const SentimentArc& input) {
    SentimentArc out = input;

    std::vector<std::size_t> defined;
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        if (out.points[i].score.has_value()) defined.push_back(i);
    }
    if (defined.empty()) {
        if (!out.points.empty()) {
            out.all_undefined = true;
            text::debug_log("arc \"" + out.doc + "\" has no defined scores; nothing to interpolate");
        }
        return out;
    }

    // Leading and trailing gaps extend the nearest defined value.
    for (std::size_t i = 0; i < defined.front(); ++i) {
        out.points[i].score = out.points[defined.front()].score;
    }
    for (std::size_t i = defined.back() + 1; i < out.points.size(); ++i) {
        out.points[i].score = out.points[defined.back()].score;
    }
    // Interior gaps interpolate linearly between their neighbors.
    for (std::size_t d = 0; d + 1 < defined.size(); ++d) {
        const std::size_t p = defined[d];
        const std::size_t q = defined[d + 1];
        const double a = *out.points[p].score;
        const double b = *out.points[q].score;
        for (std::size_t i = p + 1; i < q; ++i) {
            const double t = static_cast<double>(i - p) / static_cast<double>(q - p);
            out.points[i].score = a + (b - a) * t;
        }
    }
    return out;
}

void write_arc_csv(const SentimentArc& arc, const std::filesystem::path& path) {
    std::string out = "doc_id,segment_index,score,coverage\n";
    for (const ArcPoint& p : arc.points) {
        out += io::escape_field(arc.doc, ',');
        out += ',';
        out += std::to_string(p.segment);
        out += ',';
        if (p.score.has_value()) out += format_double(*p.score);
        out += ',';
        out += format_double(p.coverage);
        out += '\n';
    }
    io::atomic_write(path, out);
}

void write_arc_json(const SentimentArc& arc, std::size_t window_size,
                    std::string_view dimension, const std::filesystem::path& path) {
    nlohmann::json j;
    j["schema"] = "narrative-arc";
    j["version"] = 1;
    j["doc"] = arc.doc;
    j["window_size"] = window_size;
    j["context"] = arc.context;
    j["dimension"] = std::string(dimension);
    j["all_undefined"] = arc.all_undefined;
    nlohmann::json points = nlohmann::json::array();
    for (const ArcPoint& p : arc.points) {
        nlohmann::json point;
        point["segment"] = p.segment;
        if (p.score.has_value()) point["score"] = *p.score;
        else point["score"] = nullptr;
        point["coverage"] = p.coverage;
        points.push_back(std::move(point));
    }
    j["points"] = std::move(points);
    io::atomic_write(path, j.dump(2) + "\n");
}

namespace {

SentimentArc read_arc_json(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": invalid arc JSON: " + e.what());
    }
    if (!j.is_object() || j.value("schema", "") != "narrative-arc") {
        throw FormatError(path.string() + ": not an arc file");
    }
    SentimentArc arc;
    arc.doc = j.value("doc", "");
    arc.context = j.value("context", 1);
    arc.all_undefined = j.value("all_undefined", false);
    for (const auto& point : j.at("points")) {
        ArcPoint p;
        p.segment = point.at("segment").get<std::size_t>();
        if (!point.at("score").is_null()) p.score = point.at("score").get<double>();
        p.coverage = point.value("coverage", 0.0);
        arc.points.push_back(p);
    }
    return arc;
}

SentimentArc read_arc_csv(const std::filesystem::path& path) {
    const io::Table table = io::read_delimited(path);
    SentimentArc arc;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (r == 0 && !row.empty() && row[0] == "doc_id") continue;
        if (row.size() < 3) {
            throw FormatError(path.string() + ": arc row " + std::to_string(r + 1) +
                              " needs doc_id, segment_index, score");
        }
        ArcPoint p;
        arc.doc = row[0];
        p.segment = static_cast<std::size_t>(std::stoull(row[1]));
        if (!row[2].empty()) p.score = std::stod(row[2]);
        if (row.size() > 3 && !row[3].empty()) p.coverage = std::stod(row[3]);
        arc.points.push_back(p);
    }
    return arc;
}

}  // namespace

SentimentArc read_arc(const std::filesystem::path& path) {
    if (path.extension() == ".json") return read_arc_json(path);
    return read_arc_csv(path);
}

}  // namespace narrative::sentiment
