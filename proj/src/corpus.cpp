#include "narrative/corpus.hpp"

#include <utility>

#include "narrative/error.hpp"
#include "narrative/io.hpp"
#include "narrative/text.hpp"

namespace narrative::corpus {

WordList tokenize(std::string_view raw, std::string source_id) {
    WordList list;
    list.source_id = std::move(source_id);

    std::string current;
    std::size_t i = 0;
    while (i < raw.size()) {
        const char32_t cp = text::decode_utf8(raw, i);
        if (text::is_letter(cp)) {
            text::append_utf8(current, text::to_lower(cp));
        } else if (!current.empty()) {
            list.words.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) list.words.push_back(std::move(current));
    return list;
}

Segmentation segment(const WordList& words, std::size_t window_size) {
    if (window_size == 0) throw InvalidArgument("window_size must be >= 1");

    Segmentation result;
    const std::size_t count = words.words.size() / window_size;
    result.segments.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        Segment seg;
        seg.doc = words.source_id;
        seg.index = s;
        seg.words.assign(words.words.begin() + static_cast<std::ptrdiff_t>(s * window_size),
                         words.words.begin() + static_cast<std::ptrdiff_t>((s + 1) * window_size));
        result.segments.push_back(std::move(seg));
    }
    result.discarded_words = words.words.size() - count * window_size;
    return result;
}

FreqVector frequency_vector(const Segment& seg, const lexicon::Lexicon& lex) {
    FreqVector fv;
    fv.doc = seg.doc;
    fv.index = seg.index;
    fv.total_words = static_cast<std::int64_t>(seg.words.size());
    for (const std::string& word : seg.words) {
        if (auto pos = lex.position(word)) {
            ++fv.counts[*pos];
            ++fv.total_in_vocab;
        }
    }
    return fv;
}

SegmentMatrix stack(std::vector<FreqVector> rows, std::size_t window_size) {
    SegmentMatrix matrix;
    matrix.window_size = window_size;
    if (!rows.empty()) {
        matrix.doc = rows.front().doc;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].doc != matrix.doc) {
                throw InvalidArgument("cannot stack vectors from different documents: \"" +
                                      matrix.doc + "\" and \"" + rows[i].doc + "\"");
            }
            if (rows[i].index != i) {
                throw InvalidArgument("frequency vectors out of segment order");
            }
        }
    }
    matrix.rows = std::move(rows);
    return matrix;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
    const io::Table table = io::read_delimited(path);
    std::vector<ManifestEntry> entries;
    const std::filesystem::path base = path.has_parent_path() ? path.parent_path() : ".";

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() < 3) {
            throw FormatError(path.string() + ": manifest row " + std::to_string(r + 1) +
                              " needs id, title, path");
        }
        if (r == 0 && row[0] == "id" && row[1] == "title" && row[2] == "path") continue;

        ManifestEntry e;
        e.id = row[0];
        e.title = row[1];
        std::filesystem::path p(row[2]);
        e.path = p.is_absolute() ? p : base / p;
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace narrative::corpus
