#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "narrative/error.hpp"
#include "narrative/sentiment.hpp"
#include "support/oracles.hpp"

using namespace narrative;

namespace {

// Fixture mirroring the reference lexicon head: known arousal scores.
struct Fixture {
    lexicon::Lexicon lex;
    lexicon::ScoreVector scores;
    lexicon::StopMask mask;

    Fixture()
        : lex(lexicon::Lexicon::from_entries({{"aaaaaaah", 1, 0.606, 0.479, 0.291},
                                              {"aaaah", 2, 0.636, 0.520, 0.282},
                                              {"aardvark", 3, 0.490, 0.427, 0.437},
                                              {"aback", 4, 0.407, 0.385, 0.288},
                                              {"abacus", 5, 0.276, 0.510, 0.485}})),
          scores(lexicon::score_vector(lex, lexicon::Dimension::Arousal)),
          mask(lexicon::stop_mask(lex, lexicon::Dimension::Arousal, 0.0, {})) {}

    corpus::FreqVector freq(std::map<std::size_t, std::int64_t> counts) const {
        corpus::FreqVector fv;
        fv.doc = "doc";
        fv.index = 0;
        fv.counts = std::move(counts);
        for (const auto& [pos, c] : fv.counts) fv.total_in_vocab += c;
        fv.total_words = fv.total_in_vocab;
        return fv;
    }
};

}  // namespace

TEST_CASE("emotion_score single word equals its score") {
    const Fixture f;
    const auto score = sentiment::emotion_score(f.freq({{2, 1}}), f.scores, f.mask);
    REQUIRE(score.has_value());
    CHECK(*score == 0.490);
}

TEST_CASE("emotion_score averages equal counts") {
    const Fixture f;
    const auto score = sentiment::emotion_score(f.freq({{0, 1}, {1, 1}}), f.scores, f.mask);
    REQUIRE(score.has_value());
    CHECK(*score == doctest::Approx((0.606 + 0.636) / 2.0).epsilon(1e-12));
}

TEST_CASE("emotion_score empty accumulation is a gap") {
    const Fixture f;
    CHECK_FALSE(sentiment::emotion_score(f.freq({}), f.scores, f.mask).has_value());
}

TEST_CASE("emotion_score fully masked input is a gap") {
    const Fixture f;
    auto masked = lexicon::stop_mask(f.lex, lexicon::Dimension::Arousal, 0.0,
                                     {"aaaaaaah", "aaaah", "aardvark", "aback", "abacus"});
    CHECK_FALSE(sentiment::emotion_score(f.freq({{0, 3}, {4, 1}}), f.scores, masked).has_value());
}

TEST_CASE("emotion_score rejects misaligned vectors") {
    const Fixture f;
    lexicon::StopMask short_mask = f.mask;
    short_mask.excluded.pop_back();
    CHECK_THROWS_AS(sentiment::emotion_score(f.freq({{0, 1}}), f.scores, short_mask),
                    InvalidArgument);
}

TEST_CASE("emotion_score matches the brute-force oracle") {
    std::mt19937_64 rng(41);
    const auto lex = oracles::synthetic_lexicon(300, 77);
    const auto scores = lexicon::score_vector(lex, lexicon::Dimension::Arousal);
    // Mask a random half-band to exercise the exclusion path too.
    const auto mask = lexicon::stop_mask(lex, lexicon::Dimension::Arousal, 0.1, {});

    for (int trial = 0; trial < 200; ++trial) {
        const auto matrix = oracles::random_matrix(1, lex.size(), 40, 9, rng);
        const auto got = sentiment::emotion_score(matrix.rows[0], scores, mask);
        const auto want = oracles::weighted_mean(matrix.rows[0].counts, scores.values, mask.excluded);
        REQUIRE(got.has_value() == want.has_value());
        if (got) CHECK(*got == doctest::Approx(*want).epsilon(1e-12));
    }
}

TEST_CASE("emotion_score is invariant to integer scaling") {
    std::mt19937_64 rng(43);
    const auto lex = oracles::synthetic_lexicon(100, 78);
    const auto scores = lexicon::score_vector(lex);
    const auto mask = lexicon::stop_mask(lex, lexicon::Dimension::Arousal, 0.0, {});

    for (int trial = 0; trial < 50; ++trial) {
        const auto matrix = oracles::random_matrix(1, lex.size(), 20, 5, rng);
        if (matrix.rows[0].counts.empty()) continue;
        corpus::FreqVector scaled = matrix.rows[0];
        const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 7);
        for (auto& [pos, c] : scaled.counts) c *= k;

        const auto a = sentiment::emotion_score(matrix.rows[0], scores, mask);
        const auto b = sentiment::emotion_score(scaled, scores, mask);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(*a == doctest::Approx(*b).epsilon(1e-12));
    }
}

TEST_CASE("arc of a single row equals its emotion score") {
    const Fixture f;
    corpus::SegmentMatrix m;
    m.doc = "doc";
    m.window_size = 3;
    m.rows = {f.freq({{1, 2}, {3, 1}})};

    const auto a = sentiment::arc(m, f.scores, f.mask, 10);
    REQUIRE(a.points.size() == 1);
    const auto direct = sentiment::emotion_score(m.rows[0], f.scores, f.mask);
    CHECK(a.points[0].score == direct);
}

TEST_CASE("arc of an empty matrix is empty") {
    const Fixture f;
    corpus::SegmentMatrix m;
    m.doc = "doc";
    const auto a = sentiment::arc(m, f.scores, f.mask, 10);
    CHECK(a.points.empty());
    CHECK(a.doc == "doc");
}

TEST_CASE("arc over identical rows is constant") {
    const Fixture f;
    corpus::SegmentMatrix m;
    m.doc = "doc";
    auto row = f.freq({{0, 2}, {4, 3}});
    for (std::size_t i = 0; i < 25; ++i) {
        row.index = i;
        m.rows.push_back(row);
    }
    const auto a = sentiment::arc(m, f.scores, f.mask, 10);
    REQUIRE(a.points.size() == 25);
    for (const auto& p : a.points) {
        REQUIRE(p.score.has_value());
        CHECK(*p.score == doctest::Approx(*a.points[0].score).epsilon(1e-15));
    }
}

TEST_CASE("arc with context=1 equals per-row scores exactly") {
    std::mt19937_64 rng(47);
    const auto lex = oracles::synthetic_lexicon(200, 79);
    const auto scores = lexicon::score_vector(lex);
    const auto mask = lexicon::stop_mask(lex, lexicon::Dimension::Arousal, 0.0, {});

    const auto matrix = oracles::random_matrix(60, lex.size(), 30, 6, rng);
    const auto a = sentiment::arc(matrix, scores, mask, 1);
    REQUIRE(a.points.size() == 60);
    for (std::size_t t = 0; t < 60; ++t) {
        const auto direct = sentiment::emotion_score(matrix.rows[t], scores, mask);
        CHECK(a.points[t].score == direct);  // bitwise: same kernel, same input
    }
}

TEST_CASE("incremental arc equals batch recomputation") {
    std::mt19937_64 rng(53);
    const auto lex = oracles::synthetic_lexicon(400, 80);
    const auto scores = lexicon::score_vector(lex);
    const auto mask = lexicon::stop_mask(lex, lexicon::Dimension::Arousal, 0.05, {});

    for (int trial = 0; trial < 10; ++trial) {
        const auto matrix = oracles::random_matrix(30, lex.size(), 25, 8, rng);
        const auto a = sentiment::arc(matrix, scores, mask, 10);
        const auto want = oracles::batch_arc(matrix, scores.values, mask.excluded, 10);
        REQUIRE(a.points.size() == want.size());
        for (std::size_t t = 0; t < want.size(); ++t) {
            REQUIRE(a.points[t].score.has_value() == want[t].has_value());
            if (want[t]) CHECK(*a.points[t].score == doctest::Approx(*want[t]).epsilon(1e-9));
        }
    }
}

TEST_CASE("defined scores stay inside the active score range") {
    std::mt19937_64 rng(59);
    const auto lex = oracles::synthetic_lexicon(150, 81);
    const auto scores = lexicon::score_vector(lex);
    const auto mask = lexicon::stop_mask(lex, lexicon::Dimension::Arousal, 0.0, {});

    const auto matrix = oracles::random_matrix(40, lex.size(), 20, 5, rng);
    const auto a = sentiment::arc(matrix, scores, mask, 10);
    for (std::size_t t = 0; t < a.points.size(); ++t) {
        if (!a.points[t].score) continue;
        // Range over positions with nonzero accumulated frequency.
        double lo = 1.0, hi = 0.0;
        const std::size_t first = t >= 9 ? t - 9 : 0;
        for (std::size_t r = first; r <= t; ++r) {
            for (const auto& [pos, c] : matrix.rows[r].counts) {
                lo = std::min(lo, scores.values[pos]);
                hi = std::max(hi, scores.values[pos]);
            }
        }
        CHECK(*a.points[t].score >= lo - 1e-12);
        CHECK(*a.points[t].score <= hi + 1e-12);
    }
}

TEST_CASE("interpolate_gaps fills interior, edges and flags hopeless arcs") {
    sentiment::SentimentArc arc;
    arc.doc = "doc";

    SUBCASE("midpoint interpolation") {
        arc.points = {{0, 0.4, 1.0}, {1, std::nullopt, 0.0}, {2, 0.6, 1.0}};
        const auto out = sentiment::interpolate_gaps(arc);
        CHECK(*out.points[1].score == doctest::Approx(0.5).epsilon(1e-12));
        CHECK_FALSE(out.all_undefined);
    }
    SUBCASE("leading gap takes nearest value") {
        arc.points = {{0, std::nullopt, 0.0}, {1, 0.7, 1.0}};
        const auto out = sentiment::interpolate_gaps(arc);
        CHECK(*out.points[0].score == 0.7);
    }
    SUBCASE("trailing gap takes nearest value") {
        arc.points = {{0, 0.2, 1.0}, {1, std::nullopt, 0.0}, {2, std::nullopt, 0.0}};
        const auto out = sentiment::interpolate_gaps(arc);
        CHECK(*out.points[1].score == 0.2);
        CHECK(*out.points[2].score == 0.2);
    }
    SUBCASE("all undefined is returned unchanged with a warning flag") {
        arc.points = {{0, std::nullopt, 0.0}, {1, std::nullopt, 0.0}};
        const auto out = sentiment::interpolate_gaps(arc);
        CHECK(out.all_undefined);
        CHECK_FALSE(out.points[0].score.has_value());
        CHECK_FALSE(out.points[1].score.has_value());
    }
    SUBCASE("longer interior gap is linear") {
        arc.points = {{0, 0.0, 1.0},
                      {1, std::nullopt, 0.0},
                      {2, std::nullopt, 0.0},
                      {3, std::nullopt, 0.0},
                      {4, 1.0, 1.0}};
        const auto out = sentiment::interpolate_gaps(arc);
        CHECK(*out.points[1].score == doctest::Approx(0.25));
        CHECK(*out.points[2].score == doctest::Approx(0.50));
        CHECK(*out.points[3].score == doctest::Approx(0.75));
    }
}

TEST_CASE("arc files round-trip through CSV and JSON") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "narrative_sentiment_tests";
    fs::create_directories(dir);

    sentiment::SentimentArc arc;
    arc.doc = "doc,with comma";
    arc.context = 7;
    arc.points = {{0, 0.25, 0.9}, {1, std::nullopt, 0.1}, {2, 0.75, 1.0}};

    sentiment::write_arc_csv(arc, dir / "arc.csv");
    const auto from_csv = sentiment::read_arc(dir / "arc.csv");
    REQUIRE(from_csv.points.size() == 3);
    CHECK(from_csv.doc == arc.doc);
    CHECK(*from_csv.points[0].score == 0.25);
    CHECK_FALSE(from_csv.points[1].score.has_value());
    CHECK(from_csv.points[2].coverage == 1.0);

    sentiment::write_arc_json(arc, 500, "arousal", dir / "arc.json");
    const auto from_json = sentiment::read_arc(dir / "arc.json");
    REQUIRE(from_json.points.size() == 3);
    CHECK(from_json.context == 7);
    CHECK(*from_json.points[2].score == 0.75);
}
