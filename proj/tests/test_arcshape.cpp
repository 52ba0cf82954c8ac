#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "narrative/arcshape.hpp"
#include "narrative/error.hpp"
#include "narrative/kernels.hpp"
#include "support/oracles.hpp"

using namespace narrative;
using arcshape::Shape;

namespace {

std::vector<double> random_arc(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(-2.0, 2.0);
    std::vector<double> v(n);
    for (double& x : v) x = uniform(rng);
    return v;
}

double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("resample basics") {
    SUBCASE("two points to three") {
        const auto out = arcshape::resample(std::vector<double>{0.0, 1.0}, 3);
        REQUIRE(out.size() == 3);
        CHECK(out[0] == 0.0);
        CHECK(out[1] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(out[2] == 1.0);
    }
    SUBCASE("identity at own length") {
        std::mt19937_64 rng(3);
        const auto arc = random_arc(37, rng);
        const auto out = arcshape::resample(arc, 37);
        for (std::size_t i = 0; i < arc.size(); ++i) CHECK(out[i] == arc[i]);
    }
    SUBCASE("single point replicates") {
        const auto out = arcshape::resample(std::vector<double>{4.2}, 5);
        for (double v : out) CHECK(v == 4.2);
    }
    SUBCASE("L below 2 rejected") {
        CHECK_THROWS_AS(arcshape::resample(std::vector<double>{1.0, 2.0}, 1), InvalidArgument);
    }
}

TEST_CASE("resample matches the direct interpolation oracle") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 80;
        const std::size_t L = 2 + rng() % 150;
        const auto arc = random_arc(n, rng);
        const auto got = arcshape::resample(arc, L);
        const auto want = oracles::linear_resample(arc, L);
        for (std::size_t i = 0; i < L; ++i) {
            CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("resample is exact on linear ramps") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 60;
        const std::size_t L = 2 + rng() % 120;
        const double a = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
        const double b = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
        std::vector<double> ramp(n);
        for (std::size_t i = 0; i < n; ++i) ramp[i] = a * static_cast<double>(i) + b;

        const auto out = arcshape::resample(ramp, L);
        const double scale = static_cast<double>(n - 1) / static_cast<double>(L - 1);
        for (std::size_t k = 0; k < L; ++k) {
            const double expected = a * (static_cast<double>(k) * scale) + b;
            CHECK(out[k] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("znormalize examples") {
    SUBCASE("1 2 3") {
        const auto out = arcshape::znormalize(std::vector<double>{1.0, 2.0, 3.0});
        const double r = std::sqrt(1.5);  // population std of {1,2,3} is sqrt(2/3)
        CHECK(out[0] == doctest::Approx(-r).epsilon(1e-12));
        CHECK(out[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(out[2] == doctest::Approx(r).epsilon(1e-12));
    }
    SUBCASE("constant maps to zeros") {
        const auto out = arcshape::znormalize(std::vector<double>{5.0, 5.0, 5.0});
        for (double v : out) CHECK(v == 0.0);
    }
}

TEST_CASE("znormalize yields mean 0, std 1, and is idempotent") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto arc = random_arc(2 + rng() % 200, rng);
        const auto z = arcshape::znormalize(arc);
        const double n = static_cast<double>(z.size());
        const double mean = mean_of(z);
        double var = 0.0;
        for (double v : z) var += (v - mean) * (v - mean);
        var /= n;
        CHECK(std::abs(mean) <= 1e-9);
        CHECK(std::abs(var - 1.0) <= 1e-9);

        const auto zz = arcshape::znormalize(z);
        for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(zz[i] - z[i]) <= 1e-9);
    }
}

TEST_CASE("smooth_ma examples and errors") {
    SUBCASE("w = 1 is identity") {
        const std::vector<double> arc{0.3, 0.9, 0.1};
        CHECK(arcshape::smooth_ma(arc, 1) == arc);
    }
    SUBCASE("constant array unchanged") {
        const std::vector<double> arc(9, 2.5);
        CHECK(arcshape::smooth_ma(arc, 5) == arc);
    }
    SUBCASE("clipped edge windows") {
        const auto out = arcshape::smooth_ma(std::vector<double>{0.0, 3.0, 0.0}, 3);
        CHECK(out[0] == doctest::Approx(1.5));
        CHECK(out[1] == doctest::Approx(1.0));
        CHECK(out[2] == doctest::Approx(1.5));
    }
    SUBCASE("even window rejected") {
        CHECK_THROWS_AS(arcshape::smooth_ma(std::vector<double>{1.0, 2.0, 3.0}, 2),
                        InvalidArgument);
    }
    SUBCASE("oversized window rejected") {
        CHECK_THROWS_AS(arcshape::smooth_ma(std::vector<double>{1.0, 2.0}, 3), InvalidArgument);
    }
}

TEST_CASE("lowpass identity at the full cutoff") {
    std::mt19937_64 rng(13);
    for (std::size_t L : {8u, 9u, 50u, 101u}) {
        const auto arc = random_arc(L, rng);
        const auto out = arcshape::lowpass(arc, L / 2 + 1);
        for (std::size_t i = 0; i < L; ++i) CHECK(out[i] == doctest::Approx(arc[i]).epsilon(1e-9));
    }
}

TEST_CASE("lowpass removes a pure high-frequency cosine") {
    constexpr std::size_t L = 64;
    constexpr std::size_t m = 5;
    std::vector<double> arc(L);
    for (std::size_t t = 0; t < L; ++t) {
        arc[t] = std::cos(2.0 * std::numbers::pi * static_cast<double>((m + 2) * t) /
                          static_cast<double>(L));
    }
    const auto out = arcshape::lowpass(arc, m);
    for (double v : out) CHECK(std::abs(v) <= 1e-9);
}

TEST_CASE("lowpass matches the naive DFT oracle") {
    std::mt19937_64 rng(17);
    for (std::size_t L : {50u, 64u, 100u, 101u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto arc = random_arc(L, rng);
            const std::size_t m = 1 + rng() % (L / 2 + 1);
            const auto got = arcshape::lowpass(arc, m);
            const auto want = oracles::dft_lowpass(arc, m);
            for (std::size_t i = 0; i < L; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-9);
        }
    }
}

TEST_CASE("lowpass rejects out-of-range cutoffs") {
    const std::vector<double> arc(10, 1.0);
    CHECK_THROWS_AS(arcshape::lowpass(arc, 0), InvalidArgument);
    CHECK_THROWS_AS(arcshape::lowpass(arc, 7), InvalidArgument);  // floor(10/2)+1 = 6 is the max
}

TEST_CASE("lowpass preserves the mean") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t L = 4 + rng() % 120;
        const auto arc = random_arc(L, rng);
        const std::size_t m = 1 + rng() % (L / 2 + 1);
        const auto out = arcshape::lowpass(arc, m);
        CHECK(std::abs(mean_of(out) - mean_of(arc)) <= 1e-9);
    }
}

TEST_CASE("classify_arc nails exact templates") {
    for (std::size_t L : {4u, 10u, 100u}) {
        for (std::size_t s = 0; s < arcshape::kAllShapes.size(); ++s) {
            arcshape::NormalizedArc norm;
            norm.doc = "t";
            norm.values = arcshape::znormalize(oracles::raw_template(arcshape::kAllShapes[s], L));
            const auto label = arcshape::classify_arc(norm);
            CHECK(label.label == arcshape::kAllShapes[s]);
            CHECK(label.distances[s] <= 1e-9);
        }
    }
}

TEST_CASE("classify_arc rejects short arcs") {
    arcshape::NormalizedArc norm;
    norm.values = {0.1, 0.2, 0.3};
    CHECK_THROWS_AS(arcshape::classify_arc(norm), InvalidArgument);
}

TEST_CASE("classify_arc on a noisy rise, checked against exhaustive distances") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> noise(0.0, 0.1);
    constexpr std::size_t L = 100;

    auto arc = oracles::raw_template(Shape::RagsToRiches, L);
    for (double& v : arc) v += noise(rng);

    arcshape::NormalizedArc norm;
    norm.values = arcshape::znormalize(arc);
    const auto label = arcshape::classify_arc(norm);
    CHECK(label.label == Shape::RagsToRiches);

    // Independent distance computation over all six templates.
    const auto templates = arcshape::shape_templates(L);
    std::array<double, 6> dist{};
    for (std::size_t s = 0; s < 6; ++s) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < L; ++i) {
            const double diff = norm.values[i] - templates[s][i];
            d2 += diff * diff;
        }
        dist[s] = std::sqrt(d2);
        CHECK(std::abs(dist[s] - label.distances[s]) <= 1e-9);
    }
    std::size_t best = 0;
    for (std::size_t s = 1; s < 6; ++s) {
        if (dist[s] < dist[best]) best = s;
    }
    CHECK(arcshape::kAllShapes[best] == label.label);
}

TEST_CASE("classify_arc is affine invariant") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> gain(0.1, 5.0);
    std::uniform_real_distribution<double> offset(-10.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto arc = random_arc(4 + rng() % 120, rng);
        const double a = gain(rng);
        const double b = offset(rng);
        std::vector<double> transformed(arc.size());
        for (std::size_t i = 0; i < arc.size(); ++i) transformed[i] = a * arc[i] + b;

        arcshape::NormalizedArc n1{"x", arcshape::znormalize(arc)};
        arcshape::NormalizedArc n2{"x", arcshape::znormalize(transformed)};
        CHECK(arcshape::classify_arc(n1).label == arcshape::classify_arc(n2).label);
    }
}

TEST_CASE("negating an arc swaps paired labels") {
    const auto paired = [](Shape s) {
        switch (s) {
            case Shape::RagsToRiches: return Shape::RichesToRags;
            case Shape::RichesToRags: return Shape::RagsToRiches;
            case Shape::ManInAHole: return Shape::Icarus;
            case Shape::Icarus: return Shape::ManInAHole;
            case Shape::Cinderella: return Shape::Oedipus;
            case Shape::Oedipus: return Shape::Cinderella;
        }
        return s;
    };

    std::mt19937_64 rng(31);
    int checked = 0;
    for (int trial = 0; trial < 150 && checked < 100; ++trial) {
        const auto arc = random_arc(4 + rng() % 120, rng);
        arcshape::NormalizedArc pos{"x", arcshape::znormalize(arc)};
        std::vector<double> negated(arc.size());
        for (std::size_t i = 0; i < arc.size(); ++i) negated[i] = -arc[i];
        arcshape::NormalizedArc neg{"x", arcshape::znormalize(negated)};

        const auto p = arcshape::classify_arc(pos);
        const auto q = arcshape::classify_arc(neg);
        // Skip near-ties, where negation symmetry can land on either side.
        std::array<double, 6> sorted = p.distances;
        std::sort(sorted.begin(), sorted.end());
        if (sorted[1] - sorted[0] < 1e-9) continue;
        CHECK(q.label == paired(p.label));
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("normalize_pipeline conditions gappy arcs") {
    sentiment::SentimentArc arc;
    arc.doc = "doc";
    arc.points = {{0, 0.1, 1.0}, {1, std::nullopt, 0.0}, {2, 0.5, 1.0},
                  {3, 0.4, 1.0}, {4, 0.9, 1.0},        {5, 0.8, 1.0}};

    arcshape::PipelineOptions opt;
    opt.resample_L = 50;
    const auto norm = arcshape::normalize_pipeline(arc, opt);
    CHECK(norm.doc == "doc");
    CHECK(norm.values.size() == 50);
    CHECK(std::abs(mean_of(norm.values)) <= 1e-9);

    sentiment::SentimentArc hopeless;
    hopeless.doc = "empty";
    hopeless.points = {{0, std::nullopt, 0.0}};
    CHECK_THROWS_AS(arcshape::normalize_pipeline(hopeless, opt), InvalidArgument);
}
