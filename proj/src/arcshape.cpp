#include "narrative/arcshape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "narrative/error.hpp"
#include "narrative/kernels.hpp"

namespace narrative::arcshape {

std::string_view to_string(Shape s) {
    switch (s) {
        case Shape::RagsToRiches: return "RagsToRiches";
        case Shape::RichesToRags: return "RichesToRags";
        case Shape::ManInAHole: return "ManInAHole";
        case Shape::Icarus: return "Icarus";
        case Shape::Cinderella: return "Cinderella";
        case Shape::Oedipus: return "Oedipus";
    }
    return "RagsToRiches";
}

Shape shape_from_name(std::string_view name) {
    for (Shape s : kAllShapes) {
        if (to_string(s) == name) return s;
    }
    throw InvalidArgument("unknown shape: " + std::string(name));
}

std::vector<double> resample(std::span<const double> values, std::size_t L) {
    if (L < 2) throw InvalidArgument("resample length must be >= 2");
    if (values.empty()) throw InvalidArgument("cannot resample an empty arc");

    const std::size_t n = values.size();
    std::vector<double> out(L);
    if (n == 1) {
        std::fill(out.begin(), out.end(), values[0]);
        return out;
    }
    for (std::size_t k = 0; k < L; ++k) {
        const double p = static_cast<double>(k) * static_cast<double>(n - 1) /
                         static_cast<double>(L - 1);
        std::size_t i = static_cast<std::size_t>(p);
        if (i >= n - 1) i = n - 2;
        const double frac = p - static_cast<double>(i);
        out[k] = values[i] * (1.0 - frac) + values[i + 1] * frac;
    }
    return out;
}

std::vector<double> znormalize(std::span<const double> values) {
    if (values.empty()) throw InvalidArgument("cannot normalize an empty arc");

    const double n = static_cast<double>(values.size());
    const double mean = kernels::sum(values) / n;
    const double variance = kernels::sum_squared_dev(values, mean) / n;

    std::vector<double> out(values.size());
    if (variance == 0.0) return out;  // constant input maps to zeros

    const double inv_std = 1.0 / std::sqrt(variance);
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - mean) * inv_std;
    return out;
}

std::vector<double> smooth_ma(std::span<const double> values, std::size_t w) {
    if (w % 2 == 0) throw InvalidArgument("smoothing window must be odd");
    if (w > values.size()) throw InvalidArgument("smoothing window exceeds arc length");

    const std::size_t n = values.size();
    const std::size_t half = w / 2;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(i + half, n - 1);
        double acc = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) acc += values[j];
        out[i] = acc / static_cast<double>(hi - lo + 1);
    }
    return out;
}

std::vector<double> lowpass(std::span<const double> values, std::size_t m) {
    const std::size_t L = values.size();
    if (L == 0) throw InvalidArgument("cannot filter an empty arc");
    if (m < 1 || m > L / 2 + 1) {
        throw InvalidArgument("lowpass cutoff m must satisfy 1 <= m <= L/2 + 1");
    }

    // Direct synthesis from the m retained coefficients: compute each low
    // frequency once and rebuild the signal from it plus its conjugate
    // partner. O(L*m), no imaginary residue to discard by construction.
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double inv_L = 1.0 / static_cast<double>(L);

    std::vector<double> out(L, 0.0);
    const double mean = kernels::sum(values) * inv_L;
    std::fill(out.begin(), out.end(), mean);

    for (std::size_t k = 1; k < m; ++k) {
        double re = 0.0;
        double im = 0.0;
        for (std::size_t t = 0; t < L; ++t) {
            const double theta = two_pi * static_cast<double>(k) * static_cast<double>(t) * inv_L;
            re += values[t] * std::cos(theta);
            im -= values[t] * std::sin(theta);
        }
        // Frequency L/2 (even L) is its own conjugate partner.
        const double gain = (2 * k == L) ? 1.0 : 2.0;
        for (std::size_t t = 0; t < L; ++t) {
            const double theta = two_pi * static_cast<double>(k) * static_cast<double>(t) * inv_L;
            out[t] += gain * inv_L * (re * std::cos(theta) - im * std::sin(theta));
        }
    }
    return out;
}

std::array<std::vector<double>, 6> shape_templates(std::size_t L) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> rise(L), fall(L), hole(L), icarus(L), cinderella(L), oedipus(L);
    for (std::size_t i = 0; i < L; ++i) {
        const double t = L > 1 ? static_cast<double>(i) / static_cast<double>(L - 1) : 0.0;
        rise[i] = t;
        fall[i] = -t;
        hole[i] = std::cos(two_pi * t);
        icarus[i] = -hole[i];
        cinderella[i] = std::sin(two_pi * t);
        oedipus[i] = -cinderella[i];
    }
    return {znormalize(rise),       znormalize(fall),    znormalize(hole),
            znormalize(icarus),     znormalize(cinderella), znormalize(oedipus)};
}

ArcLabel classify_arc(const NormalizedArc& norm) {
    const std::size_t L = norm.values.size();
    if (L < 4) throw InvalidArgument("arc too short to classify (need >= 4 points)");

    const auto templates = shape_templates(L);
    ArcLabel result;
    std::size_t best = 0;
    for (std::size_t s = 0; s < templates.size(); ++s) {
        result.distances[s] = std::sqrt(kernels::squared_distance(norm.values, templates[s]));
        if (result.distances[s] < result.distances[best]) best = s;  // ties keep the earlier shape
    }
    result.label = kAllShapes[best];
    return result;
}

namespace {

std::vector<double> conditioned_values(const sentiment::SentimentArc& arc,
                                       const PipelineOptions& options) {
    const sentiment::SentimentArc filled = interpolate_gaps(arc);
    if (filled.points.empty() || filled.all_undefined) {
        throw InvalidArgument("arc \"" + arc.doc + "\" has no defined scores");
    }
    std::vector<double> values = filled.defined_values();

    // A short arc cannot support the configured window; shrink to fit.
    std::size_t w = std::min(options.smooth_w, values.size());
    if (w % 2 == 0) --w;
    if (w >= 3) values = smooth_ma(values, w);

    values = resample(values, options.resample_L);

    const std::size_t max_m = options.resample_L / 2 + 1;
    values = lowpass(values, std::min(options.lowpass_m, max_m));
    return values;
}

}  // namespace

NormalizedArc normalize_pipeline(const sentiment::SentimentArc& arc,
                                 const PipelineOptions& options) {
    NormalizedArc out;
    out.doc = arc.doc;
    out.values = znormalize(conditioned_values(arc, options));
    return out;
}

std::vector<double> condition_pipeline(const sentiment::SentimentArc& arc,
                                       const PipelineOptions& options) {
    return conditioned_values(arc, options);
}

}  // namespace narrative::arcshape
