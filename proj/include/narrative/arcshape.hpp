#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "narrative/sentiment.hpp"

namespace narrative::arcshape {

/// Fixed-length, z-normalized arc ready for template matching or clustering.
struct NormalizedArc {
    std::string doc;
    std::vector<double> values;
};

/// The six canonical story shapes, in tie-break order.
enum class Shape { RagsToRiches, RichesToRags, ManInAHole, Icarus, Cinderella, Oedipus };

inline constexpr std::array<Shape, 6> kAllShapes = {
    Shape::RagsToRiches, Shape::RichesToRags, Shape::ManInAHole,
    Shape::Icarus,       Shape::Cinderella,   Shape::Oedipus,
};

std::string_view to_string(Shape s);
Shape shape_from_name(std::string_view name);

struct ArcLabel {
    Shape label = Shape::RagsToRiches;
    std::array<double, 6> distances{};  // Euclidean, indexed by kAllShapes order
};

/// Linear interpolation onto L equally spaced positions over [0, n-1].
/// Single-point inputs replicate their value. L must be >= 2.
std::vector<double> resample(std::span<const double> values, std::size_t L);

/// (x - mean) / population std. Constant input maps to all zeros.
std::vector<double> znormalize(std::span<const double> values);

/// Centered moving average with window w (odd, <= length). Windows are
/// clipped at the edges, so output length equals input length.
std::vector<double> smooth_ma(std::span<const double> values, std::size_t w);

/// Keeps the mean term and the m-1 lowest nonzero frequencies of the
/// discrete Fourier transform (with their conjugate partners) and drops the
/// rest. m must satisfy 1 <= m <= L/2 + 1; the upper bound is an identity.
std::vector<double> lowpass(std::span<const double> values, std::size_t m);

/// Builds the six z-normalized shape templates at length L on t in [0,1]:
/// rising ramp, falling ramp, cos(2*pi*t), -cos(2*pi*t), sin(2*pi*t),
/// -sin(2*pi*t), in kAllShapes order.
std::array<std::vector<double>, 6> shape_templates(std::size_t L);

/// Nearest template by Euclidean distance; ties resolve in kAllShapes
/// order. Input must be z-normalized and at least 4 points long.
ArcLabel classify_arc(const NormalizedArc& norm);

/// Knobs for the shared conditioning pipeline.
struct PipelineOptions {
    std::size_t smooth_w = 5;    // clamped down to the largest odd value <= arc length
    std::size_t lowpass_m = 5;
    std::size_t resample_L = 100;
};

/// interpolate_gaps -> smooth_ma -> resample -> lowpass -> znormalize.
/// Throws InvalidArgument when the arc has no defined points.
NormalizedArc normalize_pipeline(const sentiment::SentimentArc& arc,
                                 const PipelineOptions& options = {});

/// Same pipeline without the final z-normalization (for raw cluster means).
std::vector<double> condition_pipeline(const sentiment::SentimentArc& arc,
                                       const PipelineOptions& options = {});

}  // namespace narrative::arcshape
