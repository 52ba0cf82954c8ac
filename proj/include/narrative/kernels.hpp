#pragma once

#include <cstddef>
#include <span>
#include <utility>

// Dense double-precision kernels backing the scoring, normalization and
// distance code. Each kernel has a scalar reference implementation and an
// AVX2+FMA variant; the active one is chosen once at startup from CPU
// capabilities. Set NARRATIVE_SIMD=scalar in the environment to force the
// reference path. The two backends agree to a few ulps, not bit-exactly
// (vector lanes reassociate the sums).

namespace narrative::kernels {

double sum(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

// Computes {dot(a, x), dot(b, x)} in one pass.
std::pair<double, double> dot2(std::span<const double> a,
                               std::span<const double> b,
                               std::span<const double> x);

double squared_distance(std::span<const double> a, std::span<const double> b);

// Sum of (x[i] - center)^2.
double sum_squared_dev(std::span<const double> x, double center);

// acc[i] += scale * x[i]
void add_scaled(std::span<double> acc, std::span<const double> x, double scale);

// Name of the backend in use: "avx2" or "scalar".
const char* active_backend();

namespace scalar {
double sum(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
std::pair<double, double> dot2(std::span<const double> a,
                               std::span<const double> b,
                               std::span<const double> x);
double squared_distance(std::span<const double> a, std::span<const double> b);
double sum_squared_dev(std::span<const double> x, double center);
void add_scaled(std::span<double> acc, std::span<const double> x, double scale);
}  // namespace scalar

namespace avx2 {
// False when the binary was built without AVX2 support or the CPU lacks it.
bool supported();
double sum(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
std::pair<double, double> dot2(std::span<const double> a,
                               std::span<const double> b,
                               std::span<const double> x);
double squared_distance(std::span<const double> a, std::span<const double> b);
double sum_squared_dev(std::span<const double> x, double center);
void add_scaled(std::span<double> acc, std::span<const double> x, double scale);
}  // namespace avx2

}  // namespace narrative::kernels
