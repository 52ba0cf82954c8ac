#include "narrative/kernels.hpp"

#include <cassert>
#include <cstdlib>
#include <cstring>

namespace narrative::kernels {

namespace scalar {

double sum(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

std::pair<double, double> dot2(std::span<const double> a,
                               std::span<const double> b,
                               std::span<const double> x) {
    assert(a.size() == x.size() && b.size() == x.size());
    double acc_a = 0.0;
    double acc_b = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc_a += a[i] * x[i];
        acc_b += b[i] * x[i];
    }
    return {acc_a, acc_b};
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double sum_squared_dev(std::span<const double> x, double center) {
    double acc = 0.0;
    for (double v : x) {
        const double d = v - center;
        acc += d * d;
    }
    return acc;
}

void add_scaled(std::span<double> acc, std::span<const double> x, double scale) {
    assert(acc.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i) acc[i] += scale * x[i];
}

}  // namespace scalar

namespace {

struct Backend {
    const char* name;
    double (*sum)(std::span<const double>);
    double (*dot)(std::span<const double>, std::span<const double>);
    std::pair<double, double> (*dot2)(std::span<const double>, std::span<const double>,
                                      std::span<const double>);
    double (*squared_distance)(std::span<const double>, std::span<const double>);
    double (*sum_squared_dev)(std::span<const double>, double);
    void (*add_scaled)(std::span<double>, std::span<const double>, double);
};

constexpr Backend kScalarBackend = {
    "scalar",        scalar::sum,
    scalar::dot,     scalar::dot2,
    scalar::squared_distance, scalar::sum_squared_dev,
    scalar::add_scaled,
};

constexpr Backend kAvx2Backend = {
    "avx2",        avx2::sum,
    avx2::dot,     avx2::dot2,
    avx2::squared_distance, avx2::sum_squared_dev,
    avx2::add_scaled,
};

const Backend& select_backend() {
    const char* forced = std::getenv("NARRATIVE_SIMD");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return kScalarBackend;
    if (avx2::supported()) return kAvx2Backend;
    return kScalarBackend;
}

const Backend& backend() {
    static const Backend& chosen = select_backend();
    return chosen;
}

}  // namespace

const char* active_backend() { return backend().name; }

double sum(std::span<const double> x) { return backend().sum(x); }

double dot(std::span<const double> a, std::span<const double> b) {
    return backend().dot(a, b);
}

std::pair<double, double> dot2(std::span<const double> a, std::span<const double> b,
                               std::span<const double> x) {
    return backend().dot2(a, b, x);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    return backend().squared_distance(a, b);
}

double sum_squared_dev(std::span<const double> x, double center) {
    return backend().sum_squared_dev(x, center);
}

void add_scaled(std::span<double> acc, std::span<const double> x, double scale) {
    backend().add_scaled(acc, x, scale);
}

#ifndef NARRATIVE_HAVE_AVX2
// Built without the AVX2 translation unit: the stubs keep the dispatch table
// linkable and are never selected.
namespace avx2 {
bool supported() { return false; }
double sum(std::span<const double> x) { return scalar::sum(x); }
double dot(std::span<const double> a, std::span<const double> b) { return scalar::dot(a, b); }
std::pair<double, double> dot2(std::span<const double> a, std::span<const double> b,
                               std::span<const double> x) {
    return scalar::dot2(a, b, x);
}
double squared_distance(std::span<const double> a, std::span<const double> b) {
    return scalar::squared_distance(a, b);
}
double sum_squared_dev(std::span<const double> x, double center) {
    return scalar::sum_squared_dev(x, center);
}
void add_scaled(std::span<double> acc, std::span<const double> x, double scale) {
    scalar::add_scaled(acc, x, scale);
}
}  // namespace avx2
#endif

}  // namespace narrative::kernels
