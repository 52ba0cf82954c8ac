// AVX2+FMA variants of the dense kernels. This translation unit is compiled
// with -mavx2 -mfma; callers must check supported() before dispatching here.

#include "narrative/kernels.hpp"

#include <cassert>
#include <immintrin.h>

namespace narrative::kernels::avx2 {

bool supported() {
#if defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

double sum(std::span<const double> x) {
    const double* p = x.data();
    const std::size_t n = x.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(p + i + 4));
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(p + i));
    }
    double total = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) total += p[i];
    return total;
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    const double* pa = a.data();
    const double* pb = b.data();
    const std::size_t n = a.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    }
    double total = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) total += pa[i] * pb[i];
    return total;
}

std::pair<double, double> dot2(std::span<const double> a,
                               std::span<const double> b,
                               std::span<const double> x) {
    assert(a.size() == x.size() && b.size() == x.size());
    const double* pa = a.data();
    const double* pb = b.data();
    const double* px = x.data();
    const std::size_t n = x.size();
    __m256d acc_a = _mm256_setzero_pd();
    __m256d acc_b = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(px + i);
        acc_a = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), vx, acc_a);
        acc_b = _mm256_fmadd_pd(_mm256_loadu_pd(pb + i), vx, acc_b);
    }
    double ra = hsum(acc_a);
    double rb = hsum(acc_b);
    for (; i < n; ++i) {
        ra += pa[i] * px[i];
        rb += pb[i] * px[i];
    }
    return {ra, rb};
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    const double* pa = a.data();
    const double* pb = b.data();
    const std::size_t n = a.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
        const __m256d d1 =
            _mm256_sub_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    double total = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = pa[i] - pb[i];
        total += d * d;
    }
    return total;
}

double sum_squared_dev(std::span<const double> x, double center) {
    const double* p = x.data();
    const std::size_t n = x.size();
    const __m256d c = _mm256_set1_pd(center);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), c);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double d = p[i] - center;
        total += d * d;
    }
    return total;
}

void add_scaled(std::span<double> acc, std::span<const double> x, double scale) {
    assert(acc.size() == x.size());
    double* pa = acc.data();
    const double* px = x.data();
    const std::size_t n = x.size();
    const __m256d s = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_fmadd_pd(s, _mm256_loadu_pd(px + i), _mm256_loadu_pd(pa + i));
        _mm256_storeu_pd(pa + i, v);
    }
    for (; i < n; ++i) pa[i] += scale * px[i];
}

}  // namespace narrative::kernels::avx2
