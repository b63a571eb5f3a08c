// AVX2+FMA kernel variants. Compiled with target attributes so the rest of
// the binary stays generic; only reachable after the runtime cpuid check in
// kernels.cpp.

#if defined(__x86_64__)

#include <immintrin.h>

#include <cstddef>
#include <limits>
#include <span>

#define ATSE_AVX2 __attribute__((target("avx2,fma")))

namespace atse::kernels::avx2 {

ATSE_AVX2 static inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

ATSE_AVX2 double dot(std::span<const double> a, std::span<const double> b) {
    std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a.data() + i);
        __m256d vb = _mm256_loadu_pd(b.data() + i);
        acc = _mm256_fmadd_pd(va, vb, acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}

ATSE_AVX2 double sum(std::span<const double> a) {
    std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a.data() + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += a[i];
    return r;
}

ATSE_AVX2 double sumsq(std::span<const double> a) {
    std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(a.data() + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += a[i] * a[i];
    return r;
}

ATSE_AVX2 double max(std::span<const double> a) {
    std::size_t n = a.size();
    double m = -std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    if (n >= 4) {
        __m256d vm = _mm256_set1_pd(m);
        for (; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, _mm256_loadu_pd(a.data() + i));
        __m128d lo = _mm_max_pd(_mm256_castpd256_pd128(vm), _mm256_extractf128_pd(vm, 1));
        m = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
    }
    for (; i < n; ++i)
        if (a[i] > m) m = a[i];
    return m;
}

ATSE_AVX2 void scaled_sq_err(std::span<const double> a, double y, double scale,
                             std::span<double> out) {
    std::size_t n = a.size();
    __m256d vy = _mm256_set1_pd(y);
    __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), vy);
        _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(vs, _mm256_mul_pd(d, d)));
    }
    for (; i < n; ++i) {
        double d = a[i] - y;
        out[i] = scale * d * d;
    }
}

ATSE_AVX2 void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    std::size_t n = x.size();
    __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y.data() + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x.data() + i), vy);
        _mm256_storeu_pd(y.data() + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace atse::kernels::avx2

#endif  // __x86_64__
