#include "cvmc/simd.hpp"

#include <immintrin.h>

#include <cmath>

namespace cvmc::simd {
namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (a0,a1) * (b0,b1) as complex pairs.
inline __m256d cmul(__m256d a, __m256d b) {
    __m256d are = _mm256_movedup_pd(a);
    __m256d aim = _mm256_permute_pd(a, 0xF);
    __m256d bsw = _mm256_permute_pd(b, 0x5);
    return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

cplx conj_dot(const cplx* a, const cplx* b, std::size_t n) {
    __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = load2(a + i), vb = load2(b + i);
        re = _mm256_fmadd_pd(va, vb, re);
        im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), im);
    }
    alignas(32) double t[4];
    _mm256_store_pd(t, im);
    double r = hsum(re), m = t[0] - t[1] + t[2] - t[3];
    for (; i < n; ++i) {
        r += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        m += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {r, m};
}

double norm2(const cplx* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = load2(a + i);
        acc = _mm256_fmadd_pd(va, va, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += std::norm(a[i]);
    return s;
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(out + i, cmul(load2(a + i), load2(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(va, load2(x + i))));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(cplx* a, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(a + i, _mm256_mul_pd(load2(a + i), vs));
    for (; i < n; ++i) a[i] *= s;
}

constexpr std::size_t kReseed = 128;

cplx phase_sum(const cplx* y, std::size_t n, double omega) {
    const cplx z2 = std::polar(1.0, 2 * omega);
    const __m256d step = _mm256_setr_pd(z2.real(), z2.imag(), z2.real(), z2.imag());
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    while (j + 2 <= n) {
        cplx t0 = std::polar(1.0, omega * double(j));
        cplx t1 = std::polar(1.0, omega * double(j + 1));
        __m256d tw = _mm256_setr_pd(t0.real(), t0.imag(), t1.real(), t1.imag());
        std::size_t stop = std::min(n, j + kReseed);
        for (; j + 2 <= stop; j += 2) {
            acc = _mm256_add_pd(acc, cmul(load2(y + j), tw));
            tw = cmul(tw, step);
        }
    }
    alignas(32) double t[4];
    _mm256_store_pd(t, acc);
    cplx out{t[0] + t[2], t[1] + t[3]};
    for (; j < n; ++j) out += y[j] * std::polar(1.0, omega * double(j));
    return out;
}

const Kernels table{"avx2", conj_dot, norm2, mul, axpy, scale, phase_sum};

}  // namespace

namespace detail {
const Kernels& avx2_table() { return table; }
}  // namespace detail

}  // namespace cvmc::simd
