#include "cvmc/simd.hpp"

#include <cmath>

namespace cvmc::simd {
namespace {

cplx conj_dot(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0, im = 0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm2(const cplx* a, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(a[i]);
    return s;
}

void mul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(cplx* a, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

// Exact twiddle per term; the reference the recurrence-based variant is checked against.
cplx phase_sum(const cplx* y, std::size_t n, double omega) {
    cplx acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += y[j] * std::polar(1.0, omega * double(j));
    return acc;
}

const Kernels table{"scalar", conj_dot, norm2, mul, axpy, scale, phase_sum};

}  // namespace

const Kernels& scalar_kernels() { return table; }

}  // namespace cvmc::simd
