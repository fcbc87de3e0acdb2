#pragma once

#include <complex>
#include <cstddef>

namespace cvmc::simd {

using cplx = std::complex<double>;

// Kernel table. Every entry has a scalar reference and, where the CPU allows,
// an AVX2/FMA variant picked once at startup.
struct Kernels {
    const char* name;
    // sum_i conj(a_i) * b_i
    cplx (*conj_dot)(const cplx* a, const cplx* b, std::size_t n);
    // sum_i |a_i|^2
    double (*norm2)(const cplx* a, std::size_t n);
    // out_i = a_i * b_i (out may alias a or b)
    void (*mul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    // y_i += alpha * x_i
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // a_i *= s
    void (*scale)(cplx* a, double s, std::size_t n);
    // sum_j y_j * exp(i * omega * j)
    cplx (*phase_sum)(const cplx* y, std::size_t n, double omega);
};

const Kernels& scalar_kernels();
// nullptr when the running CPU lacks AVX2+FMA.
const Kernels* avx2_kernels();
// Selected at first use; CVMC_SIMD=scalar in the environment forces the reference path.
const Kernels& active();

}  // namespace cvmc::simd
