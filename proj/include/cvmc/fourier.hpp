#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cvmc::fourier {

using cplx = std::complex<double>;

// Unnormalized in-place DFT, data[k] <- sum_j data[j] exp(sign * 2 pi i j k / n).
void fft(std::span<cplx> data, int sign);

enum class DftMethod { Auto, Direct, Bluestein };

// out[m] = sum_j y[j] exp(i * omega * m * j), m = 0..out_count-1, for arbitrary omega.
std::vector<cplx> scaled_dft(std::span<const cplx> y, double omega, std::size_t out_count,
                             DftMethod method = DftMethod::Auto);

const char* backend_version();

}  // namespace cvmc::fourier
