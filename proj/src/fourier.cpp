#include "cvmc/fourier.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "cvmc/simd.hpp"

namespace cvmc::fourier {
namespace {

// FFTW planning is not thread safe; execution of an existing plan on new
// arrays is. Plans are created once per (size, sign) and never destroyed.
fftw_plan plan_for(std::size_t n, int sign) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<cplx> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan p = fftw_plan_dft_1d(int(n), buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, p);
    return p;
}

std::vector<cplx> direct(std::span<const cplx> y, double omega, std::size_t out_count) {
    const auto& k = simd::active();
    std::vector<cplx> out(out_count);
    for (std::size_t m = 0; m < out_count; ++m) out[m] = k.phase_sum(y.data(), y.size(), omega * double(m));
    return out;
}

cplx chirp(double omega, std::size_t k) {
    double kk = double(k) * double(k);
    return std::polar(1.0, 0.5 * omega * kk);
}

std::vector<cplx> bluestein(std::span<const cplx> y, double omega, std::size_t out_count) {
    const std::size_t n = y.size();
    const std::size_t len = std::bit_ceil(n + out_count - 1);
    std::vector<cplx> a(len, 0.0), b(len, 0.0);
    for (std::size_t j = 0; j < n; ++j) a[j] = y[j] * chirp(omega, j);
    for (std::size_t k = 0; k < out_count; ++k) b[k] = std::conj(chirp(omega, k));
    for (std::size_t k = 1; k < n; ++k) b[len - k] = std::conj(chirp(omega, k));
    fft(a, -1);
    fft(b, -1);
    const auto& kern = simd::active();
    kern.mul(a.data(), b.data(), a.data(), len);
    fft(a, +1);
    std::vector<cplx> out(out_count);
    const double inv = 1.0 / double(len);
    for (std::size_t m = 0; m < out_count; ++m) out[m] = a[m] * chirp(omega, m) * inv;
    return out;
}

}  // namespace

void fft(std::span<cplx> data, int sign) {
    if (data.size() < 2) return;
    fftw_plan p = plan_for(data.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, buf, buf);
}

std::vector<cplx> scaled_dft(std::span<const cplx> y, double omega, std::size_t out_count, DftMethod method) {
    if (y.empty() || out_count == 0) return std::vector<cplx>(out_count, 0.0);
    if (method == DftMethod::Auto) {
        const double work = double(y.size()) * double(out_count);
        method = (work <= 65536.0 || y.size() <= 32 || out_count <= 32) ? DftMethod::Direct : DftMethod::Bluestein;
    }
    return method == DftMethod::Direct ? direct(y, omega, out_count) : bluestein(y, omega, out_count);
}

const char* backend_version() { return fftw_version; }

}  // namespace cvmc::fourier
