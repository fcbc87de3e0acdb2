#pragma once

#include <cstdint>
#include <vector>

#include "cvmc/integrand.hpp"
#include "cvmc/polyfit.hpp"

namespace cvmc {

struct McEstimate {
    long long N_C = 0;
    double mean = 0;
    double variance = 0;  // unbiased
    std::uint64_t seed = 0;
};

// Piecewise-uniform sampler for a 1-D density: bin masses by quadrature,
// uniform within each bin.
class InverseCdfTable {
  public:
    InverseCdfTable(const RealFn& density, Interval domain, int bins = 4096);

    double sample(double u) const;
    double cdf(double x) const;
    int bins() const { return int(mass_.size()); }

  private:
    Interval domain_;
    std::vector<double> mass_;
    std::vector<double> cum_;
};

// Draws per independent RNG stream; the chunk index is the stream id.
inline constexpr long long kMcChunk = 1 << 16;

McEstimate mc_estimate(const IntegrandSpec& spec, long long n_samples, std::uint64_t seed, int threads = 1);

long long chebyshev_n(double sigma2, double eps, double fail_prob);

}  // namespace cvmc
