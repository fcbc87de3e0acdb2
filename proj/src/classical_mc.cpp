#include "cvmc/classical_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <thread>

#include "cvmc/ampest.hpp"
#include "cvmc/philox.hpp"
#include "cvmc/quadrature.hpp"

namespace cvmc {

InverseCdfTable::InverseCdfTable(const RealFn& density, Interval domain, int bins) : domain_(domain) {
    if (bins < 1 || !(domain.b > domain.a)) throw Error("InverseCdfTable: bad binning");
    mass_.resize(std::size_t(bins));
    cum_.resize(std::size_t(bins) + 1, 0.0);
    const double w = (domain.b - domain.a) / bins;
    // One 61-point rule per bin; adaptive refinement would stall on bins where the density underflows.
    for (int k = 0; k < bins; ++k) {
        const double a = domain.a + k * w;
        mass_[std::size_t(k)] = std::max(0.0, integrate(density, a, a + w, 1e-12, 0).value);
        cum_[std::size_t(k) + 1] = cum_[std::size_t(k)] + mass_[std::size_t(k)];
    }
    const double total = cum_.back();
    if (!(total > 0)) throw Error("InverseCdfTable: density has no mass on the domain");
    for (auto& c : cum_) c /= total;
    for (auto& m : mass_) m /= total;
}

double InverseCdfTable::sample(double u) const {
    const auto it = std::upper_bound(cum_.begin() + 1, cum_.end(), u);
    const std::size_t k = std::min<std::size_t>(std::size_t(it - cum_.begin()) - 1, mass_.size() - 1);
    const double w = (domain_.b - domain_.a) / double(mass_.size());
    const double frac = mass_[k] > 0 ? (u - cum_[k]) / mass_[k] : 0.5;
    return domain_.a + (double(k) + std::clamp(frac, 0.0, 1.0)) * w;
}

double InverseCdfTable::cdf(double x) const {
    if (x <= domain_.a) return 0;
    if (x >= domain_.b) return 1;
    const double w = (domain_.b - domain_.a) / double(mass_.size());
    const double t = (x - domain_.a) / w;
    const std::size_t k = std::min<std::size_t>(std::size_t(t), mass_.size() - 1);
    return cum_[k] + mass_[k] * (t - double(k));
}

namespace {

struct Moments {
    double n = 0, mean = 0, m2 = 0;
};

Moments merge(const Moments& a, const Moments& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    Moments m;
    m.n = a.n + b.n;
    const double d = b.mean - a.mean;
    m.mean = a.mean + d * (b.n / m.n);
    m.m2 = a.m2 + b.m2 + d * d * (a.n * b.n / m.n);
    return m;
}

Moments tree_reduce(const std::vector<Moments>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return merge(tree_reduce(v, lo, mid), tree_reduce(v, mid, hi));
}

}  // namespace

McEstimate mc_estimate(const IntegrandSpec& spec, long long n_samples, std::uint64_t seed, int threads) {
    if (n_samples < 1) throw Error("mc_estimate: N_C must be positive");
    const std::size_t dim = std::size_t(spec.dim);
    std::unique_ptr<InverseCdfTable> table;
    if (spec.p.kind == PKind::Custom) {
        if (dim != 1) throw Error("mc_estimate: no sampler for a multidimensional custom density");
        const double w = spec.grid.half_width;
        table = std::make_unique<InverseCdfTable>(spec.p1(), Interval{-w, w});
    } else if (spec.p.x0.size() != dim || spec.p.sigma.size() != dim) {
        throw Error("mc_estimate: gaussian density parameters do not match the dimension");
    }

    const std::size_t chunks = std::size_t((n_samples + kMcChunk - 1) / kMcChunk);
    std::vector<Moments> parts(chunks);
    auto run_chunk = [&](std::size_t c) {
        const long long begin = (long long)c * kMcChunk;
        const long long count = std::min(kMcChunk, n_samples - begin);
        CounterRng rng(seed, c);
        std::vector<double> x(dim);
        Moments m;
        for (long long i = 0; i < count; ++i) {
            if (table) {
                x[0] = table->sample(rng.uniform());
            } else {
                for (std::size_t d = 0; d < dim; ++d) x[d] = spec.p.x0[d] + spec.p.sigma[d] * rng.normal();
            }
            const double v = spec.f(x);
            m.n += 1;
            const double delta = v - m.mean;
            m.mean += delta / m.n;
            m.m2 += delta * (v - m.mean);
        }
        parts[c] = m;
    };

    const std::size_t workers = std::min<std::size_t>(std::size_t(std::max(1, threads)), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::size_t c; (c = next++) < chunks;) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }

    const Moments total = tree_reduce(parts, 0, chunks);
    McEstimate est;
    est.N_C = n_samples;
    est.mean = total.mean;
    est.variance = n_samples > 1 ? total.m2 / double(n_samples - 1) : 0.0;
    est.seed = seed;
    return est;
}

long long chebyshev_n(double sigma2, double eps, double fail_prob) {
    if (!(eps > 0)) throw Error("chebyshev_n: eps must be positive");
    if (!(fail_prob > 0 && fail_prob < 1)) throw Error("chebyshev_n: fail_prob must lie in (0, 1)");
    if (!(sigma2 >= 0)) throw Error("chebyshev_n: variance must be non-negative");
    return ceil_tolerant(sigma2 / (fail_prob * eps * eps));
}

}  // namespace cvmc
