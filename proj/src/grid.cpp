#include "cvmc/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "cvmc/fourier.hpp"
#include "cvmc/simd.hpp"

namespace cvmc {

std::vector<double> Grid::points() const {
    std::vector<double> xs(n_points);
    for (std::size_t k = 0; k < n_points; ++k) xs[k] = point(k);
    return xs;
}

double Grid::momentum_spacing() const {
    return 4 * std::numbers::pi / (double(n_points) * spacing());
}

Grid make_grid(std::size_t n_points, double half_width) {
    if (n_points < 8 || !std::has_single_bit(n_points)) throw Error("n_points must be a power of two");
    if (!(half_width > 0) || !std::isfinite(half_width)) throw Error("half_width must be positive");
    return Grid{n_points, half_width};
}

std::size_t amplitude_count(std::span<const Mode> modes) {
    std::size_t n = 1;
    for (const auto& m : modes) n *= m.grid.n_points;
    return n;
}

WaveFunction::WaveFunction(std::vector<Mode> modes, std::vector<cplx> amplitudes)
    : modes_(std::move(modes)), amps_(std::move(amplitudes)) {
    if (amps_.size() != amplitude_count(modes_)) throw Error("amplitude count does not match mode grids");
    norm_sq_ = simd::active().norm2(amps_.data(), amps_.size()) * volume_element();
}

WaveFunction WaveFunction::single(const Grid& grid, std::vector<cplx> amplitudes, ModeBasis basis) {
    return WaveFunction({Mode{grid, basis}}, std::move(amplitudes));
}

WaveFunction WaveFunction::tensor(std::span<const WaveFunction> factors) {
    std::vector<Mode> modes;
    std::vector<cplx> amps{1.0};
    for (const auto& f : factors) {
        modes.insert(modes.end(), f.modes().begin(), f.modes().end());
        std::vector<cplx> next;
        next.reserve(amps.size() * f.size());
        for (cplx a : amps)
            for (cplx b : f.amplitudes()) next.push_back(a * b);
        amps = std::move(next);
    }
    return WaveFunction(std::move(modes), std::move(amps));
}

std::size_t WaveFunction::stride(std::size_t i) const {
    std::size_t s = 1;
    for (std::size_t k = i + 1; k < modes_.size(); ++k) s *= modes_[k].grid.n_points;
    return s;
}

double WaveFunction::volume_element() const {
    double v = 1;
    for (const auto& m : modes_) v *= m.measure();
    return v;
}

double WaveFunction::norm() const { return std::sqrt(norm_sq_); }

WaveFunction WaveFunction::with_amplitudes(std::vector<cplx> amplitudes) const {
    return WaveFunction(modes_, std::move(amplitudes));
}

WaveFunction WaveFunction::with_mode(std::size_t i, Mode m, std::vector<cplx> amplitudes) const {
    auto modes = modes_;
    modes.at(i) = m;
    return WaveFunction(std::move(modes), std::move(amplitudes));
}

WaveFunction WaveFunction::scaled(cplx factor) const {
    auto a = amps_;
    for (auto& v : a) v *= factor;
    return with_amplitudes(std::move(a));
}

WaveFunction WaveFunction::normalized() const {
    if (!(norm_sq_ > 0)) throw Error("cannot normalize a zero state");
    return scaled(1.0 / norm());
}

namespace {

void require_same_structure(const WaveFunction& a, const WaveFunction& b, const char* what) {
    if (a.modes() != b.modes()) throw Error(std::string(what) + ": mismatched grids or bases");
}

}  // namespace

cplx inner_product(const WaveFunction& a, const WaveFunction& b) {
    require_same_structure(a, b, "inner_product");
    return simd::active().conj_dot(a.amplitudes().data(), b.amplitudes().data(), a.size()) * a.volume_element();
}

double fidelity(const WaveFunction& a, const WaveFunction& b) {
    return std::norm(inner_product(a, b)) / (a.norm_squared() * b.norm_squared());
}

WaveFunction add_scaled(const WaveFunction& a, cplx alpha, const WaveFunction& b) {
    require_same_structure(a, b, "add_scaled");
    auto out = a.amplitudes();
    simd::active().axpy(alpha, b.amplitudes().data(), out.data(), out.size());
    return a.with_amplitudes(std::move(out));
}

double max_abs_difference(const WaveFunction& a, const WaveFunction& b) {
    require_same_structure(a, b, "max_abs_difference");
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

namespace {

// Calls fn(line_start, stride) for every 1-D line along `mode`.
template <class Fn>
void for_each_line(const WaveFunction& wf, std::size_t mode, Fn&& fn) {
    const std::size_t n = wf.mode(mode).grid.n_points;
    const std::size_t inner = wf.stride(mode);
    const std::size_t outer = wf.size() / (n * inner);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < inner; ++i) fn(o * n * inner + i, inner);
}

// With x_k = -L + k dx and p_j = (j - n/2) dp, exp(-i x_k p_j / 2) factors as
// (-1)^j (-1)^k exp(-2 pi i j k / n), so both directions are a sign-modulated FFT.
WaveFunction transform(const WaveFunction& wf, std::size_t mode, ModeBasis target) {
    if (mode >= wf.num_modes()) throw Error("mode index out of range");
    const Mode& m = wf.mode(mode);
    if (m.basis == target)
        throw Error(target == ModeBasis::Momentum ? "mode already in momentum basis" : "mode already in position basis");
    const std::size_t n = m.grid.n_points;
    const double dx = m.grid.spacing(), dp = m.grid.momentum_spacing();
    const double factor = (target == ModeBasis::Momentum ? dx : dp) / (2 * std::sqrt(std::numbers::pi));
    const int sign = target == ModeBasis::Momentum ? -1 : +1;
    auto amps = wf.amplitudes();
    std::vector<cplx> line(n);
    for_each_line(wf, mode, [&](std::size_t start, std::size_t stride) {
        for (std::size_t k = 0; k < n; ++k) line[k] = (k & 1) ? -amps[start + k * stride] : amps[start + k * stride];
        fourier::fft(line, sign);
        for (std::size_t j = 0; j < n; ++j) amps[start + j * stride] = ((j & 1) ? -factor : factor) * line[j];
    });
    return wf.with_mode(mode, Mode{m.grid, target}, std::move(amps));
}

}  // namespace

WaveFunction to_momentum(const WaveFunction& wf, std::size_t mode) {
    return transform(wf, mode, ModeBasis::Momentum);
}

WaveFunction to_position(const WaveFunction& wf, std::size_t mode) {
    return transform(wf, mode, ModeBasis::Position);
}

WaveFunction to_basis(const WaveFunction& wf, std::size_t mode, ModeBasis basis) {
    if (wf.mode(mode).basis == basis) return wf;
    return transform(wf, mode, basis);
}

WaveFunction apply_diagonal_phase(const WaveFunction& wf, std::span<const std::size_t> modes, const PhaseFn& phase_fn,
                                  std::span<const ModeBasis> bases) {
    if (!bases.empty() && bases.size() != modes.size()) throw Error("apply_diagonal_phase: one basis per listed mode");
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (modes[i] >= wf.num_modes()) throw Error("mode index out of range");
        if (!bases.empty() && wf.mode(modes[i]).basis != bases[i])
            throw Error("apply_diagonal_phase: mode is not in the basis where the phase is diagonal");
    }
    const std::size_t d = wf.num_modes();
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> coords(modes.size());
    auto amps = wf.amplitudes();
    for (std::size_t flat = 0; flat < amps.size(); ++flat) {
        for (std::size_t i = 0; i < modes.size(); ++i) coords[i] = wf.mode(modes[i]).coordinate(idx[modes[i]]);
        amps[flat] *= std::polar(1.0, phase_fn(coords));
        for (std::size_t k = d; k-- > 0;) {
            if (++idx[k] < wf.mode(k).grid.n_points) break;
            idx[k] = 0;
        }
    }
    return wf.with_amplitudes(std::move(amps));
}

WaveFunction apply_diagonal_phase(const WaveFunction& wf, std::size_t mode, const std::function<double(double)>& phase_fn,
                                  std::optional<ModeBasis> basis) {
    if (mode >= wf.num_modes()) throw Error("mode index out of range");
    const Mode& m = wf.mode(mode);
    if (basis && m.basis != *basis) throw Error("apply_diagonal_phase: mode is not in the basis where the phase is diagonal");
    std::vector<cplx> factors(m.grid.n_points);
    for (std::size_t k = 0; k < factors.size(); ++k) factors[k] = std::polar(1.0, phase_fn(m.coordinate(k)));
    return multiply_along(wf, mode, factors);
}

WaveFunction multiply_along(const WaveFunction& wf, std::size_t mode, std::span<const cplx> factors) {
    if (mode >= wf.num_modes()) throw Error("mode index out of range");
    const std::size_t n = wf.mode(mode).grid.n_points;
    if (factors.size() != n) throw Error("factor count does not match grid");
    auto amps = wf.amplitudes();
    const auto& k = simd::active();
    for_each_line(wf, mode, [&](std::size_t start, std::size_t stride) {
        if (stride == 1) {
            k.mul(amps.data() + start, factors.data(), amps.data() + start, n);
        } else {
            for (std::size_t j = 0; j < n; ++j) amps[start + j * stride] *= factors[j];
        }
    });
    return wf.with_amplitudes(std::move(amps));
}

WaveFunction partial_project(const WaveFunction& wf, std::size_t mode, const WaveFunction& bra) {
    if (mode >= wf.num_modes()) throw Error("mode index out of range");
    if (bra.num_modes() != 1) throw Error("partial_project: bra must be single-mode");
    if (!(bra.mode(0) == wf.mode(mode))) throw Error("partial_project: mismatched grids or bases");
    const std::size_t n = wf.mode(mode).grid.n_points;
    const std::size_t inner = wf.stride(mode);
    const std::size_t outer = wf.size() / (n * inner);
    const double w = wf.mode(mode).measure();
    std::vector<cplx> out(outer * inner, 0.0);
    const auto& amps = wf.amplitudes();
    const auto& b = bra.amplitudes();
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx c = std::conj(b[k]) * w;
            const cplx* src = amps.data() + (o * n + k) * inner;
            simd::active().axpy(c, src, out.data() + o * inner, inner);
        }
    }
    std::vector<Mode> modes = wf.modes();
    modes.erase(modes.begin() + std::ptrdiff_t(mode));
    return WaveFunction(std::move(modes), std::move(out));
}

std::vector<double> marginal_density(const WaveFunction& wf, std::size_t mode) {
    if (mode >= wf.num_modes()) throw Error("mode index out of range");
    const std::size_t n = wf.mode(mode).grid.n_points;
    const double others = wf.volume_element() / wf.mode(mode).measure();
    std::vector<double> rho(n, 0.0);
    for_each_line(wf, mode, [&](std::size_t start, std::size_t stride) {
        for (std::size_t k = 0; k < n; ++k) rho[k] += std::norm(wf[start + k * stride]);
    });
    for (auto& r : rho) r *= others;
    return rho;
}

double mean_coordinate(const WaveFunction& wf, std::size_t mode) {
    auto rho = marginal_density(wf, mode);
    const Mode& m = wf.mode(mode);
    double num = 0, den = 0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        num += rho[k] * m.coordinate(k);
        den += rho[k];
    }
    return num / den;
}

double outer_mass(const WaveFunction& wf, std::size_t mode, double fraction) {
    auto rho = marginal_density(wf, mode);
    const std::size_t n = rho.size();
    const std::size_t edge = std::max<std::size_t>(1, std::size_t(std::ceil(fraction * double(n))));
    double total = 0, outer = 0;
    for (std::size_t k = 0; k < n; ++k) {
        total += rho[k];
        if (k < edge || k >= n - edge) outer += rho[k];
    }
    return total > 0 ? outer / total : 0.0;
}

void check_support(const WaveFunction& wf, const std::string& context, SupportRule rule) {
    for (std::size_t m = 0; m < wf.num_modes(); ++m) {
        const double mass = outer_mass(wf, m, rule.outer_fraction);
        if (mass >= rule.threshold)
            throw Error(context + ": support rule violated on mode " + std::to_string(m) + " (outer mass " +
                        std::to_string(mass) + ")");
    }
}

}  // namespace cvmc
