#include "cvmc/gates.hpp"

#include <cmath>
#include <numbers>

#include "cvmc/fourier.hpp"

namespace cvmc {

double squeeze_relation(double r) { return std::exp(-r) / std::numbers::sqrt2; }

double squeezing_from_width(double s) {
    if (!(s > 0)) throw Error("width must be positive");
    return -std::log(s * std::numbers::sqrt2);
}

double vacuum_width() { return 1 / std::numbers::sqrt2; }

GaussianParams GaussianParams::from_squeezing(double r, double x0) {
    return GaussianParams{x0, squeeze_relation(r), r};
}

void GaussianParams::validate() const {
    if (!(s > 0)) throw Error("gaussian width must be positive");
    if (r && std::abs(squeeze_relation(*r) - s) > 1e-12 * s) throw Error("width and squeezing factor disagree");
}

WaveFunction gaussian_state(const GaussianParams& params, const Grid& grid) {
    params.validate();
    if (std::abs(params.x0) + 5 * params.s > grid.half_width)
        throw Error("gaussian_state: support rule violated (x0 +- 5s outside grid)");
    const double norm = 1 / (std::sqrt(params.s) * std::pow(std::numbers::pi, 0.25));
    std::vector<cplx> amps(grid.n_points);
    for (std::size_t k = 0; k < grid.n_points; ++k) {
        const double u = (grid.point(k) - params.x0) / params.s;
        amps[k] = norm * std::exp(-0.5 * u * u);
    }
    return WaveFunction::single(grid, std::move(amps)).normalized();
}

WaveFunction vacuum_state(const Grid& grid) { return gaussian_state({0, vacuum_width(), 0.0}, grid); }

double gaussian_overlap(double y, double s, double x0, double dx) {
    const double d = x0 - y, v = dx * dx + s * s;
    return std::sqrt(2 * s * dx / v) * std::exp(-d * d / (2 * v));
}

WaveFunction displace(const WaveFunction& wf, std::size_t mode, double amount) {
    if (amount == 0) return wf;
    const ModeBasis original = wf.mode(mode).basis;
    WaveFunction m = to_basis(wf, mode, ModeBasis::Momentum);
    m = apply_diagonal_phase(m, mode, [amount](double p) { return -0.5 * amount * p; }, ModeBasis::Momentum);
    return to_basis(m, mode, original);
}

WaveFunction controlled_shift(const WaveFunction& wf, std::size_t phase_mode, double amount) {
    if (phase_mode >= wf.num_modes()) throw Error("phase mode not present");
    const Grid& g = wf.mode(phase_mode).grid;
    WaveFunction out = displace(wf, phase_mode, amount);
    if (out.mode(phase_mode).basis == ModeBasis::Position) {
        try {
            check_support(out, "controlled_shift");
        } catch (const Error&) {
            throw Error("controlled_shift: shifted support leaves grid (half_width " + std::to_string(g.half_width) + ")");
        }
    }
    return out;
}

// Trigonometric interpolation of each line at y_k = e^r x_k. With
// psi(y) = sum_j psit_j exp(i y p_j / 2) dp / (2 sqrt(pi)) the sum over j is a
// scaled DFT with frequency e^r 2 pi / n.
WaveFunction squeeze(const WaveFunction& wf, std::size_t mode, double r) {
    if (r == 0) return wf;
    const ModeBasis original = wf.mode(mode).basis;
    WaveFunction mom = to_basis(wf, mode, ModeBasis::Momentum);
    const Grid& g = wf.mode(mode).grid;
    const std::size_t n = g.n_points;
    const double L = g.half_width, dx = g.spacing(), dp = g.momentum_spacing(), p0 = g.momentum(0);
    const double er = std::exp(r);
    const double pref = dp / (2 * std::sqrt(std::numbers::pi)) * std::exp(0.5 * r);
    const cplx global = std::polar(pref, -0.5 * er * L * p0);
    std::vector<cplx> pre(n), post(n);
    for (std::size_t j = 0; j < n; ++j) pre[j] = std::polar(1.0, -0.5 * er * L * dp * double(j));
    // Sample points e^r x_k outside [-L, L) would pick up periodic images; the
    // state vanishes there under the support rule.
    for (std::size_t k = 0; k < n; ++k) {
        const double src = er * g.point(k);
        post[k] = (src >= -L && src < L) ? global * std::polar(1.0, 0.5 * er * dx * p0 * double(k)) : cplx(0);
    }
    const double omega = er * 2 * std::numbers::pi / double(n);

    auto amps = mom.amplitudes();
    const std::size_t inner = mom.stride(mode), outer = amps.size() / (n * inner);
    std::vector<cplx> line(n);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < inner; ++i) {
            const std::size_t start = o * n * inner + i;
            for (std::size_t j = 0; j < n; ++j) line[j] = amps[start + j * inner] * pre[j];
            auto vals = fourier::scaled_dft(line, omega, n);
            for (std::size_t k = 0; k < n; ++k) amps[start + k * inner] = vals[k] * post[k];
        }
    }
    WaveFunction pos = mom.with_mode(mode, Mode{g, ModeBasis::Position}, std::move(amps));
    return to_basis(pos, mode, original);
}

WaveFunction controlled_rotation(const WaveFunction& state, const ControlFn& h, RotationOptions opts) {
    const std::size_t d = state.num_modes();
    if (d < 3) throw Error("controlled_rotation: need at least one control and two target modes");
    const std::size_t a = d - 2, b = d - 1;
    for (std::size_t c = 0; c < a; ++c)
        if (state.mode(c).basis != ModeBasis::Position) throw Error("controlled_rotation: control mode not in position basis");
    const ModeBasis ba = state.mode(a).basis, bb = state.mode(b).basis;
    WaveFunction w = to_basis(to_basis(state, a, ModeBasis::Momentum), b, ModeBasis::Momentum);

    const Grid& ga = w.mode(a).grid;
    const Grid& gb = w.mode(b).grid;
    const std::size_t na = ga.n_points, nb = gb.n_points;
    const std::size_t controls = w.size() / (na * nb);
    std::vector<double> pa(na), pb(nb);
    for (std::size_t j = 0; j < na; ++j) pa[j] = ga.momentum(j);
    for (std::size_t k = 0; k < nb; ++k) pb[k] = gb.momentum(k);

    auto amps = w.amplitudes();
    std::vector<std::size_t> idx(a, 0);
    std::vector<double> coords(a);
    std::vector<cplx> row(nb);
    for (std::size_t c = 0; c < controls; ++c) {
        for (std::size_t m = 0; m < a; ++m) coords[m] = w.mode(m).grid.point(idx[m]);
        const double hv = h(coords);
        for (std::size_t j = 0; j < na; ++j) {
            const double t = -hv * pa[j];
            cplx* dst = amps.data() + (c * na + j) * nb;
            for (std::size_t k = 0; k < nb; ++k) dst[k] *= std::polar(1.0, t * pb[k]);
        }
        for (std::size_t m = a; m-- > 0;) {
            if (++idx[m] < w.mode(m).grid.n_points) break;
            idx[m] = 0;
        }
    }
    WaveFunction out = to_basis(to_basis(w.with_amplitudes(std::move(amps)), a, ba), b, bb);
    if (opts.check_support) {
        WaveFunction pos = to_basis(to_basis(out, a, ModeBasis::Position), b, ModeBasis::Position);
        check_support(pos, "controlled_rotation: grid support violation after momentum broadening");
    }
    return out;
}

WaveFunction controlled_rotation(const WaveFunction& state, const std::function<double(double)>& h, RotationOptions opts) {
    if (state.num_modes() != 3) throw Error("controlled_rotation: expected a three-mode state");
    return controlled_rotation(state, ControlFn([&h](std::span<const double> x) { return h(x[0]); }), opts);
}

}  // namespace cvmc
