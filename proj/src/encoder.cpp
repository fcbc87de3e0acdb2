#include "cvmc/encoder.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <unordered_map>

#include "cvmc/gates.hpp"
#include "cvmc/quadrature.hpp"

namespace cvmc {

namespace {

constexpr double kGridLeakTarget = 1e-9;

// Calls fn(flat_index, coords) for every point of the data-mode grids.
template <class Fn>
void for_each_control(const WaveFunction& psi, Fn&& fn) {
    const std::size_t d = psi.num_modes();
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    for (std::size_t flat = 0; flat < psi.size(); ++flat) {
        for (std::size_t m = 0; m < d; ++m) x[m] = psi.mode(m).grid.point(idx[m]);
        fn(flat, std::span<const double>(x));
        for (std::size_t m = d; m-- > 0;) {
            if (++idx[m] < psi.mode(m).grid.n_points) break;
            idx[m] = 0;
        }
    }
}

double control_leakage(const WaveFunction& psi, const IntegrandSpec& spec, const AncillaResponse& resp) {
    std::unordered_map<double, double> memo;
    double leak = 0;
    const double vol = psi.volume_element();
    for_each_control(psi, [&](std::size_t flat, std::span<const double> x) {
        const double w = std::norm(psi[flat]) * vol;
        if (w < 1e-300) return;
        const double h = std::abs(spec.h_at(x));
        auto it = memo.find(h);
        if (it == memo.end()) it = memo.emplace(h, resp.leakage(h)).first;
        leak += w * it->second;
    });
    return leak;
}

double b_sq_engine(double h, double s_prep, double s_proj, double x_off) {
    const double a = ancilla_amplitude_closed_form(h, s_prep, s_prep, s_proj, s_proj, x_off);
    return h * h * a * a;
}

}  // namespace

WaveFunction prepare_p(const IntegrandSpec& spec) {
    if (spec.dim < 1 || spec.dim > 2) throw Error("prepare_p supports dimension 1 or 2");
    WaveFunction psi;
    if (spec.p.kind == PKind::Gaussian) {
        std::vector<WaveFunction> factors;
        for (int i = 0; i < spec.dim; ++i)
            factors.push_back(gaussian_state({spec.p.x0.at(std::size_t(i)), std::numbers::sqrt2 * spec.p.sigma.at(std::size_t(i)), {}},
                                             spec.grid));
        psi = WaveFunction::tensor(factors);
    } else {
        std::vector<Mode> modes(std::size_t(spec.dim), Mode{spec.grid, ModeBasis::Position});
        std::vector<cplx> amps(amplitude_count(modes));
        WaveFunction shape(modes, amps);
        for_each_control(shape, [&](std::size_t flat, std::span<const double> x) {
            const double v = spec.p(x);
            if (!(v >= 0) || !std::isfinite(v)) throw Error("prepare_p: density is negative or not finite");
            amps[flat] = std::sqrt(v);
        });
        psi = WaveFunction(modes, std::move(amps));
        if (!(psi.norm_squared() > 1e-12)) throw Error("prepare_p: density is not normalizable on the grid");
        psi = psi.normalized();
    }
    check_support(psi, "prepare_p");
    return psi;
}

Grid ancilla_grid_for(const IntegrandSpec& spec) {
    const double s = spec.ancilla_width(), sp = spec.projector_width();
    // Momentum spread of |ket|^2 has standard deviation sqrt(2)/s; six of them at 80% of the extent.
    const double p_need = 6 * std::numbers::sqrt2 / std::min(s, sp) / 0.8;
    const WaveFunction psi = prepare_p(spec);
    for (std::size_t n = 512; n <= (std::size_t(1) << 17); n *= 2) {
        const Grid g = make_grid(n, std::numbers::pi * double(n) / p_need);
        if (5 * std::max(s, sp) + std::abs(spec.x_off) > g.half_width) continue;
        const AncillaResponse resp = AncillaResponse::squeezed(g, s, sp, spec.x_off);
        if (control_leakage(psi, spec, resp) <= kGridLeakTarget) return g;
    }
    throw Error("ancilla_grid_for: no ancilla grid up to 2^17 points holds the rotated ancillas");
}

WaveFunction apply_K(const IntegrandSpec& spec, const Grid& ancilla_grid, const EncodeOptions& opts) {
    const WaveFunction psi = prepare_p(spec);
    if (psi.size() * ancilla_grid.n_points * ancilla_grid.n_points > opts.max_amplitudes)
        throw Error("apply_K: full-state memory guard exceeded");
    const double s = spec.ancilla_width();
    const WaveFunction anc = gaussian_state({0, s, spec.r}, ancilla_grid);
    const WaveFunction parts[] = {psi, anc, anc};
    WaveFunction state = WaveFunction::tensor(parts);
    return controlled_rotation(state, ControlFn([&spec](std::span<const double> x) { return spec.h_at(x); }));
}

WaveFunction project_ancillas(const WaveFunction& chi, double s_min, double x_off) {
    const std::size_t d = chi.num_modes();
    if (d < 3) throw Error("measure_projector: need two ancilla modes");
    for (std::size_t m = d - 2; m < d; ++m)
        if (chi.mode(m).basis != ModeBasis::Position) throw Error("measure_projector: ancillas must be in position basis");
    const WaveFunction b3 = gaussian_state({x_off, s_min, {}}, chi.mode(d - 1).grid);
    const WaveFunction b2 = gaussian_state({0, s_min, {}}, chi.mode(d - 2).grid);
    return partial_project(partial_project(chi, d - 1, b3), d - 2, b2);
}

double measure_projector(const WaveFunction& chi, double s_min, double x_off) {
    return std::min(1.0, project_ancillas(chi, s_min, x_off).norm_squared());
}

EncodingResult encode(const IntegrandSpec& spec, const EncodeOptions& opts) {
    const double s = spec.ancilla_width(), sp = spec.projector_width();
    EncodingResult res;
    res.ancilla_grid = spec.ancilla_grid ? *spec.ancilla_grid : ancilla_grid_for(spec);
    const AncillaResponse resp = AncillaResponse::squeezed(res.ancilla_grid, s, sp, spec.x_off);
    const WaveFunction psi = prepare_p(spec);

    res.leakage = control_leakage(psi, spec, resp);
    if (res.leakage >= opts.support_threshold)
        throw Error("encode: ancilla support rule violated (leaked mass " + std::to_string(res.leakage) + ")");

    if (opts.path == EncodePath::FullState) {
        res.chi = apply_K(spec, res.ancilla_grid, opts);
        res.reduced = project_ancillas(*res.chi, sp, spec.x_off);
    } else {
        std::unordered_map<double, cplx> memo;
        auto amps = psi.amplitudes();
        for_each_control(psi, [&](std::size_t flat, std::span<const double> x) {
            const double h = spec.h_at(x);
            auto it = memo.find(h);
            if (it == memo.end()) it = memo.emplace(h, resp.amplitude(h)).first;
            amps[flat] *= it->second;
        });
        res.reduced = psi.with_amplitudes(std::move(amps));
    }
    res.postselect_prob = std::min(1.0, res.reduced.norm_squared());
    res.calibration = calibration_constant(s, sp, spec.x_off);
    res.integral_estimate = res.postselect_prob / res.calibration;

    ErrorBudget& b = res.error_budget;
    if (spec.h) {
        b.eps_h = spec.h->eps_h;
        b.eta = spec.h->eta;
    }
    const double b1 = b_sq_engine(1.0, s, sp, spec.x_off);
    b.eps_sq = p_expectation(spec, [&](std::span<const double> x) {
        const double h = std::abs(spec.h_at(x));
        return std::abs(b_sq_engine(h, s, sp, spec.x_off) / b1 - 1) / (h * h);
    });
    double riemann = 0;
    const double vol = psi.volume_element();
    for_each_control(psi, [&](std::size_t flat, std::span<const double> x) {
        const double h = spec.h_at(x);
        riemann += std::norm(psi[flat]) * vol / (h * h);
    });
    const double ih = encoded_integral(spec);
    const double grid_a1 = std::norm(resp.amplitude(1.0)) / res.calibration;
    b.grid_tol = std::abs(riemann - ih) + std::abs(grid_a1 - 1) * ih + res.leakage;
    return res;
}

EncodingResult encode_multidim(const IntegrandSpec& spec, const EncodeOptions& opts) {
    if (spec.dim != 2) throw Error("encode_multidim: expected a two-dimensional integrand");
    if (spec.grid.n_points > 128) throw Error("encode_multidim: memory guard exceeded (per-mode grid above 128 points)");
    return encode(spec, opts);
}

double b_factor_from_h(double h, double s, double x_off) {
    if (h == 0) throw Error("b_factor: h(x1) = 0");
    if (!(s > 0)) throw Error("b_factor: s must be positive");
    const double h2 = h * h, s4 = s * s * s * s;
    return 4 * std::exp(-2 * s * s * x_off * x_off / (h2 + 4 * s4)) / (4 / h2 + 1 / s4);
}

double b_factor(double x1, double s, double x_off, const PolynomialApprox& h) {
    return b_factor_from_h(h(x1), s, x_off);
}

double b_integral_closed_form(double h, double s, double x_off) {
    const double k = h * h, s4 = s * s * s * s;
    return 4 * std::numbers::pi * s * s * k * std::exp(-s * s * x_off * x_off / (k * k + 4 * s4)) / std::sqrt(k * k + 4 * s4);
}

double b_factor_engine(double h, double s, double x_off) { return std::sqrt(b_sq_engine(std::abs(h), s, s, x_off)); }

double b_engine_limit_sq(double s) { return std::pow(s, 4) / 4; }

double squeezing_error_estimate(const IntegrandSpec& spec, double s) {
    if (!(s > 0)) throw Error("squeezing_error_estimate: s must be positive");
    const double inf_sq = b_engine_limit_sq(s);
    const double v = p_expectation(spec, [&](std::span<const double> x) {
        const double h = std::abs(spec.h_at(x));
        return std::abs(b_sq_engine(h, s, s, spec.x_off) - inf_sq) / (h * h);
    }, 1e-12);
    if (!std::isfinite(v)) throw Error("squeezing_error_estimate: divergent moment");
    return v;
}

double squeezing_error_scaling(const IntegrandSpec& spec, double s) {
    auto inv_h2 = [&](std::span<const double> x) {
        const double h = spec.h_at(x);
        return 1 / (h * h);
    };
    const double m1 = p_expectation(spec, inv_h2);
    const double m2 = p_expectation(spec, [&](std::span<const double> x) {
        const double v = inv_h2(x);
        return v * v;
    });
    return std::pow(s, 6) * (m2 - m1 * m1) * spec.x_off * spec.x_off;
}

}  // namespace cvmc
