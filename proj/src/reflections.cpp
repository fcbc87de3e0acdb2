#include "cvmc/reflections.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cvmc/gates.hpp"
#include "cvmc/simd.hpp"

namespace cvmc {

void ReflectionSpec::validate() const {
    if (!(width > 0)) throw Error("reflection width must be positive");
    if (kind == ReflectionKind::VacuumViaPBL && !(r_max >= 0)) throw Error("VacuumViaPBL needs a squeeze cap r_max >= 0");
}

namespace {

bool in_window(double x, double x0, double width, double dx) {
    return std::abs(x - x0) <= 0.5 * width + 1e-9 * dx;
}

}  // namespace

WaveFunction pbl_reflection(const WaveFunction& state, std::size_t mode, double x0, double width) {
    if (mode >= state.num_modes()) throw Error("mode index out of range");
    const Mode& m = state.mode(mode);
    if (m.basis != ModeBasis::Position) throw Error("pbl_reflection: mode must be in position basis");
    const double dx = m.grid.spacing();
    if (width < 2 * dx) throw Error("pbl_reflection: window narrower than two grid spacings");
    std::vector<cplx> sign(m.grid.n_points);
    for (std::size_t k = 0; k < sign.size(); ++k) sign[k] = in_window(m.grid.point(k), x0, width, dx) ? -1.0 : 1.0;
    return multiply_along(state, mode, sign);
}

WaveFunction kickback_ancilla(const Grid& grid, double envelope_width) {
    WaveFunction env = gaussian_state({0, envelope_width, {}}, grid);
    auto amps = env.amplitudes();
    for (std::size_t k = 0; k < amps.size(); ++k) amps[k] *= std::polar(1.0, std::numbers::pi * grid.point(k));
    return env.with_amplitudes(std::move(amps)).normalized();
}

double kickback_phase_factor(double envelope_width) {
    return -std::exp(-1.0 / (4 * envelope_width * envelope_width));
}

WaveFunction pbl_reflection_kickback(const WaveFunction& state, std::size_t mode, double x0, double width,
                                     const Grid& ancilla_grid, double envelope_width) {
    if (mode >= state.num_modes()) throw Error("mode index out of range");
    const Mode& m = state.mode(mode);
    if (m.basis != ModeBasis::Position) throw Error("pbl_reflection: mode must be in position basis");
    const double dx = m.grid.spacing();
    if (width < 2 * dx) throw Error("pbl_reflection: window narrower than two grid spacings");
    const WaveFunction f = kickback_ancilla(ancilla_grid, envelope_width);
    const WaveFunction parts[] = {state, f};
    const std::size_t anc = state.num_modes();
    WaveFunction joint = to_momentum(WaveFunction::tensor(parts), anc);
    const std::size_t sel[] = {mode, anc};
    // exp(-i c(q) p_z): shifts the ancilla by the indicator value.
    const ModeBasis bases[] = {ModeBasis::Position, ModeBasis::Momentum};
    joint = apply_diagonal_phase(
        joint, sel, [&](std::span<const double> c) { return in_window(c[0], x0, width, dx) ? -0.5 * c[1] : 0.0; }, bases);
    joint = to_position(joint, anc);
    return partial_project(joint, anc, f);
}

WaveFunction reflect_about_product(const WaveFunction& state, std::span<const std::size_t> modes,
                                   std::span<const WaveFunction> kets) {
    if (modes.size() != kets.size() || modes.empty()) throw Error("reflect_about_product: need one ket per mode");
    std::vector<std::pair<std::size_t, const WaveFunction*>> order;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (modes[i] >= state.num_modes()) throw Error("mode index out of range");
        if (kets[i].num_modes() != 1 || !(kets[i].mode(0) == state.mode(modes[i])))
            throw Error("reflect_about_product: ket grid or basis mismatch");
        order.emplace_back(modes[i], &kets[i]);
    }
    std::sort(order.begin(), order.end(), [](auto& a, auto& b) { return a.first > b.first; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (order[i].first == order[i - 1].first) throw Error("reflect_about_product: repeated mode");

    WaveFunction coeff = state;
    for (auto& [m, ket] : order) coeff = partial_project(coeff, m, *ket);

    const std::size_t d = state.num_modes();
    std::vector<const WaveFunction*> ket_of(d, nullptr);
    for (auto& [m, ket] : order) ket_of[m] = ket;
    std::vector<std::size_t> rest_stride(d, 0);
    std::size_t s = 1;
    for (std::size_t m = d; m-- > 0;) {
        if (ket_of[m]) continue;
        rest_stride[m] = s;
        s *= state.mode(m).grid.n_points;
    }
    auto out = state.amplitudes();
    const auto& c = coeff.amplitudes();
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        std::size_t r = 0;
        cplx prod = 2.0;
        for (std::size_t m = 0; m < d; ++m) {
            if (ket_of[m]) prod *= (*ket_of[m])[idx[m]];
            else r += idx[m] * rest_stride[m];
        }
        out[flat] -= prod * c[r];
        for (std::size_t m = d; m-- > 0;) {
            if (++idx[m] < state.mode(m).grid.n_points) break;
            idx[m] = 0;
        }
    }
    return state.with_amplitudes(std::move(out));
}

WaveFunction reflect_about(const WaveFunction& state, const WaveFunction& ket) {
    const cplx c = inner_product(ket, state);
    return add_scaled(state, -2.0 * c, ket);
}

WaveFunction apply_mode_operator(const WaveFunction& state, std::size_t mode, const Eigen::MatrixXcd& op) {
    if (mode >= state.num_modes()) throw Error("mode index out of range");
    const std::size_t n = state.mode(mode).grid.n_points;
    if (std::size_t(op.rows()) != n || std::size_t(op.cols()) != n) throw Error("operator size does not match grid");
    auto amps = state.amplitudes();
    const std::size_t inner = state.stride(mode), outer = amps.size() / (n * inner);
    Eigen::VectorXcd line(n);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < inner; ++i) {
            const std::size_t start = o * n * inner + i;
            for (std::size_t k = 0; k < n; ++k) line[Eigen::Index(k)] = amps[start + k * inner];
            Eigen::VectorXcd res = op * line;
            for (std::size_t k = 0; k < n; ++k) amps[start + k * inner] = res[Eigen::Index(k)];
        }
    }
    return state.with_amplitudes(std::move(amps));
}

Eigen::MatrixXcd smeared_vacuum_projector(const Grid& grid, double width, int nodes) {
    if (!(width > 0)) throw Error("smeared projector width must be positive");
    const std::size_t n = grid.n_points;
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n));
    auto add_node = [&](double x, double w) {
        WaveFunction v = gaussian_state({x, vacuum_width(), {}}, grid);
        Eigen::VectorXcd col(n);
        for (std::size_t k = 0; k < n; ++k) col[Eigen::Index(k)] = v[k];
        op += (w * grid.spacing()) * col * col.adjoint();
    };
    // Gauss-Legendre on [-width/2, width/2], weights normalized by the width.
    auto run = [&](auto rule) {
        const auto& a = rule.abscissa();
        const auto& wt = rule.weights();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double w = 0.5 * wt[i];
            if (a[i] == 0) {
                add_node(0.0, w);
            } else {
                add_node(0.5 * width * a[i], w);
                add_node(-0.5 * width * a[i], w);
            }
        }
    };
    if (nodes <= 10) run(boost::math::quadrature::gauss<double, 10>());
    else if (nodes <= 20) run(boost::math::quadrature::gauss<double, 20>());
    else run(boost::math::quadrature::gauss<double, 30>());
    return op;
}

double pbl_squeezing_error(double width, double r_max) {
    return std::max(0.0, squeezing_from_width(width) - r_max);
}

WaveFunction vacuum_reflection(const WaveFunction& state, std::span<const std::size_t> modes,
                               const VacuumReflectionMethod& method) {
    for (std::size_t m : modes) {
        if (m >= state.num_modes()) throw Error("mode index out of range");
        if (state.mode(m).basis != ModeBasis::Position) throw Error("vacuum_reflection: mode must be in position basis");
    }
    if (method.method == VacuumMethod::Fock) {
        std::vector<WaveFunction> kets;
        for (std::size_t m : modes) kets.push_back(vacuum_state(state.mode(m).grid));
        return reflect_about_product(state, modes, kets);
    }
    if (!(method.r_max >= 0)) throw Error("vacuum_reflection: r_max must be non-negative");
    WaveFunction proj = state;
    for (std::size_t m : modes)
        proj = apply_mode_operator(proj, m, smeared_vacuum_projector(state.mode(m).grid, method.width, method.nodes));
    return add_scaled(state, -2.0, proj);
}

WaveFunction reflection_Z(const WaveFunction& state, const ReflectionSpec& spec) {
    spec.validate();
    std::vector<std::size_t> modes(state.num_modes());
    for (std::size_t m = 0; m < modes.size(); ++m) modes[m] = m;
    VacuumReflectionMethod method;
    if (spec.via_pbl || spec.kind == ReflectionKind::VacuumViaPBL) {
        method.method = VacuumMethod::ViaPBL;
        method.r_max = spec.r_max;
        method.width = spec.width;
    }
    return vacuum_reflection(state, modes, method);
}

WaveFunction reflection_V(const WaveFunction& state, double width, double x_off, VPath path) {
    if (state.num_modes() != 3) throw Error("reflection_V: expected a three-mode state");
    if (!(width > 0)) throw Error("reflection_V: width must be positive");
    for (std::size_t m = 1; m < 3; ++m)
        if (state.mode(m).basis != ModeBasis::Position) throw Error("reflection_V: ancilla modes must be in position basis");
    const std::size_t anc[] = {1, 2};
    if (path == VPath::Exact) {
        const WaveFunction kets[] = {gaussian_state({0, width, {}}, state.mode(1).grid),
                                     gaussian_state({x_off, width, {}}, state.mode(2).grid)};
        return reflect_about_product(state, anc, kets);
    }
    const double r = squeezing_from_width(width);
    WaveFunction w = displace(state, 2, -x_off);
    w = squeeze(squeeze(w, 1, -r), 2, -r);
    check_support(w, "reflection_V: support violation after anti-squeezing");
    w = vacuum_reflection(w, anc);
    w = squeeze(squeeze(w, 1, r), 2, r);
    return displace(w, 2, x_off);
}

}  // namespace cvmc
