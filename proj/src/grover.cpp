#include "cvmc/grover.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cvmc/ampest.hpp"
#include "cvmc/encoder.hpp"
#include "cvmc/gates.hpp"

namespace cvmc {

GroverOperator::GroverOperator(IntegrandSpec spec, GroverOptions opts) : spec_(std::move(spec)), opts_(opts) {
    if (spec_.dim != 1) throw Error("GroverOperator: one data mode expected");
    anc_ = spec_.ancilla_grid.value_or(ancilla_grid_for(spec_));
    const WaveFunction v[] = {vacuum_state(spec_.grid), vacuum_state(anc_), vacuum_state(anc_)};
    vac_ = WaveFunction::tensor(v);
    const WaveFunction g = gaussian_state({0, spec_.ancilla_width(), spec_.r}, anc_);
    const WaveFunction parts[] = {prepare_p(spec_), g, g};
    prep_ = WaveFunction::tensor(parts).normalized();

    const cplx ov = inner_product(prep_, vac_);
    const cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1);
    house_u_ = add_scaled(vac_, -ph, prep_);
    const double uu = house_u_.norm_squared();
    house_scale_ = uu > 1e-28 ? 2 / uu : 0;

    chi_ = rotate(prep_.scaled(ph), 1);
    rotation_outer_mass_ = std::max(outer_mass(chi_, 1), outer_mass(chi_, 2));
}

WaveFunction GroverOperator::householder(const WaveFunction& state) const {
    if (house_scale_ == 0) return state;
    return add_scaled(state, -house_scale_ * inner_product(house_u_, state), house_u_);
}

WaveFunction GroverOperator::rotate(const WaveFunction& state, double sign) const {
    const IntegrandSpec& sp = spec_;
    return controlled_rotation(
        state, ControlFn([&sp, sign](std::span<const double> x) { return sign * sp.h_at(x); }), RotationOptions{false});
}

WaveFunction GroverOperator::apply_K(const WaveFunction& state) const { return rotate(householder(state), 1); }

WaveFunction GroverOperator::apply_K_dagger(const WaveFunction& state) const {
    return householder(rotate(state, -1));
}

WaveFunction GroverOperator::apply_Z(const WaveFunction& state) const {
    if (opts_.z.via_pbl || opts_.z.kind == ReflectionKind::VacuumViaPBL) return reflection_Z(state, opts_.z);
    return reflect_about(state, vac_);
}

WaveFunction GroverOperator::apply_V(const WaveFunction& state) const {
    return reflection_V(state, spec_.projector_width(), spec_.x_off, opts_.v_path);
}

WaveFunction GroverOperator::apply(const WaveFunction& state) const {
    WaveFunction w = state;
    for (int k = 0; k < 2; ++k) w = apply_K(apply_Z(apply_K_dagger(apply_V(w))));
    return w;
}

double GroverOperator::projector_probability() const {
    return measure_projector(chi_, spec_.projector_width(), spec_.x_off);
}

double GroverOperator::effective_integral() const { return 4 * std::numbers::pi * projector_probability(); }

double GroverOperator::theta() const { return theta_from_integral(effective_integral()); }

Eigen::Matrix2cd q_two_by_two(double theta, double phi) {
    Eigen::Matrix2cd m;
    const double c = std::cos(theta), s = std::sin(theta);
    m << c, s * std::polar(1.0, -phi), -s * std::polar(1.0, phi), c;
    return m;
}

SubspaceAnalysis analyze_subspace(const GroverOperator& q) {
    SubspaceAnalysis out;
    const WaveFunction& e0 = q.chi();
    const WaveFunction vchi = q.apply_V(e0);
    WaveFunction perp = add_scaled(vchi, -inner_product(e0, vchi), e0);
    if (perp.norm() < 1e-12) throw Error("analyze_subspace: V|chi> is parallel to |chi>");
    const WaveFunction e1 = perp.normalized();
    const WaveFunction* basis[] = {&e0, &e1};

    for (int j = 0; j < 2; ++j) {
        const WaveFunction qe = q.apply(*basis[j]);
        out.unitarity_error = std::max(out.unitarity_error, std::abs(qe.norm() - 1));
        WaveFunction rest = qe;
        for (int i = 0; i < 2; ++i) {
            const cplx c = inner_product(*basis[i], qe);
            out.matrix(i, j) = c;
            rest = add_scaled(rest, -c, *basis[i]);
        }
        out.residual = std::max(out.residual, rest.norm());
    }

    out.theta = q.theta();
    out.phi = std::arg(-out.matrix(1, 0));
    out.model = q_two_by_two(out.theta, out.phi);
    out.matrix_error = (out.matrix - out.model).cwiseAbs().maxCoeff();

    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(out.matrix);
    std::array<double, 2> ph{std::arg(es.eigenvalues()(0)), std::arg(es.eigenvalues()(1))};
    std::sort(ph.begin(), ph.end());
    out.eigenphases = ph;
    out.eigenphase_error = std::max(std::abs(ph[0] + out.theta), std::abs(ph[1] - out.theta));
    return out;
}

}  // namespace cvmc
