#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvmc/ancilla.hpp"
#include "cvmc/gates.hpp"
#include "cvmc/philox.hpp"
#include "oracles.hpp"

using namespace cvmc;

TEST(Squeezing, WidthRelation) {
    EXPECT_NEAR(squeeze_relation(0), 0.70710678118654752, 1e-15);
    EXPECT_NEAR(squeeze_relation(10), std::exp(-10.0) / std::sqrt(2.0), 1e-20);
    EXPECT_NEAR(squeeze_relation(10), 3.211e-5, 1e-8);
    for (double s : {1e-5, 0.05, 0.3, 0.7071, 2.0}) EXPECT_NEAR(squeeze_relation(squeezing_from_width(s)), s, 1e-12 * s);
    EXPECT_THROW(squeezing_from_width(0), Error);
    EXPECT_THROW(squeezing_from_width(-1), Error);
}

TEST(GaussianParams, Consistency) {
    EXPECT_NO_THROW(GaussianParams::from_squeezing(1.5).validate());
    EXPECT_THROW((GaussianParams{0, 0.3, 2.0}.validate()), Error);
    EXPECT_THROW((GaussianParams{0, 0, {}}.validate()), Error);
}

TEST(GaussianState, VacuumIsNormalized) {
    const WaveFunction v = vacuum_state(make_grid(512, 12));
    EXPECT_NEAR(v.norm_squared(), 1.0, 1e-10);
    const WaveFunction g = gaussian_state({0, vacuum_width(), {}}, make_grid(512, 12));
    EXPECT_LT(max_abs_difference(v, g), 1e-14);
}

TEST(GaussianState, OverlapFormulaAndQuadrature) {
    const Grid g = make_grid(512, 12);
    const double s = 1, dx = 2, x0 = 1;
    const double formula = std::sqrt(2 * s * dx) / std::sqrt(dx * dx + s * s) * std::exp(-x0 * x0 / (2 * (dx * dx + s * s)));
    const double quad = oracle::quad_inf([&](double x) { return oracle::gaussian(x, 0, s) * oracle::gaussian(x, x0, dx); });
    EXPECT_NEAR(formula, quad, 1e-10);
    EXPECT_NEAR(gaussian_overlap(0, s, x0, dx), formula, 1e-12);
    EXPECT_NEAR(inner_product(gaussian_state({0, s, {}}, g), gaussian_state({x0, dx, {}}, g)).real(), formula, 1e-6);
    EXPECT_NEAR(gaussian_overlap(0.4, 0.6, 0.4, 0.6), 1.0, 1e-14);
}

TEST(GaussianState, SupportRule) {
    const Grid g = make_grid(128, 4);
    EXPECT_THROW(gaussian_state({2, 0.5, {}}, g), Error);
    EXPECT_THROW(gaussian_state({0, 1, {}}, g), Error);
    EXPECT_NO_THROW(gaussian_state({1.4, 0.5, {}}, g));
}

TEST(Displace, MatchesShiftedGaussian) {
    const Grid g = make_grid(256, 12);
    const WaveFunction moved = displace(gaussian_state({0, 0.9, {}}, g), 0, 2.25);
    EXPECT_NEAR(moved.norm_squared(), 1.0, 1e-10);
    EXPECT_LT(max_abs_difference(moved, gaussian_state({2.25, 0.9, {}}, g)), 1e-9);
}

TEST(ControlledShift, IdentityTranslationAdditivity) {
    const Grid g = make_grid(512, 12);
    const double s = 0.4, theta = 0.98;
    const WaveFunction psi = gaussian_state({0, s, {}}, g);
    EXPECT_LT(max_abs_difference(controlled_shift(psi, 0, 0.0), psi), 1e-14);
    EXPECT_LT(1 - fidelity(controlled_shift(psi, 0, theta), gaussian_state({theta, s, {}}, g)), 1e-8);
    WaveFunction step = psi;
    for (int k = 0; k < 7; ++k) step = controlled_shift(step, 0, theta);
    EXPECT_LT(max_abs_difference(step, controlled_shift(psi, 0, 7 * theta)), 1e-10);
}

TEST(ControlledShift, LeavingTheGridThrows) {
    const Grid g = make_grid(256, 8);
    EXPECT_THROW(controlled_shift(gaussian_state({0, 0.5, {}}, g), 0, 7.0), Error);
}

TEST(Squeeze, VacuumBecomesSqueezedGaussian) {
    const Grid g = make_grid(512, 12);
    for (double r : {-0.8, 0.5, 1.2}) {
        const WaveFunction sq = squeeze(vacuum_state(g), 0, r);
        EXPECT_NEAR(sq.norm_squared(), 1.0, 1e-10) << r;
        EXPECT_LT(max_abs_difference(sq, gaussian_state(GaussianParams::from_squeezing(r), g)), 1e-9) << r;
    }
}

TEST(Squeeze, InverseRestoresState) {
    const Grid g = make_grid(512, 12);
    const WaveFunction psi = gaussian_state({0.7, 0.9, {}}, g);
    EXPECT_LT(max_abs_difference(squeeze(squeeze(psi, 0, 0.6), 0, -0.6), psi), 1e-9);
}

namespace {

WaveFunction three_mode(const Grid& data, const Grid& anc, double s) {
    const WaveFunction parts[] = {gaussian_state({0, 0.7, {}}, data), gaussian_state({0, s, {}}, anc),
                                  gaussian_state({0, s, {}}, anc)};
    return WaveFunction::tensor(parts);
}

}  // namespace

TEST(ControlledRotation, ZeroCouplingIsIdentity) {
    const WaveFunction psi = three_mode(make_grid(16, 4), make_grid(64, 8), 0.7);
    EXPECT_LT(max_abs_difference(controlled_rotation(psi, [](double) { return 0.0; }), psi), 1e-12);
}

TEST(ControlledRotation, UnitaryAndInvertible) {
    const WaveFunction psi = three_mode(make_grid(16, 4), make_grid(256, 20), 0.7);
    auto h = [](double x) { return 0.3 + 0.02 * x * x; };
    const WaveFunction out = controlled_rotation(psi, h);
    EXPECT_NEAR(out.norm_squared(), 1.0, 1e-10);
    const WaveFunction back = controlled_rotation(out, [&](double x) { return -h(x); }, RotationOptions{false});
    EXPECT_LT(max_abs_difference(back, psi), 1e-10);
}

TEST(ControlledRotation, CommutesWithControlPhases) {
    const WaveFunction psi = three_mode(make_grid(16, 4), make_grid(128, 14), 0.7);
    auto h = [](double x) { return 0.1 + 0.01 * x * x; };
    auto phase = [](double x) { return 0.4 * x * x * x - x; };
    const WaveFunction a = apply_diagonal_phase(controlled_rotation(psi, h), 0, phase);
    const WaveFunction b = controlled_rotation(apply_diagonal_phase(psi, 0, phase), h);
    EXPECT_LT(max_abs_difference(a, b), 1e-8);
}

TEST(ControlledRotation, SupportViolationThrows) {
    const WaveFunction psi = three_mode(make_grid(8, 4), make_grid(64, 6), 0.3);
    EXPECT_THROW(controlled_rotation(psi, [](double) { return 5.0; }), Error);
    EXPECT_NO_THROW(controlled_rotation(psi, [](double) { return 5.0; }, RotationOptions{false}));
}

TEST(ControlledRotation, ControlsMustBeInPositionBasis) {
    const WaveFunction psi = to_momentum(three_mode(make_grid(8, 4), make_grid(64, 8), 0.7), 0);
    EXPECT_THROW(controlled_rotation(psi, [](double) { return 1.0; }), Error);
}

// Per control point, projecting both ancillas gives sqrt(p(x)) times the
// ancilla amplitude for h(x), which is checked against direct quadrature in momentum space.
TEST(ControlledRotation, ProjectedAmplitudeMatchesQuadrature) {
    const Grid data = make_grid(8, 2.4), anc = make_grid(256, 24);
    const double s = 0.6, x_off = 0.4;
    auto h = [](double x) { return 0.5 + x * x / 8; };
    const WaveFunction parts[] = {gaussian_state({0, 0.3, {}}, data), gaussian_state({0, s, {}}, anc),
                                  gaussian_state({0, s, {}}, anc)};
    const WaveFunction psi = WaveFunction::tensor(parts);
    const WaveFunction out = controlled_rotation(psi, h);
    const WaveFunction reduced =
        partial_project(partial_project(out, 2, gaussian_state({x_off, s, {}}, anc)), 1, gaussian_state({0, s, {}}, anc));
    const double w = 2 / s;  // momentum width of the kets
    for (std::size_t k = 0; k < data.n_points; ++k) {
        const double hv = h(data.point(k));
        // int int G_w(p2)^2 G_w(p3)^2 exp(i x_off p3 / 2) exp(-i h p2 p3)
        const double inner_re = oracle::quad(
            [&](double p3) {
                const double in = oracle::quad(
                    [&](double p2) { return std::pow(oracle::gaussian(p2, 0, w), 2) * std::cos(hv * p2 * p3); }, -12 * w,
                    12 * w);
                return std::pow(oracle::gaussian(p3, 0, w), 2) * in * std::cos(x_off * p3 / 2);
            },
            -12 * w, 12 * w);
        const cplx expected = parts[0][k] * inner_re;
        EXPECT_LT(std::abs(reduced[k] - expected), 1e-8 * std::abs(expected) + 1e-12) << k;
        EXPECT_NEAR(inner_re, ancilla_amplitude_closed_form(hv, s, s, s, s, x_off), 1e-9);
    }
}
