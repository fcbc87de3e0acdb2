#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvmc/gates.hpp"
#include "cvmc/grid.hpp"
#include "cvmc/philox.hpp"
#include "oracles.hpp"

using namespace cvmc;

namespace {

WaveFunction random_state(const std::vector<Grid>& grids, std::uint64_t seed) {
    std::vector<Mode> modes;
    for (const auto& g : grids) modes.push_back({g, ModeBasis::Position});
    std::vector<cplx> a(amplitude_count(modes));
    CounterRng rng(seed);
    for (auto& z : a) z = {rng.normal(), rng.normal()};
    return WaveFunction(modes, a).normalized();
}

}  // namespace

TEST(Grid, SpacingAndPoints) {
    const Grid g = make_grid(8, 4.0);
    EXPECT_DOUBLE_EQ(g.spacing(), 1.0);
    const auto pts = g.points();
    ASSERT_EQ(pts.size(), 8u);
    for (int k = 0; k < 8; ++k) EXPECT_DOUBLE_EQ(pts[std::size_t(k)], -4.0 + k);
    EXPECT_DOUBLE_EQ(make_grid(256, 10.0).spacing(), 0.078125);
}

TEST(Grid, RejectsBadSizes) {
    try {
        make_grid(7, 4.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "n_points must be a power of two");
    }
    EXPECT_THROW(make_grid(4, 1.0), Error);
    EXPECT_THROW(make_grid(16, 0.0), Error);
    EXPECT_THROW(make_grid(16, -1.0), Error);
}

TEST(Grid, MomentumGridIsConjugate) {
    const Grid g = make_grid(64, 8.0);
    EXPECT_NEAR(g.momentum_spacing() * g.spacing() * 64, 4 * std::numbers::pi, 1e-12);
    EXPECT_DOUBLE_EQ(g.momentum(32), 0.0);
}

TEST(WaveFunction, AmplitudeCountMustMatch) {
    const Grid g = make_grid(8, 4.0);
    EXPECT_THROW(WaveFunction({{g, ModeBasis::Position}}, std::vector<cplx>(7)), Error);
}

TEST(InnerProduct, VacuumIsNormalized) {
    const WaveFunction v = vacuum_state(make_grid(512, 12));
    EXPECT_NEAR(std::abs(inner_product(v, v) - 1.0), 0.0, 1e-10);
}

TEST(InnerProduct, DisplacedGaussiansMatchQuadrature) {
    const Grid g = make_grid(512, 12);
    const WaveFunction a = gaussian_state({0, 1, {}}, g), b = gaussian_state({2, 1, {}}, g);
    const double ref = oracle::quad_inf([](double x) { return oracle::gaussian(x, 0, 1) * oracle::gaussian(x, 2, 1); });
    EXPECT_NEAR(ref, std::exp(-1.0), 1e-10);
    EXPECT_NEAR(inner_product(a, b).real(), ref, 1e-6);
    EXPECT_NEAR(inner_product(a, b).imag(), 0.0, 1e-12);
}

TEST(InnerProduct, FarApartGaussiansAreOrthogonal) {
    const Grid g = make_grid(512, 12);
    const WaveFunction a = gaussian_state({-6, 0.5, {}}, g), b = gaussian_state({6, 0.5, {}}, g);
    EXPECT_LT(std::abs(inner_product(a, b)), 1e-10);
}

TEST(InnerProduct, MismatchedStructureThrows) {
    const WaveFunction a = vacuum_state(make_grid(64, 8)), b = vacuum_state(make_grid(128, 8));
    EXPECT_THROW(inner_product(a, b), Error);
    EXPECT_THROW(inner_product(a, to_momentum(a, 0)), Error);
}

TEST(InnerProduct, SesquilinearOnRandomStates) {
    const std::vector<Grid> grids{make_grid(16, 4), make_grid(8, 3)};
    const WaveFunction a = random_state(grids, 1), b = random_state(grids, 2), c = random_state(grids, 3);
    const cplx alpha(0.3, -1.2), beta(-0.7, 0.4);
    const WaveFunction bc = add_scaled(b.scaled(alpha), beta, c);
    EXPECT_LT(std::abs(inner_product(a, bc) - (alpha * inner_product(a, b) + beta * inner_product(a, c))), 1e-12);
    const WaveFunction ab = add_scaled(a.scaled(alpha), beta, b);
    EXPECT_LT(std::abs(inner_product(ab, c) - (std::conj(alpha) * inner_product(a, c) + std::conj(beta) * inner_product(b, c))),
              1e-12);
}

TEST(Fourier, RoundTripIsIdentity) {
    const WaveFunction psi = random_state({make_grid(64, 6), make_grid(32, 4)}, 7);
    for (std::size_t m = 0; m < 2; ++m) {
        const WaveFunction back = to_position(to_momentum(psi, m), m);
        EXPECT_LT(max_abs_difference(back, psi), 1e-10);
    }
    EXPECT_THROW(to_position(psi, 0), Error);
    EXPECT_THROW(to_momentum(to_momentum(psi, 1), 1), Error);
}

TEST(Fourier, ParsevalInBothBases) {
    const WaveFunction psi = random_state({make_grid(128, 6)}, 11).scaled(1.7);
    const WaveFunction phi = to_momentum(psi, 0);
    double sx = 0, sp = 0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        sx += std::norm(psi[k]) * psi.mode(0).grid.spacing();
        sp += std::norm(phi[k]) * phi.mode(0).grid.momentum_spacing();
    }
    EXPECT_NEAR(sx, psi.norm_squared(), 1e-10);
    EXPECT_NEAR(sp, sx, 1e-10);
}

TEST(Fourier, GaussianMapsToWidthTwoOverS) {
    const Grid g = make_grid(512, 12);
    const double s = 0.8;
    const WaveFunction phi = to_momentum(gaussian_state({0, s, {}}, g), 0);
    for (std::size_t j : {200u, 240u, 256u, 270u, 300u}) {
        const double p = g.momentum(j);
        const cplx ref = oracle::momentum_amplitude([&](double q) { return oracle::gaussian(q, 0, s); }, p, -12, 12);
        EXPECT_LT(std::abs(phi[j] - ref), 1e-8) << "p = " << p;
        EXPECT_NEAR(ref.real(), oracle::gaussian(p, 0, 2 / s), 1e-10);
    }
}

TEST(Fourier, ShiftTheorem) {
    const Grid g = make_grid(256, 12);
    const double a = 1.3;
    const WaveFunction psi = gaussian_state({0, 0.9, {}}, g), moved = gaussian_state({a, 0.9, {}}, g);
    const WaveFunction p0 = to_momentum(psi, 0), p1 = to_momentum(moved, 0);
    for (std::size_t j = 96; j < 160; j += 8) {
        const cplx expected = p0[j] * std::polar(1.0, -a * g.momentum(j) / 2);
        EXPECT_LT(std::abs(p1[j] - expected), 1e-9);
    }
}

TEST(DiagonalPhase, ZeroAndPiAndCubic) {
    const Grid g = make_grid(256, 10);
    const WaveFunction psi = gaussian_state({0.5, 0.8, {}}, g);
    EXPECT_LT(max_abs_difference(apply_diagonal_phase(psi, 0, [](double) { return 0.0; }), psi), 1e-15);
    EXPECT_LT(max_abs_difference(apply_diagonal_phase(psi, 0, [](double) { return std::numbers::pi; }), psi.scaled(-1.0)),
              1e-14);
    const WaveFunction cubic = apply_diagonal_phase(psi, 0, [](double x) { return 0.7 * x * x * x; });
    EXPECT_NEAR(cubic.norm_squared(), 1.0, 1e-10);
}

TEST(DiagonalPhase, WrongBasisThrows) {
    const WaveFunction psi = to_momentum(vacuum_state(make_grid(64, 8)), 0);
    const std::size_t modes[] = {0};
    const ModeBasis want[] = {ModeBasis::Position};
    EXPECT_THROW(apply_diagonal_phase(psi, modes, [](std::span<const double>) { return 0.0; }, want), Error);
    EXPECT_THROW(apply_diagonal_phase(psi, 0, [](double) { return 0.0; }, ModeBasis::Position), Error);
    EXPECT_NO_THROW(apply_diagonal_phase(psi, 0, [](double) { return 0.0; }, ModeBasis::Momentum));
}

TEST(PartialProject, VacuumOntoVacuum) {
    const Grid g = make_grid(256, 10);
    const WaveFunction v = vacuum_state(g);
    const WaveFunction parts[] = {v, v};
    const WaveFunction rest = partial_project(WaveFunction::tensor(parts), 1, v);
    EXPECT_EQ(rest.num_modes(), 1u);
    EXPECT_NEAR(rest.norm_squared(), 1.0, 1e-10);
    EXPECT_LT(max_abs_difference(rest, v), 1e-12);
}

TEST(PartialProject, ProbabilityMatchesOverlapSquared) {
    const Grid g = make_grid(512, 12);
    const WaveFunction parts[] = {gaussian_state({0, 1, {}}, g), gaussian_state({2, 1, {}}, g)};
    const WaveFunction rest = partial_project(WaveFunction::tensor(parts), 1, gaussian_state({0, 1, {}}, g));
    const double ov = oracle::quad_inf([](double x) { return oracle::gaussian(x, 0, 1) * oracle::gaussian(x, 2, 1); });
    EXPECT_NEAR(rest.norm_squared(), ov * ov, 1e-6);
    EXPECT_NEAR(rest.norm_squared(), std::exp(-2.0), 1e-6);
}

TEST(PartialProject, FarBraGivesNothing) {
    const Grid g = make_grid(512, 12);
    const WaveFunction parts[] = {vacuum_state(g), gaussian_state({-6, 0.5, {}}, g)};
    const WaveFunction rest = partial_project(WaveFunction::tensor(parts), 1, gaussian_state({6, 0.5, {}}, g));
    EXPECT_LT(rest.norm_squared(), 1e-10);
}

TEST(PartialProject, MismatchThrows) {
    const Grid g = make_grid(64, 8);
    const WaveFunction parts[] = {vacuum_state(g), vacuum_state(g)};
    const WaveFunction two = WaveFunction::tensor(parts);
    EXPECT_THROW(partial_project(two, 1, vacuum_state(make_grid(128, 8))), Error);
    EXPECT_THROW(partial_project(two, 1, two), Error);
}

TEST(Support, CheckFlagsBoundaryMass) {
    const Grid g = make_grid(256, 6);
    EXPECT_NO_THROW(check_support(gaussian_state({0, 0.7, {}}, g), "centred"));
    const WaveFunction wide = WaveFunction::single(g, std::vector<cplx>(256, cplx(1))).normalized();
    EXPECT_THROW(check_support(wide, "flat"), Error);
    EXPECT_NEAR(outer_mass(wide, 0), 0.2, 0.01);
}

TEST(Marginals, MeanOfDisplacedGaussian) {
    const Grid g = make_grid(256, 10);
    const WaveFunction parts[] = {gaussian_state({1.5, 0.6, {}}, g), vacuum_state(g)};
    const WaveFunction psi = WaveFunction::tensor(parts);
    EXPECT_NEAR(mean_coordinate(psi, 0), 1.5, 1e-10);
    EXPECT_NEAR(mean_coordinate(psi, 1), 0.0, 1e-10);
    double total = 0;
    for (double r : marginal_density(psi, 0)) total += r * g.spacing();
    EXPECT_NEAR(total, 1.0, 1e-10);
}
