#include "cvmc/ancilla.hpp"

#include <cmath>
#include <numbers>

#include "cvmc/fourier.hpp"
#include "cvmc/gates.hpp"

namespace cvmc {

double ancilla_amplitude_closed_form(double h, double a, double b, double c, double d, double x_off) {
    const double a2 = (c * c + a * a) / 8, a3 = (d * d + b * b) / 8;
    const double beta = a3 + h * h / (4 * a2);
    const double pref = std::sqrt(a * b * c * d) / (4 * std::numbers::pi);
    return pref * std::numbers::pi / std::sqrt(a2 * beta) * std::exp(-x_off * x_off / (16 * beta));
}

double calibration_constant(double s_prep, double s_proj, double x_off) {
    const double amp = ancilla_amplitude_closed_form(1.0, s_prep, s_prep, s_proj, s_proj, x_off);
    return amp * amp;
}

namespace {

double width_from_density(const WaveFunction& ket) {
    const double mean = mean_coordinate(ket, 0);
    auto rho = marginal_density(ket, 0);
    double var = 0, tot = 0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        const double x = ket.mode(0).coordinate(k) - mean;
        var += rho[k] * x * x;
        tot += rho[k];
    }
    return std::sqrt(2 * var / tot);
}

double tail_beyond(double edge, double mu, double sigma) {
    const double k = 1 / (sigma * std::numbers::sqrt2);
    return 0.5 * std::erfc((edge - mu) * k) + 0.5 * std::erfc((edge + mu) * k);
}

}  // namespace

AncillaResponse::AncillaResponse(const WaveFunction& ket2, const WaveFunction& ket3, const WaveFunction& bra2,
                                 const WaveFunction& bra3) {
    for (const WaveFunction* w : {&ket2, &ket3, &bra2, &bra3})
        if (w->num_modes() != 1 || w->mode(0).basis != ModeBasis::Position)
            throw Error("ancilla states must be single-mode position-basis wavefunctions");
    if (!(ket2.mode(0) == bra2.mode(0)) || !(ket3.mode(0) == bra3.mode(0)))
        throw Error("ancilla bra and ket grids differ");
    g2_ = ket2.mode(0).grid;
    g3_ = ket3.mode(0).grid;
    width2_ = width_from_density(ket2);
    width3_ = width_from_density(ket3);
    auto k2 = to_momentum(ket2, 0), k3 = to_momentum(ket3, 0);
    auto b2 = to_momentum(bra2, 0), b3 = to_momentum(bra3, 0);
    const double dp2 = g2_.momentum_spacing(), dp3 = g3_.momentum_spacing();
    u_.resize(g2_.n_points);
    w2_.resize(g2_.n_points);
    for (std::size_t j = 0; j < u_.size(); ++j) {
        u_[j] = std::conj(b2[j]) * k2[j] * dp2;
        w2_[j] = std::norm(k2[j]) * dp2;
    }
    v_.resize(g3_.n_points);
    w3_.resize(g3_.n_points);
    for (std::size_t j = 0; j < v_.size(); ++j) {
        v_[j] = std::conj(b3[j]) * k3[j] * dp3;
        w3_[j] = std::norm(k3[j]) * dp3;
    }
}

AncillaResponse AncillaResponse::squeezed(const Grid& grid, double s_prep, double s_proj, double x_off) {
    return AncillaResponse(gaussian_state({0, s_prep, {}}, grid), gaussian_state({0, s_prep, {}}, grid),
                           gaussian_state({0, s_proj, {}}, grid), gaussian_state({x_off, s_proj, {}}, grid));
}

// With p2 = (m - c2) dp2 and p3 = (j - c3) dp3, kappa = h dp2 dp3:
//   exp(-i h p2 p3) = exp(-i kappa (m j - m c3 - c2 j + c2 c3)),
// so the inner sum over j is a scaled DFT of v_j exp(i kappa c2 j).
cplx AncillaResponse::amplitude(double h) const {
    const double dp2 = g2_.momentum_spacing(), dp3 = g3_.momentum_spacing();
    const double c2 = double(g2_.n_points / 2), c3 = double(g3_.n_points / 2);
    const double kappa = h * dp2 * dp3;
    std::vector<cplx> vv(v_.size());
    for (std::size_t j = 0; j < vv.size(); ++j) vv[j] = v_[j] * std::polar(1.0, kappa * c2 * double(j));
    auto w = fourier::scaled_dft(vv, -kappa, u_.size());
    cplx acc = 0;
    for (std::size_t m = 0; m < u_.size(); ++m) acc += u_[m] * std::polar(1.0, kappa * c3 * double(m)) * w[m];
    return acc * std::polar(1.0, -kappa * c2 * c3);
}

// exp(-i h p2 p3) shifts mode 3 by 2 h p2 at fixed p2 (and mode 2 by 2 h p3).
double AncillaResponse::leakage(double h) const {
    auto side = [h](const Grid& shifted, double width, const Grid& driver, const std::vector<double>& weights) {
        const double edge = 0.8 * shifted.half_width, sigma = width / std::numbers::sqrt2;
        double mass = 0;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            if (weights[j] < 1e-300) continue;
            mass += weights[j] * tail_beyond(edge, 2 * h * driver.momentum(j), sigma);
        }
        return mass;
    };
    return std::max(side(g3_, width3_, g2_, w2_), side(g2_, width2_, g3_, w3_));
}

}  // namespace cvmc
