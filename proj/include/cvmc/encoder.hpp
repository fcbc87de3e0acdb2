#pragma once

#include <cstddef>
#include <optional>

#include "cvmc/ancilla.hpp"
#include "cvmc/grid.hpp"
#include "cvmc/integrand.hpp"
#include "cvmc/polyfit.hpp"

namespace cvmc {

struct ErrorBudget {
    double eps_h = 0;
    double eta = 0;
    // Squeezing bias of the calibrated estimate, int p/h^2 |B^2(h)/B^2(1) - 1|.
    double eps_sq = 0;
    // Grid consistency: Riemann-sum error, ancilla grid vs closed form, leakage.
    double grid_tol = 0;

    double total() const { return eps_h + eta + eps_sq + grid_tol; }
};

struct EncodingResult {
    // Full (n+2)-mode state; only populated on the full-state path.
    std::optional<WaveFunction> chi;
    double postselect_prob = 0;
    // Data-mode amplitudes after contracting the ancillas (unnormalized).
    WaveFunction reduced;
    double integral_estimate = 0;
    double calibration = 0;
    Grid ancilla_grid;
    ErrorBudget error_budget;
    double leakage = 0;

    WaveFunction reduced_normalized() const { return reduced.normalized(); }
};

enum class EncodePath { Sliced, FullState };

struct EncodeOptions {
    EncodePath path = EncodePath::Sliced;
    // Cap on the number of amplitudes of any full-state allocation.
    std::size_t max_amplitudes = std::size_t(1) << 24;
    double support_threshold = 1e-8;
};

WaveFunction prepare_p(const IntegrandSpec& spec);

// Smallest power-of-two ancilla grid (>= 512 points) holding both the
// momentum spread of the squeezed ancillas and the rotation-induced position
// spread for this integrand.
Grid ancilla_grid_for(const IntegrandSpec& spec);

// (G x S(r) x S(r))|vac> followed by the controlled rotation, as one state.
WaveFunction apply_K(const IntegrandSpec& spec, const Grid& ancilla_grid, const EncodeOptions& opts = {});
// Contracts the last two modes with G_{0,s_min} and G_{x_off,s_min}.
WaveFunction project_ancillas(const WaveFunction& chi, double s_min, double x_off);
double measure_projector(const WaveFunction& chi, double s_min, double x_off);

EncodingResult encode(const IntegrandSpec& spec, const EncodeOptions& opts = {});
EncodingResult encode_multidim(const IntegrandSpec& spec, const EncodeOptions& opts = {});

// Closed form for the B factor as written for the squeezed-projector overlap.
double b_factor(double x1, double s, double x_off, const PolynomialApprox& h);
double b_factor_from_h(double h_value, double s, double x_off);
// Closed form of the defining four-dimensional Gaussian integral of B.
double b_integral_closed_form(double h_value, double s, double x_off);
// |h| |A(h)| for the engine's rotation and projector; its square tends to s^4/4.
double b_factor_engine(double h_value, double s, double x_off);
double b_engine_limit_sq(double s);

// int p / h^2 |B_engine^2 - B_inf^2|.
double squeezing_error_estimate(const IntegrandSpec& spec, double s);
// s^6 Var_p[1/h^2] x_off^2, the scaling form of the same quantity.
double squeezing_error_scaling(const IntegrandSpec& spec, double s);

}  // namespace cvmc
