#pragma once

#include <functional>
#include <optional>
#include <span>

#include "cvmc/grid.hpp"

namespace cvmc {

// Width s of a squeezed vacuum for squeezing factor r, and its inverse.
double squeeze_relation(double r);
double squeezing_from_width(double s);
double vacuum_width();

struct GaussianParams {
    double x0 = 0;
    double s = 0;
    std::optional<double> r;

    static GaussianParams from_squeezing(double r, double x0 = 0);
    void validate() const;
};

// s^{-1/2} pi^{-1/4} exp(-(x-x0)^2 / (2 s^2)), renormalized on the grid.
WaveFunction gaussian_state(const GaussianParams& params, const Grid& grid);
WaveFunction vacuum_state(const Grid& grid);
// Closed-form overlap <G_{y,s}|G_{x0,dx}>.
double gaussian_overlap(double y, double s, double x0, double dx);

// Position shift of one mode by `amount`, realized as the momentum phase exp(-i amount p / 2).
WaveFunction displace(const WaveFunction& wf, std::size_t mode, double amount);
WaveFunction controlled_shift(const WaveFunction& wf, std::size_t phase_mode, double amount);

// psi(x) -> e^{r/2} psi(e^r x) on one mode, by band-limited interpolation. Positive r narrows.
WaveFunction squeeze(const WaveFunction& wf, std::size_t mode, double r);

// Coupling function of the control coordinates for the controlled rotation.
using ControlFn = std::function<double(std::span<const double>)>;

struct RotationOptions {
    bool check_support = true;
};

// exp(-i h(q_controls) p_a p_b) where the two target modes are the last two
// modes of the state and every earlier mode is a control in the position basis.
WaveFunction controlled_rotation(const WaveFunction& state, const ControlFn& h, RotationOptions opts = {});
WaveFunction controlled_rotation(const WaveFunction& state, const std::function<double(double)>& h,
                                 RotationOptions opts = {});

}  // namespace cvmc
