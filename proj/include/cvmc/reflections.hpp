#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "cvmc/grid.hpp"

namespace cvmc {

enum class ReflectionKind { PBL, VacuumFock, VacuumViaPBL, Z3, V };

struct ReflectionSpec {
    ReflectionKind kind = ReflectionKind::VacuumFock;
    double x0 = 0;
    double width = 0.05;
    double x_off = 0;
    double r_max = 0;
    // Path used for Z3: exact rank-1 subtraction unless set.
    bool via_pbl = false;

    void validate() const;
};

// I - 2 P_window on one position-basis mode; window |x - x0| <= width / 2 on grid points.
WaveFunction pbl_reflection(const WaveFunction& state, std::size_t mode, double x0, double width);

// The same reflection through an ancilla: shift the ancilla by the window
// indicator, then contract the ancilla with its initial state. The ancilla is
// exp(i pi y) under a Gaussian envelope of the given width.
WaveFunction pbl_reflection_kickback(const WaveFunction& state, std::size_t mode, double x0, double width,
                                     const Grid& ancilla_grid, double envelope_width = 8.0);
WaveFunction kickback_ancilla(const Grid& grid, double envelope_width);
// <f| D(1) |f> for the enveloped ancilla in the continuum: -exp(-1 / (4 s^2)).
double kickback_phase_factor(double envelope_width);

// I - 2 (|k_1><k_1| x ... x |k_m><k_m|) on the listed modes; kets single-mode and normalized.
WaveFunction reflect_about_product(const WaveFunction& state, std::span<const std::size_t> modes,
                                   std::span<const WaveFunction> kets);
// I - 2 |k><k| for a normalized ket with the state's full mode structure.
WaveFunction reflect_about(const WaveFunction& state, const WaveFunction& ket);

// Dense linear map on one mode's grid amplitudes.
WaveFunction apply_mode_operator(const WaveFunction& state, std::size_t mode, const Eigen::MatrixXcd& op);

enum class VacuumMethod { Fock, ViaPBL };

struct VacuumReflectionMethod {
    VacuumMethod method = VacuumMethod::Fock;
    double r_max = 0;
    double width = 0.05;
    int nodes = 20;
};

WaveFunction vacuum_reflection(const WaveFunction& state, std::span<const std::size_t> modes,
                               const VacuumReflectionMethod& method = {});
// (1/width) int_{-width/2}^{width/2} D(x)|vac><vac|D(x)^dagger dx as a grid matrix (includes the grid measure).
Eigen::MatrixXcd smeared_vacuum_projector(const Grid& grid, double width, int nodes = 20);
// Squeezing shortfall |r_width - r_max| when r_max does not reach the width.
double pbl_squeezing_error(double width, double r_max);

WaveFunction reflection_Z(const WaveFunction& state, const ReflectionSpec& spec);

enum class VPath { Exact, Composite };
WaveFunction reflection_V(const WaveFunction& state, double width, double x_off, VPath path = VPath::Exact);

}  // namespace cvmc
