#pragma once

#include <Eigen/Dense>

#include <array>

#include "cvmc/grid.hpp"
#include "cvmc/integrand.hpp"
#include "cvmc/reflections.hpp"

namespace cvmc {

struct GroverOptions {
    // Z3 reflection; kind VacuumViaPBL (or via_pbl) selects the smeared-projector path.
    ReflectionSpec z{ReflectionKind::Z3};
    VPath v_path = VPath::Exact;
};

// Q = K Z K^dag V K Z K^dag V on the three-mode grid (data, ancilla, ancilla).
// K is realized as the controlled rotation after a Householder map taking
// the grid vacuum onto prep x G x G, so K Z K^dag = I - 2|chi><chi| exactly.
class GroverOperator {
  public:
    explicit GroverOperator(IntegrandSpec spec, GroverOptions opts = {});

    const IntegrandSpec& spec() const { return spec_; }
    const Grid& ancilla_grid() const { return anc_; }
    const WaveFunction& chi() const { return chi_; }
    const WaveFunction& vacuum() const { return vac_; }

    WaveFunction apply_K(const WaveFunction& state) const;
    WaveFunction apply_K_dagger(const WaveFunction& state) const;
    WaveFunction apply_Z(const WaveFunction& state) const;
    WaveFunction apply_V(const WaveFunction& state) const;
    WaveFunction apply(const WaveFunction& state) const;

    // <chi| P |chi> for the squeezed projector of V.
    double projector_probability() const;
    // 4 pi <chi|P|chi>: the integral for which cos(theta/2) = 1 - I/(2 pi).
    double effective_integral() const;
    double theta() const;
    // Largest outer-grid mass of the ancillas after the rotation (support report).
    double rotation_outer_mass() const { return rotation_outer_mass_; }

  private:
    WaveFunction householder(const WaveFunction& state) const;
    WaveFunction rotate(const WaveFunction& state, double sign) const;

    IntegrandSpec spec_;
    GroverOptions opts_;
    Grid anc_;
    WaveFunction vac_;
    WaveFunction prep_;
    WaveFunction chi_;
    WaveFunction house_u_;
    double house_scale_ = 0;
    double rotation_outer_mass_ = 0;
};

// [[cos t, sin t e^{-i phi}], [-sin t e^{i phi}, cos t]]
Eigen::Matrix2cd q_two_by_two(double theta, double phi);

struct SubspaceAnalysis {
    // Norm of the parts of Q|chi> and Q|chi_perp> outside span{chi, V chi}.
    double residual = 0;
    Eigen::Matrix2cd matrix;
    Eigen::Matrix2cd model;
    double theta = 0;
    double phi = 0;
    double matrix_error = 0;
    std::array<double, 2> eigenphases{};
    double eigenphase_error = 0;
    double unitarity_error = 0;
};

SubspaceAnalysis analyze_subspace(const GroverOperator& q);

}  // namespace cvmc
