#pragma once

#include <vector>

#include "cvmc/grid.hpp"

namespace cvmc {

// Closed-form ancilla amplitude <bra2, bra3| exp(-i h p2 p3) |ket2, ket3> for
// centred Gaussian kets of widths (a, b), bras of widths (c, d), and the
// second bra displaced by x_off.
double ancilla_amplitude_closed_form(double h, double a, double b, double c, double d, double x_off);
// |A(1)|^2 with equal preparation widths and equal projector widths.
double calibration_constant(double s_prep, double s_proj, double x_off);

// Response of the two ancilla modes to the controlled rotation, evaluated
// slice by slice. For a control value h the rotation is diagonal in (p2, p3), so
//   A(h) = sum_{p2} u(p2) sum_{p3} v(p3) exp(-i h p2 p3)
// with u = conj(bra2) ket2 dp and v = conj(bra3) ket3 dp on the momentum grids.
// This equals applying the gate to the full state and contracting both ancillas.
class AncillaResponse {
  public:
    AncillaResponse(const WaveFunction& ket2, const WaveFunction& ket3, const WaveFunction& bra2,
                    const WaveFunction& bra3);
    static AncillaResponse squeezed(const Grid& grid, double s_prep, double s_proj, double x_off);

    cplx amplitude(double h) const;
    // Fraction of ancilla probability pushed into the outer 10% of either
    // ancilla grid by the rotation (Gaussian model of the kets).
    double leakage(double h) const;

    const Grid& grid2() const { return g2_; }
    const Grid& grid3() const { return g3_; }

  private:
    Grid g2_, g3_;
    std::vector<cplx> u_, v_;
    std::vector<double> w2_, w3_;  // |ket(p)|^2 dp
    double width2_ = 0, width3_ = 0;
};

}  // namespace cvmc
