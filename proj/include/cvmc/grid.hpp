#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvmc {

using cplx = std::complex<double>;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Uniform symmetric grid on [-half_width, half_width); the right endpoint is
// the periodic image of the left one.
struct Grid {
    std::size_t n_points = 0;
    double half_width = 0;

    double spacing() const { return 2 * half_width / double(n_points); }
    double point(std::size_t k) const { return -half_width + double(k) * spacing(); }
    std::vector<double> points() const;

    // Conjugate grid under exp(-i q p / 2): dp = 4 pi / (n dx).
    double momentum_spacing() const;
    double momentum(std::size_t j) const { return (double(j) - double(n_points / 2)) * momentum_spacing(); }
    double momentum_half_width() const { return double(n_points / 2) * momentum_spacing(); }

    bool operator==(const Grid&) const = default;
};

Grid make_grid(std::size_t n_points, double half_width);

enum class ModeBasis { Position, Momentum };

struct Mode {
    Grid grid;
    ModeBasis basis = ModeBasis::Position;

    double coordinate(std::size_t k) const {
        return basis == ModeBasis::Position ? grid.point(k) : grid.momentum(k);
    }
    double measure() const {
        return basis == ModeBasis::Position ? grid.spacing() : grid.momentum_spacing();
    }
    bool operator==(const Mode&) const = default;
};

// Row-major amplitudes over the listed modes; value semantics, never mutated
// after construction. A zero-mode wavefunction holds a single scalar.
class WaveFunction {
  public:
    WaveFunction() = default;
    WaveFunction(std::vector<Mode> modes, std::vector<cplx> amplitudes);

    static WaveFunction single(const Grid& grid, std::vector<cplx> amplitudes,
                               ModeBasis basis = ModeBasis::Position);
    static WaveFunction tensor(std::span<const WaveFunction> factors);

    std::size_t num_modes() const { return modes_.size(); }
    const std::vector<Mode>& modes() const { return modes_; }
    const Mode& mode(std::size_t i) const { return modes_.at(i); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::size_t size() const { return amps_.size(); }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    // Stride of mode i in the flat amplitude array.
    std::size_t stride(std::size_t i) const;
    // Product of the current-basis spacings.
    double volume_element() const;
    double norm_squared() const { return norm_sq_; }
    double norm() const;

    WaveFunction with_amplitudes(std::vector<cplx> amplitudes) const;
    WaveFunction with_mode(std::size_t i, Mode m, std::vector<cplx> amplitudes) const;
    WaveFunction scaled(cplx factor) const;
    WaveFunction normalized() const;

  private:
    std::vector<Mode> modes_;
    std::vector<cplx> amps_;
    double norm_sq_ = 0;
};

std::size_t amplitude_count(std::span<const Mode> modes);

cplx inner_product(const WaveFunction& a, const WaveFunction& b);
double fidelity(const WaveFunction& a, const WaveFunction& b);
// a + alpha * b
WaveFunction add_scaled(const WaveFunction& a, cplx alpha, const WaveFunction& b);
double max_abs_difference(const WaveFunction& a, const WaveFunction& b);

WaveFunction to_momentum(const WaveFunction& wf, std::size_t mode);
WaveFunction to_position(const WaveFunction& wf, std::size_t mode);
WaveFunction to_basis(const WaveFunction& wf, std::size_t mode, ModeBasis basis);

using PhaseFn = std::function<double(std::span<const double>)>;

// Multiplies every amplitude by exp(i * phase_fn(coordinates of the listed modes)),
// each coordinate taken in the mode's current basis. When `bases` is given,
// each listed mode must be in the matching basis.
WaveFunction apply_diagonal_phase(const WaveFunction& wf, std::span<const std::size_t> modes,
                                  const PhaseFn& phase_fn, std::span<const ModeBasis> bases = {});
WaveFunction apply_diagonal_phase(const WaveFunction& wf, std::size_t mode,
                                  const std::function<double(double)>& phase_fn,
                                  std::optional<ModeBasis> basis = std::nullopt);
// Per-point complex factor on one mode; factors.size() == grid size.
WaveFunction multiply_along(const WaveFunction& wf, std::size_t mode, std::span<const cplx> factors);

// Contracts `mode` against a single-mode bra: out(...) = sum_x conj(bra(x)) wf(..., x, ...) dx.
WaveFunction partial_project(const WaveFunction& wf, std::size_t mode, const WaveFunction& bra);

// Reduced probability density of one mode, |amplitude|^2 marginalized over the others.
std::vector<double> marginal_density(const WaveFunction& wf, std::size_t mode);
double mean_coordinate(const WaveFunction& wf, std::size_t mode);

// Fraction of probability (relative to the total) in the outer `fraction` of
// the grid on each side of `mode`.
double outer_mass(const WaveFunction& wf, std::size_t mode, double fraction = 0.1);

struct SupportRule {
    double threshold = 1e-8;
    double outer_fraction = 0.1;
};
// Throws Error if any position-basis mode has too much mass near the boundary.
void check_support(const WaveFunction& wf, const std::string& context, SupportRule rule = {});

}  // namespace cvmc
