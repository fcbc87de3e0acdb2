#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvmc/gates.hpp"
#include "cvmc/grid.hpp"
#include "cvmc/polyfit.hpp"

namespace cvmc {

using MultiFn = std::function<double(std::span<const double>)>;

enum class PKind { Gaussian, Custom };

struct Density {
    PKind kind = PKind::Gaussian;
    std::vector<double> x0{0.0};
    std::vector<double> sigma{0.5};
    MultiFn custom;
    nlohmann::json params;  // serialized form of a custom density

    double operator()(std::span<const double> x) const;
    double operator()(double x) const { return (*this)(std::span<const double>(&x, 1)); }
};

// Named two-component Gaussian mixture, the built-in Custom density.
Density bimodal_density(double c1, double s1, double c2, double s2, double w1);

struct IntegrandSpec {
    int dim = 1;
    Density p;
    MultiFn f;
    nlohmann::json f_json;
    // 1-D polynomial h; for dim >= 2 the multivariate handle is used instead.
    std::optional<PolynomialApprox> h;
    MultiFn h_multi;
    double x_off = 0;
    double r = 0;                  // ancilla squeezing
    std::optional<double> s_min;   // projector width; defaults to the ancilla width
    Grid grid{512, 12.0};
    std::optional<Grid> ancilla_grid;

    double ancilla_width() const { return squeeze_relation(r); }
    double projector_width() const { return s_min.value_or(ancilla_width()); }
    double h_at(std::span<const double> x) const;
    double h_at(double x) const { return h_at(std::span<const double>(&x, 1)); }
    double f_at(double x) const { return f(std::span<const double>(&x, 1)); }
    RealFn f1() const;
    RealFn p1() const;

    // Checks int p = 1 to 1e-6 and 0 <= f <= 1 on a dense scan; throws Error otherwise.
    void validate() const;
};

// The worked example: p Gaussian (0, 1/2), f = 1/(1+x^2)^2, h = 1 + x^2.
IntegrandSpec sec7_spec();
// f -> scale * f with h rescaled to match (exact, no refit).
IntegrandSpec scale_f(const IntegrandSpec& spec, double scale);
// f = 1, h = 1.
IntegrandSpec constant_f_spec(IntegrandSpec base);

// int p(x) g(x) dx by adaptive quadrature (dim 1 or 2).
double p_expectation(const IntegrandSpec& spec, const MultiFn& g, double rel_tol = 1e-10);
// Quadrature reference int p f (1-D or 2-D).
double reference_integral(const IntegrandSpec& spec);
// Quadrature of int p / h^2 (what the encoding actually measures).
double encoded_integral(const IntegrandSpec& spec);

IntegrandSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const IntegrandSpec& spec);

}  // namespace cvmc
