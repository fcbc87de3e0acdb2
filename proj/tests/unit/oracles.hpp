#pragma once

// Test-side reference functions, computed independently of the library.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/hermite.hpp>

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

inline double gaussian(double x, double x0, double s) {
    return std::exp(-(x - x0) * (x - x0) / (2 * s * s)) / (std::sqrt(s) * std::pow(std::numbers::pi, 0.25));
}

// Normalized Hermite function of order n for the width-s Gaussian ground state.
inline double hermite_function(unsigned n, double x, double s) {
    const double t = x / s;
    const double norm = 1 / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(std::numbers::pi) * s);
    return norm * boost::math::hermite(n, t) * std::exp(-t * t / 2);
}

template <class F>
double quad(F f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

template <class F>
double quad_inf(F f) {
    return quad(f, -40.0, 40.0);
}

// Continuum transform under exp(-i q p / 2) / (2 sqrt(pi)) of a real, even-or-not function.
template <class F>
std::complex<double> momentum_amplitude(F psi, double p, double lo, double hi) {
    const double re = quad([&](double q) { return psi(q) * std::cos(q * p / 2); }, lo, hi);
    const double im = quad([&](double q) { return -psi(q) * std::sin(q * p / 2); }, lo, hi);
    return std::complex<double>(re, im) / (2 * std::sqrt(std::numbers::pi));
}

}  // namespace oracle
