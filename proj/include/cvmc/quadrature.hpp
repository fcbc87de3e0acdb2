#pragma once

#include <functional>

namespace cvmc {

struct QuadResult {
    double value = 0;
    double error = 0;
};

// Adaptive Gauss-Kronrod; either bound may be infinite.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-10,
                     unsigned max_depth = 20);
// Iterated 1-D rule over a rectangle.
QuadResult integrate_2d(const std::function<double(double, double)>& f, double ax, double bx, double ay, double by,
                        double rel_tol = 1e-9);

}  // namespace cvmc
