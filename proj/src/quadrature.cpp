#include "cvmc/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace cvmc {

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, unsigned max_depth) {
    double err = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel_tol, &err);
    return {v, err};
}

QuadResult integrate_2d(const std::function<double(double, double)>& f, double ax, double bx, double ay, double by,
                        double rel_tol) {
    double inner_err = 0;
    auto outer = [&](double x) {
        QuadResult r = integrate([&](double y) { return f(x, y); }, ay, by, rel_tol, 15);
        inner_err = std::max(inner_err, r.error);
        return r.value;
    };
    QuadResult r = integrate(outer, ax, bx, rel_tol, 15);
    r.error += inner_err * std::abs(bx - ax);
    return r;
}

}  // namespace cvmc
