#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

namespace cvmc {

struct Interval {
    double a = 0;
    double b = 0;
    bool contains(double x) const { return x >= a && x <= b; }
};

using RealFn = std::function<double(double)>;

struct PolynomialApprox {
    std::vector<double> coeffs;  // ascending powers
    Interval domain;
    double eps_h = 0;
    double eta = 0;
    // Set when tail_error had to cap 1/h^2 at 1 + eps_h somewhere outside the domain.
    bool tail_capped = false;

    int degree() const { return int(coeffs.size()) - 1; }
    double operator()(double x) const;
    double inverse_square(double x) const;
};

PolynomialApprox fit_inverse_sqrt(const RealFn& f, Interval domain, int degree);
// max |f - 1/h^2| over `samples` evenly spaced points of the domain.
double certify_eps(const PolynomialApprox& h, const RealFn& f, int samples = 10000);

struct TailError {
    double eta = 0;
    double quad_error = 0;
    bool capped = false;
};
// int over the complement of the domain of p |min(1/h^2, 1 + eps_h) - f|.
TailError tail_error(const PolynomialApprox& h, const RealFn& f, const RealFn& p, double rel_tol = 1e-6);
// Returns h with eta (and the cap flag) filled in.
PolynomialApprox with_tail(PolynomialApprox h, const RealFn& f, const RealFn& p);

double total_error_bound(const PolynomialApprox& h);

void to_json(nlohmann::json& j, const PolynomialApprox& h);
void from_json(const nlohmann::json& j, PolynomialApprox& h);

}  // namespace cvmc
