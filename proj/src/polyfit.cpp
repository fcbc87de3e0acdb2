#include "cvmc/polyfit.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cvmc/grid.hpp"
#include "cvmc/quadrature.hpp"

namespace cvmc {

double PolynomialApprox::operator()(double x) const {
    double v = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
    return v;
}

double PolynomialApprox::inverse_square(double x) const {
    const double v = (*this)(x);
    return 1 / (v * v);
}

namespace {

constexpr double kFMin = 1e-6;

std::vector<double> dense(Interval d, int samples) {
    std::vector<double> xs(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) xs[std::size_t(i)] = d.a + (d.b - d.a) * double(i) / double(samples - 1);
    return xs;
}

// Polynomial (ascending) arithmetic for the Chebyshev-to-monomial change of basis.
std::vector<double> times_linear(const std::vector<double>& p, double slope, double offset) {
    std::vector<double> out(p.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        out[k] += offset * p[k];
        out[k + 1] += slope * p[k];
    }
    return out;
}

}  // namespace

PolynomialApprox fit_inverse_sqrt(const RealFn& f, Interval domain, int degree) {
    if (degree < 0) throw Error("fit_inverse_sqrt: degree must be non-negative");
    if (!(domain.b > domain.a)) throw Error("fit_inverse_sqrt: empty domain");
    double fmin = std::numeric_limits<double>::infinity(), fmax = -fmin;
    for (double x : dense(domain, 10000)) {
        const double v = f(x);
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
    }
    if (fmax > 1 + 1e-12 || fmin < 0) throw Error("fit_inverse_sqrt: f must lie in [0, 1] on the domain");
    if (fmin < kFMin) throw Error("fit_inverse_sqrt: f_min below 1e-6 on the domain; shrink the domain");

    const int terms = degree + 1;
    const int nodes = std::max(4 * terms, 64);
    const double half = 0.5 * (domain.b - domain.a), mid = 0.5 * (domain.a + domain.b);
    Eigen::MatrixXd A(nodes, terms);
    Eigen::VectorXd y(nodes);
    for (int i = 0; i < nodes; ++i) {
        const double t = std::cos(std::numbers::pi * (i + 0.5) / nodes);
        y[i] = 1 / std::sqrt(f(mid + half * t));
        double t0 = 1, t1 = t;
        A(i, 0) = 1;
        if (terms > 1) A(i, 1) = t;
        for (int k = 2; k < terms; ++k) {
            const double t2 = 2 * t * t1 - t0;
            A(i, k) = t2;
            t0 = t1;
            t1 = t2;
        }
    }
    Eigen::VectorXd cheb = A.colPivHouseholderQr().solve(y);

    // t = slope * x + offset
    const double slope = 1 / half, offset = -mid / half;
    std::vector<double> tkm1{1.0}, tk = times_linear(tkm1, slope, offset);
    std::vector<double> coeffs(std::size_t(terms), 0.0);
    coeffs[0] += cheb[0];
    if (terms > 1)
        for (std::size_t k = 0; k < tk.size(); ++k) coeffs[k] += cheb[1] * tk[k];
    for (int k = 2; k < terms; ++k) {
        std::vector<double> next = times_linear(tk, 2 * slope, 2 * offset);
        for (std::size_t i = 0; i < tkm1.size(); ++i) next[i] -= tkm1[i];
        for (std::size_t i = 0; i < next.size(); ++i) coeffs[i] += cheb[k] * next[i];
        tkm1 = std::move(tk);
        tk = std::move(next);
    }

    PolynomialApprox h;
    h.coeffs = std::move(coeffs);
    h.domain = domain;
    h.eps_h = certify_eps(h, f);
    if (!std::isfinite(h.eps_h)) throw Error("fit_inverse_sqrt: fitted polynomial vanishes on the domain");
    return h;
}

double certify_eps(const PolynomialApprox& h, const RealFn& f, int samples) {
    const std::vector<double> xs = dense(h.domain, samples);
    std::vector<double> err(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = h(xs[i]);
        if (v == 0) return std::numeric_limits<double>::infinity();
        err[i] = std::abs(f(xs[i]) - 1 / (v * v));
    }
    double eps = *std::max_element(err.begin(), err.end());
    // Polish each interior local maximum of the scan; the extremum usually falls between samples.
    auto neg_err = [&](double x) {
        const double v = h(x);
        return -std::abs(f(x) - 1 / (v * v));
    };
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        if (err[i] < err[i - 1] || err[i] < err[i + 1] || err[i] < 0.5 * eps) continue;
        const auto best = boost::math::tools::brent_find_minima(neg_err, xs[i - 1], xs[i + 1], 52);
        if (!std::isfinite(best.second)) return std::numeric_limits<double>::infinity();
        eps = std::max(eps, -best.second);
    }
    return eps;
}

TailError tail_error(const PolynomialApprox& h, const RealFn& f, const RealFn& p, double rel_tol) {
    const double cap = 1 + h.eps_h;
    bool capped = false;
    auto integrand = [&](double x) {
        const double px = p(x);
        if (px == 0) return 0.0;
        double inv = h.inverse_square(x);
        if (!(inv <= cap)) {
            inv = cap;
            capped = true;
        }
        return px * std::abs(inv - f(x));
    };
    const double inf = std::numeric_limits<double>::infinity();
    QuadResult left = integrate(integrand, -inf, h.domain.a, rel_tol, 20);
    QuadResult right = integrate(integrand, h.domain.b, inf, rel_tol, 20);
    TailError out{left.value + right.value, left.error + right.error, capped};
    if (!std::isfinite(out.eta) || out.quad_error > std::max(1e3 * rel_tol * out.eta, 1e-14))
        throw Error("tail_error: quadrature did not converge");
    return out;
}

PolynomialApprox with_tail(PolynomialApprox h, const RealFn& f, const RealFn& p) {
    TailError t = tail_error(h, f, p);
    h.eta = t.eta;
    h.tail_capped = t.capped;
    return h;
}

double total_error_bound(const PolynomialApprox& h) { return h.eps_h + h.eta; }

void to_json(nlohmann::json& j, const PolynomialApprox& h) {
    j = nlohmann::json{{"coeffs", h.coeffs}, {"domain", {h.domain.a, h.domain.b}}, {"eps_h", h.eps_h}, {"eta", h.eta}};
}

void from_json(const nlohmann::json& j, PolynomialApprox& h) {
    h.coeffs = j.at("coeffs").get<std::vector<double>>();
    auto d = j.at("domain").get<std::vector<double>>();
    if (d.size() != 2) throw Error("polynomial domain must be [a, b]");
    h.domain = {d[0], d[1]};
    h.eps_h = j.value("eps_h", 0.0);
    h.eta = j.value("eta", 0.0);
}

}  // namespace cvmc
