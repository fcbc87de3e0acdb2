#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvmc/grid.hpp"
#include "cvmc/polyfit.hpp"
#include "oracles.hpp"

using namespace cvmc;

namespace {

double sec7_f(double x) { return 1 / ((1 + x * x) * (1 + x * x)); }
double gauss_f(double x) { return std::exp(-x * x); }
double normal_pdf(double x, double s) { return std::exp(-x * x / (2 * s * s)) / (s * std::sqrt(2 * std::numbers::pi)); }

double scan_eps(const PolynomialApprox& h, double (*f)(double)) {
    double e = 0;
    for (int i = 0; i <= 200000; ++i) {
        const double x = h.domain.a + (h.domain.b - h.domain.a) * i / 200000.0;
        const double v = h(x);
        e = std::max(e, std::abs(f(x) - 1 / (v * v)));
    }
    return e;
}

}  // namespace

TEST(FitInverseSqrt, RecoversExactPolynomial) {
    const PolynomialApprox h = fit_inverse_sqrt(sec7_f, {-5, 5}, 2);
    ASSERT_EQ(h.degree(), 2);
    EXPECT_NEAR(h.coeffs[0], 1, 1e-12);
    EXPECT_NEAR(h.coeffs[1], 0, 1e-12);
    EXPECT_NEAR(h.coeffs[2], 1, 1e-12);
    EXPECT_LE(h.eps_h, 1e-12);
}

TEST(FitInverseSqrt, ConstantFunction) {
    const PolynomialApprox h = fit_inverse_sqrt([](double) { return 1.0; }, {-3, 3}, 0);
    ASSERT_EQ(h.degree(), 0);
    EXPECT_NEAR(h.coeffs[0], 1, 1e-15);
    EXPECT_LE(h.eps_h, 1e-15);
}

TEST(FitInverseSqrt, GaussianErrorDecreasesWithDegree) {
    double prev = 1e300;
    for (int d : {4, 6, 8, 10}) {
        const PolynomialApprox h = fit_inverse_sqrt(gauss_f, {-2, 2}, d);
        const double eps = scan_eps(h, gauss_f);
        EXPECT_GE(h.eps_h, eps - 1e-15) << d;
        EXPECT_LE(h.eps_h, eps * (1 + 1e-6) + 1e-15) << d;
        EXPECT_LT(eps, prev) << d;
        prev = eps;
        // 1/h^2 stays within 1 + eps_h where f <= 1
        for (int i = 0; i <= 1000; ++i) {
            const double x = -2 + 4 * i / 1000.0;
            EXPECT_LE(h.inverse_square(x), 1 + h.eps_h + 1e-12);
        }
    }
}

TEST(FitInverseSqrt, Preconditions) {
    EXPECT_THROW(fit_inverse_sqrt([](double x) { return x * x; }, {-1, 1}, 4), Error);
    EXPECT_THROW(fit_inverse_sqrt(gauss_f, {-2, 2}, -1), Error);
    EXPECT_THROW(fit_inverse_sqrt([](double) { return 1.5; }, {-1, 1}, 2), Error);
    EXPECT_THROW(fit_inverse_sqrt([](double) { return 1e-7; }, {-1, 1}, 2), Error);
}

TEST(TailError, WorkedIntegrandIsNegligible) {
    const PolynomialApprox h = fit_inverse_sqrt(sec7_f, {-5, 5}, 2);
    const TailError t = tail_error(h, sec7_f, [](double x) { return normal_pdf(x, 0.5); });
    EXPECT_LE(t.eta, 1e-10);
}

TEST(TailError, CompactDensityInsideDomain) {
    const PolynomialApprox h = fit_inverse_sqrt(gauss_f, {-2, 2}, 6);
    const TailError t = tail_error(h, gauss_f, [](double x) { return std::abs(x) <= 1 ? 0.5 : 0.0; });
    EXPECT_EQ(t.eta, 0.0);
}

TEST(TailError, GrowsWhenDomainShrinksAndMatchesOracle) {
    auto p = [](double x) { return normal_pdf(x, 1.0); };
    double prev = -1;
    for (double b : {2.0, 1.0}) {
        const PolynomialApprox h = fit_inverse_sqrt(gauss_f, {-b, b}, 6);
        const TailError t = tail_error(h, gauss_f, p);
        const double cap = 1 + h.eps_h;
        auto g = [&](double x) { return p(x) * std::abs(std::min(h.inverse_square(x), cap) - gauss_f(x)); };
        const double ref = oracle::quad(g, -40, -b) + oracle::quad(g, b, 40);
        EXPECT_NEAR(t.eta, ref, 1e-6 * ref) << b;
        EXPECT_GT(t.eta, prev);
        prev = t.eta;
    }
}

TEST(TotalErrorBound, SumAndBiasInequality) {
    PolynomialApprox manual;
    manual.eps_h = 1e-3;
    manual.eta = 1e-4;
    EXPECT_NEAR(total_error_bound(manual), 1.1e-3, 1e-18);

    auto p = [](double x) { return normal_pdf(x, 1.0); };
    for (int d : {4, 6, 8}) {
        const PolynomialApprox h = with_tail(fit_inverse_sqrt(gauss_f, {-2, 2}, d), gauss_f, p);
        const double encoded = oracle::quad([&](double x) { return p(x) * std::min(h.inverse_square(x), 1 + h.eps_h); }, -40, 40);
        const double target = oracle::quad([&](double x) { return p(x) * gauss_f(x); }, -40, 40);
        const double mass_in = oracle::quad(p, -2, 2);
        EXPECT_LE(std::abs(encoded - target), h.eps_h * mass_in + h.eta + 1e-12) << d;
        EXPECT_LE(h.eps_h * mass_in + h.eta, total_error_bound(h));
    }
    const PolynomialApprox exact = with_tail(fit_inverse_sqrt(sec7_f, {-5, 5}, 2), sec7_f, [](double x) { return normal_pdf(x, 0.5); });
    EXPECT_LE(total_error_bound(exact), 1e-10);
}

TEST(PolynomialJson, RoundTrip) {
    PolynomialApprox h = fit_inverse_sqrt(gauss_f, {-2, 2}, 4);
    h.eta = 3e-5;
    const nlohmann::json j = h;
    EXPECT_EQ(j.at("domain").size(), 2u);
    const PolynomialApprox back = j.get<PolynomialApprox>();
    EXPECT_EQ(back.coeffs, h.coeffs);
    EXPECT_EQ(back.domain.a, -2);
    EXPECT_EQ(back.eps_h, h.eps_h);
    EXPECT_EQ(back.eta, h.eta);
    EXPECT_THROW((nlohmann::json{{"coeffs", {1.0}}, {"domain", {1.0}}}.get<PolynomialApprox>()), Error);
}
