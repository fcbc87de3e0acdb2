#include "cvmc/integrand.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cvmc/quadrature.hpp"

namespace cvmc {

namespace {

double normal_pdf(double x, double mu, double sigma) {
    const double u = (x - mu) / sigma;
    return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2 * std::numbers::pi));
}

double poly_eval(const std::vector<double>& c, double x) {
    double v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

double radius_sq(std::span<const double> x) {
    double r = 0;
    for (double v : x) r += v * v;
    return r;
}

}  // namespace

double Density::operator()(std::span<const double> x) const {
    if (kind == PKind::Custom) return custom(x);
    double v = 1;
    for (std::size_t i = 0; i < x.size(); ++i) v *= normal_pdf(x[i], x0.at(i), sigma.at(i));
    return v;
}

Density bimodal_density(double c1, double s1, double c2, double s2, double w1) {
    Density d;
    d.kind = PKind::Custom;
    d.custom = [=](std::span<const double> x) {
        return w1 * normal_pdf(x[0], c1, s1) + (1 - w1) * normal_pdf(x[0], c2, s2);
    };
    d.params = {{"name", "bimodal"}, {"centers", {c1, c2}}, {"sigmas", {s1, s2}}, {"weights", {w1, 1 - w1}}};
    return d;
}

double IntegrandSpec::h_at(std::span<const double> x) const {
    if (h_multi) return h_multi(x);
    if (h) return (*h)(x[0]);
    throw Error("integrand has no h");
}

RealFn IntegrandSpec::f1() const {
    return [f = f](double x) { return f(std::span<const double>(&x, 1)); };
}

RealFn IntegrandSpec::p1() const {
    return [p = p](double x) { return p(x); };
}

namespace {

// Bounds for quadrature of p-weighted integrals along one axis.
std::pair<double, double> axis_range(const IntegrandSpec& s, int axis) {
    if (s.p.kind == PKind::Gaussian) {
        const double mu = s.p.x0.at(std::size_t(axis)), sg = s.p.sigma.at(std::size_t(axis));
        return {mu - 16 * sg, mu + 16 * sg};
    }
    return {-s.grid.half_width, s.grid.half_width};
}

double weighted_integral(const IntegrandSpec& s, const MultiFn& g, double rel_tol) {
    if (s.dim == 1) {
        auto [a, b] = axis_range(s, 0);
        auto fn = [&](double x) { return s.p(x) * g(std::span<const double>(&x, 1)); };
        if (s.p.kind == PKind::Custom) {
            const double inf = std::numeric_limits<double>::infinity();
            return integrate(fn, -inf, inf, rel_tol).value;
        }
        return integrate(fn, a, b, rel_tol).value;
    }
    if (s.dim == 2) {
        auto [ax, bx] = axis_range(s, 0);
        auto [ay, by] = axis_range(s, 1);
        return integrate_2d(
                   [&](double x, double y) {
                       const double v[] = {x, y};
                       return s.p(v) * g(v);
                   },
                   ax, bx, ay, by, rel_tol)
            .value;
    }
    throw Error("quadrature reference supports dim 1 or 2");
}

}  // namespace

void IntegrandSpec::validate() const {
    if (dim < 1) throw Error("integrand dimension must be positive");
    if (!f) throw Error("integrand has no f");
    if (!h && !h_multi) throw Error("integrand has no h");
    if (p.kind == PKind::Gaussian && (p.x0.size() != std::size_t(dim) || p.sigma.size() != std::size_t(dim)))
        throw Error("gaussian density parameters do not match the dimension");
    const double mass = weighted_integral(*this, [](std::span<const double>) { return 1.0; }, 1e-10);
    if (std::abs(mass - 1) > 1e-6) throw Error("density does not integrate to 1 (got " + std::to_string(mass) + ")");
    const std::size_t step = dim == 1 ? 1 : std::max<std::size_t>(1, grid.n_points / 128);
    std::vector<double> x(static_cast<std::size_t>(dim));
    auto check = [&]() {
        const double v = f(x);
        if (!(v >= 0 && v <= 1 + 1e-12)) throw Error("f must lie in [0, 1] on the grid");
    };
    if (dim == 1) {
        for (std::size_t k = 0; k < grid.n_points; ++k) {
            x[0] = grid.point(k);
            check();
        }
    } else {
        for (std::size_t i = 0; i < grid.n_points; i += step)
            for (std::size_t k = 0; k < grid.n_points; k += step) {
                x[0] = grid.point(i);
                x[1] = grid.point(k);
                std::fill(x.begin() + 2, x.end(), 0.0);
                check();
            }
    }
}

IntegrandSpec sec7_spec() {
    IntegrandSpec s;
    s.dim = 1;
    s.p.kind = PKind::Gaussian;
    s.p.x0 = {0.0};
    s.p.sigma = {0.5};
    s.f = [](std::span<const double> x) {
        const double q = 1 + radius_sq(x);
        return 1 / (q * q);
    };
    s.f_json = {{"kind", "builtin"}, {"params", {{"name", "sec7"}, {"scale", 1.0}}}};
    PolynomialApprox h;
    h.coeffs = {1.0, 0.0, 1.0};
    h.domain = {-5.0, 5.0};
    s.h = h;
    s.grid = make_grid(512, 12.0);
    return s;
}

IntegrandSpec scale_f(const IntegrandSpec& spec, double scale) {
    if (!(scale > 0 && scale <= 1)) throw Error("f scale must lie in (0, 1]");
    IntegrandSpec s = spec;
    s.f = [f = spec.f, scale](std::span<const double> x) { return scale * f(x); };
    if (s.f_json.contains("params")) s.f_json["params"]["scale"] = s.f_json["params"].value("scale", 1.0) * scale;
    const double k = 1 / std::sqrt(scale);
    if (s.h) {
        for (auto& c : s.h->coeffs) c *= k;
    }
    if (s.h_multi) s.h_multi = [g = spec.h_multi, k](std::span<const double> x) { return k * g(x); };
    return s;
}

IntegrandSpec constant_f_spec(IntegrandSpec base) {
    base.f = [](std::span<const double>) { return 1.0; };
    base.f_json = {{"kind", "builtin"}, {"params", {{"name", "one"}, {"scale", 1.0}}}};
    PolynomialApprox h;
    h.coeffs = {1.0};
    h.domain = {-base.grid.half_width, base.grid.half_width};
    base.h = h;
    base.h_multi = nullptr;
    return base;
}

double p_expectation(const IntegrandSpec& spec, const MultiFn& g, double rel_tol) {
    return weighted_integral(spec, g, rel_tol);
}

double reference_integral(const IntegrandSpec& spec) { return weighted_integral(spec, spec.f, 1e-12); }

double encoded_integral(const IntegrandSpec& spec) {
    return weighted_integral(spec, [&](std::span<const double> x) {
        const double v = spec.h_at(x);
        return 1 / (v * v);
    }, 1e-12);
}

namespace {

Grid grid_from_json(const nlohmann::json& j) {
    return make_grid(j.at("n_points").get<std::size_t>(), j.at("half_width").get<double>());
}

nlohmann::json grid_to_json(const Grid& g) { return {{"n_points", g.n_points}, {"half_width", g.half_width}}; }

void load_f(IntegrandSpec& s, const nlohmann::json& fj) {
    const std::string kind = fj.at("kind");
    const auto& prm = fj.contains("params") ? fj.at("params") : nlohmann::json::object();
    const double scale = prm.value("scale", 1.0);
    s.f_json = fj;
    if (kind == "builtin") {
        const std::string name = prm.value("name", "sec7");
        if (name == "sec7") {
            s.f = [scale](std::span<const double> x) {
                const double q = 1 + radius_sq(x);
                return scale / (q * q);
            };
            const double k = 1 / std::sqrt(scale);
            if (s.dim == 1) {
                PolynomialApprox h;
                h.coeffs = {k, 0.0, k};
                h.domain = {-s.grid.half_width, s.grid.half_width};
                s.h = h;
            } else {
                s.h_multi = [k](std::span<const double> x) { return k * (1 + radius_sq(x)); };
            }
        } else if (name == "one") {
            s.f = [scale](std::span<const double>) { return scale; };
            const double k = 1 / std::sqrt(scale);
            if (s.dim == 1) {
                PolynomialApprox h;
                h.coeffs = {k};
                h.domain = {-s.grid.half_width, s.grid.half_width};
                s.h = h;
            } else {
                s.h_multi = [k](std::span<const double>) { return k; };
            }
        } else if (name == "gaussian") {
            const double a = prm.value("a", 1.0);
            s.f = [scale, a](std::span<const double> x) { return scale * std::exp(-a * radius_sq(x)); };
        } else {
            throw Error("unknown builtin f: " + name);
        }
    } else if (kind == "poly-ratio") {
        auto num = prm.at("num").get<std::vector<double>>();
        auto den = prm.at("den").get<std::vector<double>>();
        s.f = [num, den, scale](std::span<const double> x) { return scale * poly_eval(num, x[0]) / poly_eval(den, x[0]); };
    } else {
        throw Error("unknown f kind: " + kind);
    }
}

}  // namespace

IntegrandSpec spec_from_json(const nlohmann::json& j) {
    IntegrandSpec s;
    s.dim = j.value("dim", 1);
    if (j.contains("grid")) s.grid = grid_from_json(j.at("grid"));
    if (j.contains("ancilla_grid")) s.ancilla_grid = grid_from_json(j.at("ancilla_grid"));
    s.x_off = j.value("x_off", 0.0);
    s.r = j.value("r", 0.0);
    if (j.contains("s_min")) s.s_min = j.at("s_min").get<double>();

    const auto& pj = j.at("p");
    const std::string pk = pj.at("kind");
    const auto& pp = pj.contains("params") ? pj.at("params") : nlohmann::json::object();
    if (pk == "gaussian") {
        s.p.kind = PKind::Gaussian;
        s.p.x0 = pp.value("x0", std::vector<double>(std::size_t(s.dim), 0.0));
        s.p.sigma = pp.value("sigma", std::vector<double>(std::size_t(s.dim), 0.5));
    } else if (pk == "custom") {
        const std::string name = pp.value("name", "bimodal");
        if (name != "bimodal") throw Error("unknown custom density: " + name);
        auto c = pp.at("centers").get<std::vector<double>>();
        auto sg = pp.at("sigmas").get<std::vector<double>>();
        auto w = pp.at("weights").get<std::vector<double>>();
        s.p = bimodal_density(c.at(0), sg.at(0), c.at(1), sg.at(1), w.at(0));
    } else {
        throw Error("unknown p kind: " + pk);
    }

    load_f(s, j.at("f"));
    if (j.contains("h")) {
        const auto& hj = j.at("h");
        if (hj.contains("coeffs")) {
            s.h = hj.get<PolynomialApprox>();
        } else if (hj.value("kind", "") == "fit") {
            auto d = hj.at("domain").get<std::vector<double>>();
            s.h = fit_inverse_sqrt(s.f1(), {d.at(0), d.at(1)}, hj.at("degree").get<int>());
        }
    }
    if (s.dim == 1 && s.h && s.h->eta == 0) *s.h = with_tail(*s.h, s.f1(), s.p1());
    s.validate();
    return s;
}

nlohmann::json spec_to_json(const IntegrandSpec& s) {
    nlohmann::json j;
    j["dim"] = s.dim;
    if (s.p.kind == PKind::Gaussian) j["p"] = {{"kind", "gaussian"}, {"params", {{"x0", s.p.x0}, {"sigma", s.p.sigma}}}};
    else j["p"] = {{"kind", "custom"}, {"params", s.p.params}};
    j["f"] = s.f_json;
    if (s.h) j["h"] = *s.h;
    j["x_off"] = s.x_off;
    j["r"] = s.r;
    if (s.s_min) j["s_min"] = *s.s_min;
    j["grid"] = grid_to_json(s.grid);
    if (s.ancilla_grid) j["ancilla_grid"] = grid_to_json(*s.ancilla_grid);
    return j;
}

}  // namespace cvmc
