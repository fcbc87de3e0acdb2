#include "cvmc/ampest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cvmc/gates.hpp"
#include "cvmc/philox.hpp"

namespace cvmc {

double theta_from_integral(double integral) {
    const double c = 1 - integral / (2 * std::numbers::pi);
    if (!(c >= -1 && c <= 1)) throw Error("theta_from_integral: 1 - I/(2 pi) outside [-1, 1]");
    return 2 * std::acos(c);
}

double integral_from_theta(double theta) {
    return 2 * std::numbers::pi * (1 - std::cos(theta / 2));
}

void PhaseEstimationPlan::validate() const {
    if (M < 1) throw Error("plan: M must be positive");
    if (L < 1) throw Error("plan: L must be positive");
    if (!(s > 0)) throw Error("plan: s must be positive");
    if (!(eps_Q >= 0)) throw Error("plan: eps_Q must be non-negative");
    if (!(eps_target > 0)) throw Error("plan: eps_target must be positive");
    if (!(confidence > 0 && confidence < 1)) throw Error("plan: confidence must lie in (0, 1)");
}

PhaseEstimationPlan PhaseEstimationPlan::with_auto_repetitions() const {
    PhaseEstimationPlan p = *this;
    p.L = repetitions_needed(confidence, success_probability(*this));
    return p;
}

void to_json(nlohmann::json& j, const PhaseEstimationPlan& p) {
    j = nlohmann::json{{"M", p.M},           {"L", p.L},
                       {"s", p.s},           {"eps_Q", p.eps_Q},
                       {"eps_target", p.eps_target}, {"confidence", p.confidence},
                       {"seed", p.seed}};
}

void from_json(const nlohmann::json& j, PhaseEstimationPlan& p) {
    p.M = j.value("M", 1);
    p.L = j.value("L", 0);
    if (j.contains("s")) p.s = j.at("s").get<double>();
    else if (j.contains("r")) p.s = squeeze_relation(j.at("r").get<double>());
    p.eps_Q = j.value("eps_Q", 0.0);
    p.eps_target = j.value("eps_target", 1e-3);
    p.confidence = j.value("confidence", 0.995);
    p.seed = j.value("seed", std::uint64_t(0));
    if (p.L == 0) {
        p.L = 1;
        p = p.with_auto_repetitions();
    }
    p.validate();
}

std::vector<double> PhaseSampleSet::estimates() const {
    std::vector<double> e(samples.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = samples[i] / double(M);
    return e;
}

double phase_spread(const PhaseEstimationPlan& plan) {
    const double me = double(plan.M) * plan.eps_Q;
    return std::sqrt((me * me + plan.s * plan.s) / 2);
}

PhaseSampleSet sample_phase(const PhaseEstimationPlan& plan, double theta, std::uint64_t seed) {
    plan.validate();
    PhaseSampleSet set;
    set.M = plan.M;
    set.samples.resize(std::size_t(plan.L));
    const double mean = double(plan.M) * theta, sd = phase_spread(plan);
    // One stream per draw so any draw can be regenerated independently.
    for (std::size_t j = 0; j < set.samples.size(); ++j) set.samples[j] = mean + sd * CounterRng(seed, j).normal();
    set.median_estimate = median_estimate(set);
    return set;
}

PhaseSampleSet sample_phase_grid(const PhaseEstimationPlan& plan, double theta, std::uint64_t seed, const Grid& grid) {
    plan.validate();
    if (plan.eps_Q != 0) throw Error("sample_phase_grid: gate-error broadening is only modeled by sample_phase");
    const double target = double(plan.M) * theta;
    if (std::abs(target) + 5 * plan.s > grid.half_width) throw Error("sample_phase_grid: displacement M*theta leaves the grid");
    WaveFunction phase = gaussian_state({0, plan.s, {}}, grid);
    for (int k = 0; k < plan.M; ++k) phase = controlled_shift(phase, 0, theta);
    auto rho = marginal_density(phase, 0);
    std::vector<double> cdf(rho.size());
    double acc = 0;
    for (std::size_t k = 0; k < rho.size(); ++k) cdf[k] = (acc += rho[k]);
    PhaseSampleSet set;
    set.M = plan.M;
    set.samples.resize(std::size_t(plan.L));
    CounterRng rng(seed);
    const double dx = grid.spacing();
    for (auto& y : set.samples) {
        const double u = rng.uniform() * acc;
        const std::size_t k = std::size_t(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        y = grid.point(std::min(k, rho.size() - 1)) + (rng.uniform() - 0.5) * dx;
    }
    set.median_estimate = median_estimate(set);
    return set;
}

double success_probability(const PhaseEstimationPlan& plan) {
    const double me = double(plan.M) * plan.eps_Q;
    return std::erf(double(plan.M) * plan.eps_target / std::sqrt(me * me + plan.s * plan.s));
}

int repetitions_needed(double confidence, double p) {
    if (!(p > 0.5)) throw Error("repetitions_needed: single-shot success must exceed 1/2");
    if (!(confidence > 0 && confidence < 1)) throw Error("repetitions_needed: confidence must lie in (0, 1)");
    if (p >= 1) return 1;
    const double bound = std::abs(std::log(1 - confidence)) / std::abs(std::log(2 * std::sqrt(p * (1 - p))));
    long long L = std::max<long long>(1, ceil_tolerant(bound));
    if (L % 2 == 0) ++L;
    return int(L);
}

double lower_median(std::vector<double> v) {
    if (v.empty()) throw Error("median of an empty sample set");
    const std::size_t k = (v.size() - 1) / 2;
    std::nth_element(v.begin(), v.begin() + std::ptrdiff_t(k), v.end());
    return v[k];
}

double median_estimate(const PhaseSampleSet& set) {
    if (set.samples.empty()) throw Error("median_estimate: empty sample set");
    return lower_median(set.estimates());
}

long long ceil_tolerant(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v))) return (long long)r;
    return (long long)std::ceil(v);
}

namespace {

double base_gate_cost(const CostRegime& regime, double eps) {
    if (regime.model == CostModel::Polylog) {
        const double l = std::log2(1 / eps);
        return std::max(1.0, l * l);
    }
    return std::pow(eps, -regime.delta);
}

}  // namespace

ResourceEstimate resource_estimate(const ResourceInputs& in) {
    if (!(in.eps_target > 0)) throw Error("resource_estimate: eps_target must be positive");
    if (in.regime.model == CostModel::Power && !(in.regime.delta >= 0 && in.regime.delta < 1))
        throw Error("resource_estimate: delta must lie in [0, 1)");
    ResourceEstimate r;
    r.regime = in.regime;
    r.M = ceil_tolerant(std::numbers::sqrt2 * in.s / in.eps_target);
    if (in.L > 0) {
        r.L = in.L;
    } else {
        PhaseEstimationPlan p;
        p.M = int(r.M);
        p.s = in.s;
        p.eps_Q = in.eps_Q;
        p.eps_target = in.eps_target;
        r.L = repetitions_needed(in.confidence, success_probability(p));
    }
    r.N_Q = r.M * r.L;
    r.N_C = ceil_tolerant(in.sigma2 / (in.fail_prob * in.eps_target * in.eps_target));

    const double base = base_gate_cost(in.regime, in.eps_target);
    const double rot = in.rotation_cost == RotationCost::Exponential ? std::pow(2.0, in.d_h) : double(std::max(1, in.d_h));
    r.T_G = base;
    r.T_Z = base;
    r.T_V = base;
    r.T_H = rot * base;
    // K Z K^dag V K Z K^dag V: four K-type blocks (G' and H each), two Z, two V.
    r.T_Q = 4 * r.T_G + 4 * r.T_H + 2 * r.T_Z + 2 * r.T_V;
    r.total_cost = double(r.N_Q) * r.T_Q;
    std::ostringstream expr;
    if (in.regime.model == CostModel::Polylog) expr << "O~(s/eps) with T_Q = polylog(1/eps)";
    else expr << "O(s/eps^" << 1 + in.regime.delta << ") with T_Q = O(1/eps^" << in.regime.delta << ")";
    r.total_cost_expr = expr.str();

    const double share = in.eps_Q / 5;
    r.eps_G = r.eps_S = r.eps_H = r.eps_Z = r.eps_V = share;
    return r;
}

}  // namespace cvmc
