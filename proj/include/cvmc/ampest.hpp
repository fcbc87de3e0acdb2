#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvmc/grid.hpp"

namespace cvmc {

// theta = 2 arccos(1 - I / (2 pi)) and its inverse.
double theta_from_integral(double integral);
double integral_from_theta(double theta);

struct PhaseEstimationPlan {
    int M = 1;
    int L = 1;
    double s = 0.70710678118654752;
    double eps_Q = 0;
    double eps_target = 1e-3;
    double confidence = 0.995;
    std::uint64_t seed = 0;

    void validate() const;
    // Sets L from the confidence and the predicted single-shot success.
    PhaseEstimationPlan with_auto_repetitions() const;
};

void to_json(nlohmann::json& j, const PhaseEstimationPlan& p);
void from_json(const nlohmann::json& j, PhaseEstimationPlan& p);

struct PhaseSampleSet {
    std::vector<double> samples;  // positions Y_j
    int M = 1;
    double median_estimate = 0;

    std::vector<double> estimates() const;
};

// Standard deviation of the broadened phase-mode distribution, sqrt(((M eps_Q)^2 + s^2) / 2).
double phase_spread(const PhaseEstimationPlan& plan);

PhaseSampleSet sample_phase(const PhaseEstimationPlan& plan, double theta, std::uint64_t seed);
// Shifts G_{0,s} on the grid M times by theta and samples the resulting position density.
PhaseSampleSet sample_phase_grid(const PhaseEstimationPlan& plan, double theta, std::uint64_t seed, const Grid& grid);

double success_probability(const PhaseEstimationPlan& plan);
int repetitions_needed(double confidence, double p_success);

// Lower median for even counts.
double lower_median(std::vector<double> values);
double median_estimate(const PhaseSampleSet& set);

enum class CostModel { Polylog, Power };

struct CostRegime {
    CostModel model = CostModel::Polylog;
    double delta = 0;  // exponent of the power regime, in [0, 1)
};

enum class RotationCost { Exponential, Linear };

struct ResourceEstimate {
    long long M = 0;
    int L = 0;
    long long N_Q = 0;
    long long N_C = 0;
    CostRegime regime;
    // Per-application cost of Q in units of the elementary gates.
    double T_G = 1, T_H = 1, T_Z = 1, T_V = 1;
    double T_Q = 0;
    double total_cost = 0;
    std::string total_cost_expr;
    double eps_G = 0, eps_S = 0, eps_H = 0, eps_Z = 0, eps_V = 0;

    double eps_Q() const { return eps_G + eps_S + eps_H + eps_Z + eps_V; }
};

struct ResourceInputs {
    double eps_target = 1e-3;
    double s = 0.70710678118654752;
    double eps_Q = 0;
    CostRegime regime;
    int L = 0;              // 0: derived from confidence
    double confidence = 0.995;
    double sigma2 = 1;      // classical variance
    double fail_prob = 0.05;
    int d_h = 2;
    RotationCost rotation_cost = RotationCost::Linear;
};

ResourceEstimate resource_estimate(const ResourceInputs& in);
// ceil that ignores round-off just above an integer.
long long ceil_tolerant(double v);

}  // namespace cvmc
