#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cvmc/ampest.hpp"
#include "cvmc/encoder.hpp"
#include "cvmc/integrand.hpp"

namespace cvmc {

inline constexpr const char* kVersion = "0.1.0";

double fractional_error(double theta_hat, double theta);

struct PowerLawFit {
    double b = 0;
    double zeta = 0;
    double r_squared = 0;
    bool rejected = false;  // r_squared below 0.8
};

// Ordinary least squares of log(error) on log(N); points are (N, error).
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

struct BenchmarkConfig {
    IntegrandSpec integrand;
    PhaseEstimationPlan quantum;  // M is taken from M_list
    std::vector<long long> M_list;
    std::vector<long long> N_list;
    int seeds = 50;
    // Half-open range of sweep indices used by the fits.
    std::pair<std::size_t, std::size_t> fit_range{0, 0};
    std::string output = "sec7";
    std::uint64_t seed = 0;

    void validate() const;
};

BenchmarkConfig sec7_preset();
BenchmarkConfig benchmark_config_from_json(const nlohmann::json& j);
nlohmann::json benchmark_config_to_json(const BenchmarkConfig& c);

struct SweepRow {
    std::string arm;  // "classical" or "quantum"
    double N = 0;
    double error_mean = 0;
    double error_stderr = 0;
    int seeds = 0;
};

struct BenchmarkSummary {
    PowerLawFit classical;
    PowerLawFit quantum;
    double ratio = 0;

    bool rejected() const { return classical.rejected || quantum.rejected; }
};

struct BenchmarkResult {
    double theta = 0;
    double integral = 0;
    std::vector<SweepRow> rows;
    BenchmarkSummary summary;
};

// n log-spaced integers from lo to hi, rounded and made strictly increasing.
std::vector<long long> log_spaced(double lo, double hi, int n);

BenchmarkResult run_sec7_benchmark(const BenchmarkConfig& config, int threads = 1);
// Fits both arms of a sweep over the given index range (per arm); zero-error rows are skipped.
BenchmarkSummary summarize(std::span<const SweepRow> rows, std::pair<std::size_t, std::size_t> fit_range);

std::string rows_to_csv(std::span<const SweepRow> rows);
std::vector<SweepRow> rows_from_csv(std::istream& in);

std::uint64_t fnv1a64(std::string_view data);
// 16 hex digits of FNV-1a over the canonical (sorted-key, compact) JSON dump.
std::string config_hash(const nlohmann::json& config);
// config_hash, rng and module versions.
nlohmann::json run_metadata(const nlohmann::json& config);
nlohmann::json summary_json(const BenchmarkSummary& s, const nlohmann::json& config);

// Worked integrand with ancilla width 1/2 and an automatically sized ancilla grid.
IntegrandSpec sec7_encoding_preset();
nlohmann::json run_encoding(const IntegrandSpec& spec, const EncodeOptions& opts = {});

// Rows eps, M, L, N_Q, N_C, total_cost for a list of target accuracies.
std::string resource_table_csv(std::span<const double> eps_list, const ResourceInputs& base);

}  // namespace cvmc
