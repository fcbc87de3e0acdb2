#include "cvmc/bench.hpp"

#include <Eigen/Core>
#include <boost/version.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <thread>

#include "cvmc/classical_mc.hpp"
#include "cvmc/fourier.hpp"
#include "cvmc/philox.hpp"

namespace cvmc {

using nlohmann::json;

double fractional_error(double theta_hat, double theta) {
    if (theta == 0) throw Error("fractional_error: theta must be nonzero");
    return std::abs(theta_hat - theta) / std::abs(theta);
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
    if (points.size() < 4) throw Error("fit_power_law: need at least 4 points");
    const double n = double(points.size());
    double sx = 0, sy = 0;
    for (auto [N, e] : points) {
        if (!(N > 0) || !(e > 0)) throw Error("fit_power_law: N and error must be positive");
        sx += std::log(N);
        sy += std::log(e);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (auto [N, e] : points) {
        const double dx = std::log(N) - mx, dy = std::log(e) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0) throw Error("fit_power_law: N values must not all coincide");
    PowerLawFit fit;
    fit.zeta = sxy / sxx;
    fit.b = std::exp(my - fit.zeta * mx);
    fit.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.rejected = fit.r_squared < 0.8;
    return fit;
}

std::vector<long long> log_spaced(double lo, double hi, int n) {
    if (n < 2 || !(lo > 0) || !(hi > lo)) throw Error("log_spaced: bad range");
    std::vector<long long> v;
    for (int i = 0; i < n; ++i) {
        long long x = std::llround(lo * std::pow(hi / lo, double(i) / (n - 1)));
        if (!v.empty() && x <= v.back()) x = v.back() + 1;
        v.push_back(x);
    }
    return v;
}

void BenchmarkConfig::validate() const {
    auto increasing = [](const std::vector<long long>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] <= v[i - 1]) return false;
        return !v.empty() && v.front() > 0;
    };
    if (!increasing(M_list)) throw Error("benchmark: M_list must be positive and strictly increasing");
    if (!increasing(N_list)) throw Error("benchmark: N_list must be positive and strictly increasing");
    if (seeds < 1) throw Error("benchmark: seeds must be positive");
    const std::size_t hi = std::min(M_list.size(), N_list.size());
    const std::size_t end = fit_range.second == 0 ? hi : fit_range.second;
    if (fit_range.first >= end || end > hi || end - fit_range.first < 4)
        throw Error("benchmark: fit range must cover at least 4 points of each sweep");
    PhaseEstimationPlan q = quantum;
    q.M = 1;
    q.validate();
}

BenchmarkConfig sec7_preset() {
    BenchmarkConfig c;
    c.integrand = sec7_spec();
    c.quantum.s = squeeze_relation(10);
    c.quantum.L = 100;
    c.quantum.eps_Q = 0;
    c.quantum.eps_target = 1e-3;
    c.M_list = log_spaced(10, 1e4, 16);
    c.N_list = log_spaced(1e3, 1e6, 16);
    c.seeds = 50;
    c.fit_range = {0, 16};
    c.output = "sec7";
    return c;
}

json benchmark_config_to_json(const BenchmarkConfig& c) {
    json q = c.quantum;
    q.erase("M");
    q.erase("seed");
    return json{{"integrand", spec_to_json(c.integrand)},
                {"quantum", q},
                {"M_list", c.M_list},
                {"N_list", c.N_list},
                {"seeds", c.seeds},
                {"fit_range", {c.fit_range.first, c.fit_range.second}},
                {"output", c.output},
                {"seed", c.seed}};
}

BenchmarkConfig benchmark_config_from_json(const json& j) {
    BenchmarkConfig c = sec7_preset();
    if (j.contains("integrand")) c.integrand = spec_from_json(j.at("integrand"));
    if (j.contains("quantum")) {
        json q = j.at("quantum");
        q["M"] = 1;
        if (!q.contains("L")) q["L"] = c.quantum.L;
        c.quantum = q.get<PhaseEstimationPlan>();
    }
    if (j.contains("M_list")) c.M_list = j.at("M_list").get<std::vector<long long>>();
    if (j.contains("N_list")) c.N_list = j.at("N_list").get<std::vector<long long>>();
    c.seeds = j.value("seeds", c.seeds);
    if (j.contains("fit_range")) {
        auto r = j.at("fit_range").get<std::vector<std::size_t>>();
        if (r.size() != 2) throw Error("benchmark: fit_range must be [first, last)");
        c.fit_range = {r[0], r[1]};
    } else {
        c.fit_range = {0, std::min(c.M_list.size(), c.N_list.size())};
    }
    c.output = j.value("output", c.output);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

namespace {

constexpr std::uint64_t kArmClassical = 1, kArmQuantum = 2;

template <class Task>
void run_pool(std::size_t count, int threads, Task task) {
    const std::size_t workers = std::min<std::size_t>(std::size_t(std::max(1, threads)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < count;) task(i);
        });
    for (auto& th : pool) th.join();
}

SweepRow reduce_errors(std::string arm, double N, const std::vector<double>& errs) {
    double mean = 0;
    for (double e : errs) mean += e;
    mean /= double(errs.size());
    double var = 0;
    for (double e : errs) var += (e - mean) * (e - mean);
    const double n = double(errs.size());
    const double se = errs.size() > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
    return SweepRow{std::move(arm), N, mean, se, int(errs.size())};
}

}  // namespace

BenchmarkResult run_sec7_benchmark(const BenchmarkConfig& config, int threads) {
    config.validate();
    BenchmarkResult res;
    res.integral = reference_integral(config.integrand);
    res.theta = theta_from_integral(res.integral);

    const std::size_t nm = config.M_list.size(), nn = config.N_list.size();
    const std::size_t seeds = std::size_t(config.seeds);
    std::vector<double> qerr(nm * seeds), cerr(nn * seeds);

    run_pool(nn * seeds, threads, [&](std::size_t t) {
        const std::size_t point = t / seeds, k = t % seeds;
        const std::uint64_t s = mix_seed(mix_seed(mix_seed(config.seed, kArmClassical), point), k);
        const McEstimate est = mc_estimate(config.integrand, config.N_list[point], s);
        cerr[t] = fractional_error(theta_from_integral(est.mean), res.theta);
    });
    run_pool(nm * seeds, threads, [&](std::size_t t) {
        const std::size_t point = t / seeds, k = t % seeds;
        const std::uint64_t s = mix_seed(mix_seed(mix_seed(config.seed, kArmQuantum), point), k);
        PhaseEstimationPlan plan = config.quantum;
        plan.M = int(config.M_list[point]);
        plan.seed = s;
        qerr[t] = fractional_error(sample_phase(plan, res.theta, s).median_estimate, res.theta);
    });

    for (std::size_t i = 0; i < nn; ++i) {
        std::vector<double> e(cerr.begin() + std::ptrdiff_t(i * seeds), cerr.begin() + std::ptrdiff_t((i + 1) * seeds));
        res.rows.push_back(reduce_errors("classical", double(config.N_list[i]), e));
    }
    for (std::size_t i = 0; i < nm; ++i) {
        std::vector<double> e(qerr.begin() + std::ptrdiff_t(i * seeds), qerr.begin() + std::ptrdiff_t((i + 1) * seeds));
        res.rows.push_back(reduce_errors("quantum", double(config.M_list[i] * config.quantum.L), e));
    }
    res.summary = summarize(res.rows, config.fit_range);
    return res;
}

BenchmarkSummary summarize(std::span<const SweepRow> rows, std::pair<std::size_t, std::size_t> fit_range) {
    auto fit_arm = [&](const std::string& arm) {
        std::vector<std::pair<double, double>> pts;
        std::size_t idx = 0;
        for (const auto& r : rows) {
            if (r.arm != arm) continue;
            const bool in_range = idx >= fit_range.first && (fit_range.second == 0 || idx < fit_range.second);
            if (in_range && r.error_mean > 0) pts.emplace_back(r.N, r.error_mean);
            ++idx;
        }
        return fit_power_law(pts);
    };
    BenchmarkSummary s;
    s.classical = fit_arm("classical");
    s.quantum = fit_arm("quantum");
    s.ratio = s.quantum.zeta / s.classical.zeta;
    return s;
}

std::string rows_to_csv(std::span<const SweepRow> rows) {
    std::string out = "arm,N,error_mean,error_stderr,seeds\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%d\n", r.arm.c_str(), r.N, r.error_mean, r.error_stderr,
                      r.seeds);
        out += buf;
    }
    return out;
}

std::vector<SweepRow> rows_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "arm,N,error_mean,error_stderr,seeds")
        throw Error("csv: unexpected header");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        SweepRow r;
        std::string field;
        std::vector<std::string> f;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 5) throw Error("csv: expected 5 fields in '" + line + "'");
        r.arm = f[0];
        r.N = std::stod(f[1]);
        r.error_mean = std::stod(f[2]);
        r.error_stderr = std::stod(f[3]);
        r.seeds = std::stoi(f[4]);
        rows.push_back(r);
    }
    return rows;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash(const json& config) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(config.dump());
    return os.str();
}

json run_metadata(const json& config) {
    std::ostringstream eigen, boost;
    eigen << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION;
    boost << BOOST_VERSION / 100000 << '.' << BOOST_VERSION / 100 % 1000 << '.' << BOOST_VERSION % 100;
    return json{{"config_hash", config_hash(config)},
                {"rng", kRngName},
                {"versions", {{"cvmc", kVersion}, {"fftw", fourier::backend_version()}, {"eigen", eigen.str()},
                              {"boost", boost.str()}}}};
}

json summary_json(const BenchmarkSummary& s, const json& config) {
    json j = run_metadata(config);
    j["zeta_C"] = s.classical.zeta;
    j["zeta_Q"] = s.quantum.zeta;
    j["b_C"] = s.classical.b;
    j["b_Q"] = s.quantum.b;
    j["ratio"] = s.ratio;
    j["r2_C"] = s.classical.r_squared;
    j["r2_Q"] = s.quantum.r_squared;
    j["fit_rejected"] = s.rejected();
    return j;
}

IntegrandSpec sec7_encoding_preset() {
    IntegrandSpec s = sec7_spec();
    s.r = squeezing_from_width(0.5);
    return s;
}

json run_encoding(const IntegrandSpec& spec, const EncodeOptions& opts) {
    const json cfg = spec_to_json(spec);
    const EncodingResult r = encode(spec, opts);
    const double ref = reference_integral(spec);
    const ErrorBudget& b = r.error_budget;
    json j = run_metadata(cfg);
    j["integral_estimate"] = r.integral_estimate;
    j["quadrature_reference"] = ref;
    j["abs_error"] = std::abs(r.integral_estimate - ref);
    j["error_budget"] = {{"eps_h", b.eps_h}, {"eta", b.eta}, {"eps_sq", b.eps_sq}, {"grid_tol", b.grid_tol},
                         {"total", b.total()}};
    j["within_budget"] = std::abs(r.integral_estimate - ref) <= b.total();
    j["postselect_prob"] = r.postselect_prob;
    j["calibration"] = r.calibration;
    j["leakage"] = r.leakage;
    j["ancilla_grid"] = {{"n_points", r.ancilla_grid.n_points}, {"half_width", r.ancilla_grid.half_width}};
    j["path"] = opts.path == EncodePath::Sliced ? "sliced" : "full_state";
    return j;
}

std::string resource_table_csv(std::span<const double> eps_list, const ResourceInputs& base) {
    std::string out = "eps,M,L,N_Q,N_C,T_Q,total_cost\n";
    char buf[256];
    for (double eps : eps_list) {
        ResourceInputs in = base;
        in.eps_target = eps;
        const ResourceEstimate r = resource_estimate(in);
        std::snprintf(buf, sizeof buf, "%.17g,%lld,%d,%lld,%lld,%.17g,%.17g\n", eps, r.M, r.L, r.N_Q, r.N_C, r.T_Q,
                      r.total_cost);
        out += buf;
    }
    return out;
}

}  // namespace cvmc
