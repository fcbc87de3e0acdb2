#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "cvmc/ampest.hpp"
#include "cvmc/bench.hpp"
#include "cvmc/encoder.hpp"
#include "cvmc/integrand.hpp"

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cvmc::Error("cannot open " + path);
    return json::parse(in);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cvmc::Error("cannot write " + path);
    out << text;
}

void write_json(const std::string& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-variable quantum Monte Carlo integration simulator"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string out_prefix;
    int threads = int(std::max(1u, std::thread::hardware_concurrency()));
    std::string preset;
    std::string input;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        sub->add_option("--seed", seed, "Master seed");
        sub->add_option("--out", out_prefix, "Output path prefix");
        sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--preset", preset, "Built-in configuration")->check(CLI::IsMember({"sec7"}));
        if (needs_input) sub->add_option("config", input, "Configuration file");
    };

    auto* encode = app.add_subcommand("encode", "Encode an integrand and report the estimate with its error budget");
    add_common(encode, true);
    std::string path = "sliced";
    encode->add_option("--path", path, "Evaluation path")->check(CLI::IsMember({"sliced", "full"}));

    auto* phase = app.add_subcommand("phase-est", "Sample phase estimation and take the median");
    add_common(phase, true);

    auto* bench = app.add_subcommand("benchmark", "Run the classical vs quantum error-scaling sweep");
    add_common(bench, true);

    auto* fit = app.add_subcommand("fit", "Fit power laws to a benchmark CSV");
    std::string csv;
    fit->add_option("csv", csv, "Benchmark CSV")->required();
    fit->add_option("--out", out_prefix, "Output path prefix");

    auto* res = app.add_subcommand("resources", "Tabulate query counts against target accuracy");
    add_common(res, false);
    std::vector<double> eps_list{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    double sigma2 = 1, fail = 0.05, phase_width = 1 / std::sqrt(2.0);
    res->add_option("--eps", eps_list, "Target accuracies");
    res->add_option("--sigma2", sigma2, "Classical variance");
    res->add_option("--fail", fail, "Classical failure probability");
    res->add_option("--width", phase_width, "Phase-mode width");

    CLI11_PARSE(app, argc, argv);

    try {
        auto need_config = [&](const char* what) {
            if (preset.empty() && input.empty()) throw cvmc::Error(std::string(what) + ": give a config file or --preset sec7");
        };

        if (*encode) {
            need_config("encode");
            const cvmc::IntegrandSpec spec =
                preset == "sec7" ? cvmc::sec7_encoding_preset() : cvmc::spec_from_json(read_json(input));
            cvmc::EncodeOptions opts;
            opts.path = path == "full" ? cvmc::EncodePath::FullState : cvmc::EncodePath::Sliced;
            const json report = cvmc::run_encoding(spec, opts);
            if (!out_prefix.empty()) write_json(out_prefix + "_encoding.json", report);
            std::cout << report.dump(2) << "\n";
            return 0;
        }

        if (*phase) {
            need_config("phase-est");
            cvmc::PhaseEstimationPlan plan;
            double theta = 0;
            if (preset == "sec7") {
                plan.M = 1000;
                plan.eps_target = 1e-3;
                plan.L = cvmc::repetitions_needed(plan.confidence, cvmc::success_probability(plan));
                theta = cvmc::theta_from_integral(cvmc::reference_integral(cvmc::sec7_spec()));
            } else {
                const json j = read_json(input);
                plan = j.at("plan").get<cvmc::PhaseEstimationPlan>();
                theta = j.contains("theta") ? j.at("theta").get<double>()
                                            : cvmc::theta_from_integral(j.at("integral").get<double>());
            }
            const cvmc::PhaseSampleSet set = cvmc::sample_phase(plan, theta, seed);
            json j = cvmc::run_metadata(json(plan));
            j["plan"] = plan;
            j["theta"] = theta;
            j["success_probability"] = cvmc::success_probability(plan);
            j["median_estimate"] = set.median_estimate;
            j["fractional_error"] = cvmc::fractional_error(set.median_estimate, theta);
            j["seed"] = seed;
            if (!out_prefix.empty()) {
                std::string rows = "j,Y,estimate\n";
                char buf[128];
                const auto est = set.estimates();
                for (std::size_t k = 0; k < set.samples.size(); ++k) {
                    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, set.samples[k], est[k]);
                    rows += buf;
                }
                write_file(out_prefix + "_samples.csv", rows);
                write_json(out_prefix + "_phase.json", j);
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (*bench) {
            need_config("benchmark");
            cvmc::BenchmarkConfig cfg =
                preset == "sec7" ? cvmc::sec7_preset() : cvmc::benchmark_config_from_json(read_json(input));
            if (bench->count("--seed")) cfg.seed = seed;
            if (!out_prefix.empty()) cfg.output = out_prefix;
            const json cfg_json = cvmc::benchmark_config_to_json(cfg);
            const cvmc::BenchmarkResult r = cvmc::run_sec7_benchmark(cfg, threads);
            write_file(cfg.output + ".csv", cvmc::rows_to_csv(r.rows));
            json summary = cvmc::summary_json(r.summary, cfg_json);
            summary["theta"] = r.theta;
            summary["integral"] = r.integral;
            write_json(cfg.output + "_summary.json", summary);
            std::cout << summary.dump(2) << "\n";
            if (r.summary.rejected()) {
                std::cerr << "warning: power-law fit quality below R^2 = 0.8\n";
                return 2;
            }
            return 0;
        }

        if (*fit) {
            std::ifstream in(csv);
            if (!in) throw cvmc::Error("cannot open " + csv);
            const auto rows = cvmc::rows_from_csv(in);
            const cvmc::BenchmarkSummary s = cvmc::summarize(rows, {0, 0});
            json j = cvmc::summary_json(s, json{{"csv", csv}});
            if (!out_prefix.empty()) write_json(out_prefix + "_fit.json", j);
            std::cout << j.dump(2) << "\n";
            return s.rejected() ? 2 : 0;
        }

        if (*res) {
            cvmc::ResourceInputs in;
            in.s = phase_width;
            in.sigma2 = sigma2;
            in.fail_prob = fail;
            const std::string table = cvmc::resource_table_csv(eps_list, in);
            if (!out_prefix.empty()) write_file(out_prefix + "_resources.csv", table);
            std::cout << table;
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
