// zebrasim: batch runner for the zebra-crossing microsimulation.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zebrasim/calibration.hpp"
#include "zebrasim/runner.hpp"
#include "zebrasim/simulation.hpp"

namespace {

using namespace zebrasim;

int cmd_run(const std::string& scenario, std::optional<std::uint64_t> seed,
            const std::string& out_dir, const std::string& format) {
    const OutputFormat fmt = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    const RunOutputs out = run_scenario(scenario, seed, out_dir, fmt);
    std::printf("episodes: %ld\n", static_cast<long>(out.episodes.size()));
    if (auto nc = out.nc_rate())
        std::printf("noncompliant: %.2f%%\n", 100.0 * *nc);
    std::printf("throughput: %.1f veh/h\n", out.capacity.veh_per_hour);
    std::printf("mean delay: %.2f s (LOS %s)\n", out.capacity.mean_ped_delay,
                to_string(out.capacity.los));
    std::printf("near accidents: %ld\n", out.near_accidents);
    std::printf("outputs in %s\n", out_dir.c_str());
    return 0;
}

int cmd_batch(const std::string& scenario, const std::vector<std::uint64_t>& seeds,
              const std::string& out_dir) {
    const BatchSummary batch = run_batch(scenario, seeds, out_dir);
    std::printf("replications: %zu\n", batch.runs.size());
    std::printf("nc rate: %.4f (sd %.4f)\n", batch.nc_rate.mean, batch.nc_rate.sd);
    std::printf("veh/min: %.2f (sd %.2f)\n", batch.veh_per_min.mean, batch.veh_per_min.sd);
    std::printf("ped/min: %.2f (sd %.2f)\n", batch.ped_per_min.mean, batch.ped_per_min.sd);
    std::printf("mean delay: %.2f s (sd %.2f)\n", batch.mean_delay.mean, batch.mean_delay.sd);
    std::printf("near accidents: %.1f (sd %.1f)\n", batch.near_accidents.mean,
                batch.near_accidents.sd);
    std::printf("outputs in %s\n", out_dir.c_str());
    return 0;
}

int cmd_sweep(const std::string& scenario, const std::vector<double>& veh_rates,
              const std::vector<double>& ped_rates, const std::vector<std::uint64_t>& seeds,
              const std::string& out_dir) {
    const SweepResult sweep = run_sweep(scenario, veh_rates, ped_rates, seeds, out_dir);
    const RegressionResult& r = sweep.regression.result;
    std::printf("pooled minutes: %zu (excluded %ld without episodes)\n",
                sweep.pooled_minutes.size(), sweep.regression.minutes_excluded);
    std::printf("beta vehicles:  %+.4f  (t=%+.2f, p=%.3g)\n", r.beta[1], r.t_stats[1],
                r.p_values[1]);
    std::printf("beta peds:      %+.4f  (t=%+.2f, p=%.3g)\n", r.beta[2], r.t_stats[2],
                r.p_values[2]);
    std::printf("R2=%.3f  F(%d,%d)=%.3f (p=%.3g)\n", r.r_squared, r.df_model, r.df_residual,
                r.f_stat, r.f_p_value);
    std::printf("outputs in %s\n", out_dir.c_str());
    return 0;
}

int cmd_calibrate(const std::string& scenario, double target,
                  std::optional<double> target_near, std::optional<double> target_far,
                  int reps, int budget, int verify_seeds, const std::string& out_dir) {
    const std::string content = read_text_file(scenario);
    ScenarioConfig cfg = ScenarioConfig::from_json_text(content);

    CalibrationOptions opts;
    opts.replications = reps;
    opts.run_budget = budget;

    nlohmann::json j;
    j["scenario_hash"] = fnv1a_hex(content);
    ScenarioConfig calibrated = cfg;

    if (target_near || target_far) {
        if (!(target_near && target_far))
            throw ConfigError("per-side calibration needs both --target-near and --target-far");
        const SideCalibrationResult res =
            calibrate_noncompliance_by_side(*target_near, *target_far, cfg, opts);
        std::printf("p_near=%.4f (measured %.4f, floor %.4f)\n", res.p_near,
                    res.measured_near, res.floor_near);
        std::printf("p_far=%.4f (measured %.4f, floor %.4f)\n", res.p_far, res.measured_far,
                    res.floor_far);
        std::printf("iterations=%d runs=%d\n", res.iterations, res.runs_used);
        j["mode"] = "per_side";
        j["target"] = {{"near", *target_near}, {"far", *target_far}};
        j["p_near"] = res.p_near;
        j["p_far"] = res.p_far;
        j["measured"] = {{"near", res.measured_near}, {"far", res.measured_far}};
        j["floor"] = {{"near", res.floor_near}, {"far", res.floor_far}};
        j["iterations"] = res.iterations;
        j["runs_used"] = res.runs_used;
        calibrated.p_deliberate = DeliberateProbability{};
        calibrated.p_deliberate.set_side(RelativeSide::Near, res.p_near);
        calibrated.p_deliberate.set_side(RelativeSide::Far, res.p_far);
    } else {
        const CalibrationResult res = calibrate_noncompliance(target, cfg, opts);
        std::printf("p=%.4f (measured %.4f, floor %.4f)\n", res.p, res.measured_rate,
                    res.floor_rate);
        std::printf("iterations=%d runs=%d\n", res.iterations, res.runs_used);
        j["mode"] = "overall";
        j["target"] = target;
        j["p"] = res.p;
        j["measured"] = res.measured_rate;
        j["floor"] = res.floor_rate;
        j["iterations"] = res.iterations;
        j["runs_used"] = res.runs_used;
        calibrated.p_deliberate = DeliberateProbability{};
        calibrated.p_deliberate.fallback = res.p;
    }

    if (verify_seeds > 0) {
        std::vector<std::uint64_t> seeds;
        for (int i = 0; i < verify_seeds; ++i) seeds.push_back(50000 + i);
        const BatchSummary verify = simulate_batch(calibrated, seeds);
        std::printf("verification over %d seeds: nc=%.4f (sd %.4f)\n", verify_seeds,
                    verify.nc_rate.mean, verify.nc_rate.sd);
        j["verification"]["seeds"] = verify_seeds;
        j["verification"]["nc_rate_mean"] = verify.nc_rate.mean;
        j["verification"]["nc_rate_sd"] = verify.nc_rate.sd;
        ComplianceTable pooled;
        for (std::uint64_t seed : seeds) {
            ScenarioConfig run_cfg = calibrated;
            run_cfg.seed = seed;
            const RunOutputs out = simulate_scenario(run_cfg);
            pooled.near.compliant += out.compliance.near.compliant;
            pooled.near.noncompliant += out.compliance.near.noncompliant;
            pooled.far.compliant += out.compliance.far.compliant;
            pooled.far.noncompliant += out.compliance.far.noncompliant;
        }
        j["verification"]["near_pct_noncompliant"] = pooled.near.pct_noncompliant();
        j["verification"]["far_pct_noncompliant"] = pooled.far.pct_noncompliant();
    }

    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir + "/calibration.json", j.dump(2) + "\n");
    std::printf("outputs in %s\n", out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zebrasim: pedestrian-vehicle interaction at an unsignalized zebra crossing"};
    app.require_subcommand(1);

    std::string scenario, out_dir, format = "csv";
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> veh_rates, ped_rates;
    double target = 391.0 / 812.0;
    double target_near_v = -1.0, target_far_v = -1.0;
    int reps = 5, budget = 120, verify_seeds = 20;

    CLI::App* run = app.add_subcommand("run", "one replication of a scenario");
    run->add_option("--scenario", scenario, "scenario file (JSON)")->required();
    run->add_option("--seed", seed, "seed override");
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* batch = app.add_subcommand("batch", "independent replications over seeds");
    batch->add_option("--scenario", scenario)->required();
    batch->add_option("--seeds", seeds, "comma-separated seeds")->required()->delimiter(',');
    batch->add_option("--out", out_dir)->required();

    CLI::App* sweep = app.add_subcommand("sweep", "demand grid x seeds, pooled regression");
    sweep->add_option("--scenario", scenario)->required();
    sweep->add_option("--veh-rates", veh_rates, "veh/min grid")->required()->delimiter(',');
    sweep->add_option("--ped-rates", ped_rates, "ped/min grid")->required()->delimiter(',');
    sweep->add_option("--seeds", seeds)->required()->delimiter(',');
    sweep->add_option("--out", out_dir)->required();

    CLI::App* calibrate =
        app.add_subcommand("calibrate", "fit p_deliberate to a non-compliance target");
    calibrate->add_option("--scenario", scenario)->required();
    calibrate->add_option("--target", target, "overall non-compliance fraction");
    calibrate->add_option("--target-near", target_near_v, "near-side fraction");
    calibrate->add_option("--target-far", target_far_v, "far-side fraction");
    calibrate->add_option("--reps", reps, "replications per evaluation");
    calibrate->add_option("--budget", budget, "total run budget");
    calibrate->add_option("--verify", verify_seeds, "verification seeds (0 disables)");
    calibrate->add_option("--out", out_dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(scenario,
                           run->count("--seed") ? std::optional(seed) : std::nullopt, out_dir,
                           format);
        if (batch->parsed()) return cmd_batch(scenario, seeds, out_dir);
        if (sweep->parsed()) return cmd_sweep(scenario, veh_rates, ped_rates, seeds, out_dir);
        if (calibrate->parsed())
            return cmd_calibrate(scenario, target,
                                 target_near_v >= 0.0 ? std::optional(target_near_v)
                                                      : std::nullopt,
                                 target_far_v >= 0.0 ? std::optional(target_far_v)
                                                     : std::nullopt,
                                 reps, budget, verify_seeds, out_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
