#include "zebrasim/calibration.hpp"

#include <cmath>
#include <string>

#include "zebrasim/errors.hpp"
#include "zebrasim/simulation.hpp"

namespace zebrasim {

RateMeasurement measure_noncompliance(const ScenarioConfig& cfg,
                                      const CalibrationOptions& opts) {
    long nc = 0, total = 0, forced = 0;
    long nc_near = 0, total_near = 0, nc_far = 0, total_far = 0;

    for (int i = 0; i < opts.replications; ++i) {
        ScenarioConfig run_cfg = cfg;
        run_cfg.seed = opts.seed_base + static_cast<std::uint64_t>(i);
        Simulation sim(run_cfg);
        sim.run();
        for (const CrossingEpisode& ep : sim.world().episode_log) {
            ++total;
            const bool is_nc = ep.noncompliant();
            if (is_nc) ++nc;
            if (ep.decision->kind == DecisionKind::NonCompliantForced) ++forced;
            if (ep.side == RelativeSide::Near) {
                ++total_near;
                if (is_nc) ++nc_near;
            } else {
                ++total_far;
                if (is_nc) ++nc_far;
            }
        }
    }

    RateMeasurement m;
    m.episodes = total;
    if (total > 0) {
        m.overall = static_cast<double>(nc) / total;
        m.forced = static_cast<double>(forced) / total;
    }
    if (total_near > 0) m.near = static_cast<double>(nc_near) / total_near;
    if (total_far > 0) m.far = static_cast<double>(nc_far) / total_far;
    return m;
}

CalibrationResult calibrate_noncompliance(double target_rate, ScenarioConfig cfg,
                                          const CalibrationOptions& opts) {
    if (target_rate < 0.0 || target_rate > 1.0)
        throw ConfigError("calibration target must be in [0,1]");

    CalibrationResult out;
    auto evaluate = [&](double p) {
        cfg.p_deliberate = DeliberateProbability{};
        cfg.p_deliberate.fallback = p;
        out.runs_used += opts.replications;
        return measure_noncompliance(cfg, opts);
    };

    const RateMeasurement at_zero = evaluate(0.0);
    out.floor_rate = at_zero.overall;
    if (target_rate < out.floor_rate)
        throw InfeasibleTargetError(
            "calibration target " + std::to_string(target_rate) +
                " lies below the forced-non-compliance floor " +
                std::to_string(out.floor_rate),
            out.floor_rate);

    double lo = 0.0, hi = 1.0;
    double best_p = 0.0;
    double best_rate = at_zero.overall;
    auto consider = [&](double p, double rate) {
        if (std::fabs(rate - target_rate) < std::fabs(best_rate - target_rate)) {
            best_p = p;
            best_rate = rate;
        }
    };

    const RateMeasurement at_one = evaluate(1.0);
    consider(1.0, at_one.overall);
    if (target_rate >= at_one.overall) {
        out.p = 1.0;
        out.measured_rate = at_one.overall;
        return out;
    }

    while (hi - lo >= opts.bracket_tolerance &&
           out.runs_used + opts.replications <= opts.run_budget) {
        const double mid = 0.5 * (lo + hi);
        const RateMeasurement m = evaluate(mid);
        ++out.iterations;
        consider(mid, m.overall);
        if (std::fabs(m.overall - target_rate) <= opts.rate_tolerance) break;
        if (m.overall < target_rate)
            lo = mid;
        else
            hi = mid;
    }

    out.p = best_p;
    out.measured_rate = best_rate;
    return out;
}

SideCalibrationResult calibrate_noncompliance_by_side(double target_near, double target_far,
                                                      ScenarioConfig cfg,
                                                      const CalibrationOptions& opts) {
    if (target_near < 0.0 || target_near > 1.0 || target_far < 0.0 || target_far > 1.0)
        throw ConfigError("calibration targets must be in [0,1]");

    SideCalibrationResult out;
    auto evaluate = [&](double p_near, double p_far) {
        cfg.p_deliberate = DeliberateProbability{};
        cfg.p_deliberate.set_side(RelativeSide::Near, p_near);
        cfg.p_deliberate.set_side(RelativeSide::Far, p_far);
        out.runs_used += opts.replications;
        return measure_noncompliance(cfg, opts);
    };

    const RateMeasurement at_zero = evaluate(0.0, 0.0);
    out.floor_near = at_zero.near;
    out.floor_far = at_zero.far;
    if (target_near < out.floor_near)
        throw InfeasibleTargetError("near-side target below the forced floor " +
                                        std::to_string(out.floor_near),
                                    out.floor_near);
    if (target_far < out.floor_far)
        throw InfeasibleTargetError("far-side target below the forced floor " +
                                        std::to_string(out.floor_far),
                                    out.floor_far);

    double lo_n = 0.0, hi_n = 1.0, lo_f = 0.0, hi_f = 1.0;
    double best_n = 0.5, best_f = 0.5;
    double best_err = 2.0;

    while ((hi_n - lo_n >= opts.bracket_tolerance || hi_f - lo_f >= opts.bracket_tolerance) &&
           out.runs_used + opts.replications <= opts.run_budget) {
        const double mid_n = 0.5 * (lo_n + hi_n);
        const double mid_f = 0.5 * (lo_f + hi_f);
        const RateMeasurement m = evaluate(mid_n, mid_f);
        ++out.iterations;

        const double err =
            std::max(std::fabs(m.near - target_near), std::fabs(m.far - target_far));
        if (err < best_err) {
            best_err = err;
            best_n = mid_n;
            best_f = mid_f;
            out.measured_near = m.near;
            out.measured_far = m.far;
        }
        if (err <= opts.rate_tolerance) break;

        if (m.near < target_near)
            lo_n = mid_n;
        else
            hi_n = mid_n;
        if (m.far < target_far)
            lo_f = mid_f;
        else
            hi_f = mid_f;
    }

    out.p_near = best_n;
    out.p_far = best_f;
    return out;
}

}  // namespace zebrasim
