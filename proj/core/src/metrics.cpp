#include "zebrasim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "zebrasim/errors.hpp"

namespace zebrasim {

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace

double ComplianceRow::pct_compliant() const {
    return total() == 0 ? 0.0 : round2(100.0 * compliant / total());
}

double ComplianceRow::pct_noncompliant() const {
    return total() == 0 ? 0.0 : round2(100.0 * noncompliant / total());
}

std::optional<double> ComplianceTable::overall_pct_noncompliant() const {
    if (total() == 0) return std::nullopt;
    return round2(100.0 * total_noncompliant() / total());
}

ComplianceTable tally_compliance(std::span<const CrossingEpisode> episodes) {
    ComplianceTable table;
    for (const CrossingEpisode& ep : episodes) {
        ComplianceRow& row = ep.side == RelativeSide::Near ? table.near : table.far;
        if (ep.noncompliant())
            ++row.noncompliant;
        else
            ++row.compliant;
    }
    return table;
}

std::vector<MinuteRecord> aggregate_minutes(std::span<const CrossingEpisode> episodes,
                                            const SimEvents& events,
                                            double duration_minutes) {
    const int n_minutes = static_cast<int>(std::ceil(duration_minutes - 1e-9));
    std::vector<MinuteRecord> minutes(n_minutes);
    for (int m = 0; m < n_minutes; ++m) minutes[m].minute = m;

    auto minute_of = [&](double t, const char* what) {
        if (t < 0.0 || t >= duration_minutes * 60.0)
            throw DataError(std::string(what) + " timestamp " + std::to_string(t) +
                            " outside [0, " + std::to_string(duration_minutes * 60.0) + ")");
        return static_cast<int>(t / 60.0);
    };

    for (double t : events.veh_pass_times) ++minutes[minute_of(t, "vehicle pass")].n_vehicles;
    for (double t : events.ped_crossing_times)
        ++minutes[minute_of(t, "crossing entry")].n_crossing_peds;

    std::vector<int> nc(n_minutes, 0);
    for (const CrossingEpisode& ep : episodes) {
        const int m = minute_of(ep.start_time, "episode decision");
        ++minutes[m].n_episodes;
        if (ep.noncompliant()) ++nc[m];
    }
    for (int m = 0; m < n_minutes; ++m)
        if (minutes[m].n_episodes > 0)
            minutes[m].pct_noncompliant = 100.0 * nc[m] / minutes[m].n_episodes;

    return minutes;
}

std::optional<double> compute_ttc(const CarAgent& car, const PedestrianAgent& ped,
                                  const Geometry& geom) {
    if (ped.phase != PedPhase::Crossing) return std::nullopt;
    if (car.speed <= 0.0) return std::nullopt;
    const LaneGeometry& lane = geom.lanes[car.lane];
    if (ped.row < lane.row_begin || ped.row >= lane.row_end) return std::nullopt;
    const double dist = geom.column_entry_s(lane, ped.col) - car.position;
    if (dist < 0.0) return std::nullopt;
    return dist / car.speed;
}

const char* to_string(Los level) {
    static const char* names[] = {"A", "B", "C", "D", "E", "F"};
    return names[static_cast<int>(level)];
}

CapacityResult capacity_and_los(const SimEvents& events, double duration_minutes,
                                const LosBands& bands) {
    CapacityResult out;
    out.veh_per_hour =
        static_cast<double>(events.veh_pass_times.size()) / (duration_minutes / 60.0);
    out.delay_samples = static_cast<long>(events.ped_wait_times.size());
    if (out.delay_samples == 0) {
        out.zero_sample = true;
        out.los = Los::A;
        return out;
    }
    double sum = 0.0;
    for (double w : events.ped_wait_times) sum += w;
    out.mean_ped_delay = sum / out.delay_samples;

    int grade = 0;
    while (grade < static_cast<int>(bands.size()) && out.mean_ped_delay > bands[grade])
        ++grade;
    out.los = static_cast<Los>(grade);
    return out;
}

long near_accident_count(std::span<const CrossingEpisode> episodes, double ttc_threshold) {
    long n = 0;
    for (const CrossingEpisode& ep : episodes)
        if (ep.min_ttc < ttc_threshold) ++n;
    return n;
}

}  // namespace zebrasim
