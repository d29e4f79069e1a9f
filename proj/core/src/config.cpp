#include "zebrasim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "zebrasim/geometry.hpp"

namespace zebrasim {

using nlohmann::json;

const char* to_string(Side s) {
    return s == Side::A ? "side_a" : "side_b";
}

const char* to_string(RelativeSide s) {
    return s == RelativeSide::Near ? "near" : "far";
}

const char* to_string(ResumeScope s) {
    return s == ResumeScope::OwnLane ? "own_lane" : "full_zebra";
}

const char* to_string(PedCategory c) {
    switch (c) {
        case PedCategory::ApproachingWithinBand: return "approaching_within_band";
        case PedCategory::WaitingAtCurb: return "waiting_at_curb";
        case PedCategory::OnZebra: return "on_zebra";
    }
    return "?";
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
}

void check_probability(double p, const std::string& where) {
    require(p >= 0.0 && p <= 1.0, where + " must be in [0,1]");
}

}  // namespace

void ScenarioConfig::validate() const {
    require(lane_count >= 1, "lane_count must be >= 1");
    require(lane_width > 0.0, "lane_width must be > 0");
    require(road_length > 0.0, "road_length must be > 0");
    require(crosswalk_position >= 0.0, "crosswalk_position must be >= 0");
    require(crosswalk_width > 0.0, "crosswalk_width must be > 0");
    require(crosswalk_position + crosswalk_width <= road_length,
            "crosswalk_position + crosswalk_width must be <= road_length");
    require(curb_band_depth >= 0.0, "curb_band_depth must be >= 0");
    require(cell_size > 0.0, "cell_size must be > 0");
    require(time_step > 0.0, "time_step must be > 0");
    require(duration > 0.0, "duration must be > 0");
    require(veh_arrival_rate >= 0.0, "veh_arrival_rate must be >= 0");
    require(ped_arrival_rate >= 0.0, "ped_arrival_rate must be >= 0");
    if (ped_rate_side_a) require(*ped_rate_side_a >= 0.0, "ped_arrival_rate.side_a must be >= 0");
    if (ped_rate_side_b) require(*ped_rate_side_b >= 0.0, "ped_arrival_rate.side_b must be >= 0");
    require(desired_speed_veh.mean > 0.0, "desired_speed_veh.mean must be > 0");
    require(desired_speed_veh.spread >= 0.0, "desired_speed_veh.spread must be >= 0");
    require(desired_speed_ped > 0.0, "desired_speed_ped must be > 0");
    require(decel_max > 0.0, "decel_max must be > 0");
    require(ttc_threshold >= 0.0, "ttc_threshold must be >= 0");
    require(safety_margin >= 0.0, "safety_margin must be >= 0");
    for (std::size_t i = 0; i + 1 < los_bands.size(); ++i)
        require(los_bands[i] < los_bands[i + 1], "los_bands must be strictly increasing");

    check_probability(p_deliberate.fallback, "p_deliberate");
    for (int s = 0; s < 2; ++s) {
        if (p_deliberate.per_side[s])
            check_probability(*p_deliberate.per_side[s], "p_deliberate side entry");
        for (int c = 0; c < 3; ++c)
            if (p_deliberate.per_side_category[s][c])
                check_probability(*p_deliberate.per_side_category[s][c],
                                  "p_deliberate side/category entry");
    }
}

namespace {

const std::set<std::string> kKnownKeys = {
    "lane_count", "lane_width", "road_length", "crosswalk_position",
    "crosswalk_width", "curb_band_depth", "cell_size", "time_step",
    "duration", "veh_arrival_rate", "ped_arrival_rate", "desired_speed_veh",
    "desired_speed_ped", "decel_max", "p_deliberate", "ttc_threshold",
    "safety_margin", "resume_scope", "los_bands", "seed",
};

const std::set<std::string> kSideKeys = {"side_a", "side_b"};
const std::set<std::string> kRelativeSideKeys = {"near", "far"};
const std::set<std::string> kCategoryKeys = {
    "approaching_within_band", "waiting_at_curb", "on_zebra"};

double as_number(const json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError("invalid config: '" + key + "' must be a number");
    return j.get<double>();
}

PedCategory category_from_key(const std::string& key) {
    if (key == "approaching_within_band") return PedCategory::ApproachingWithinBand;
    if (key == "waiting_at_curb") return PedCategory::WaitingAtCurb;
    return PedCategory::OnZebra;
}

// Accepts a bare number, or an object {"default": x, "near": y|{...}, "far": ...}
// where a side entry may itself be a number or a per-category object.
DeliberateProbability parse_p_deliberate(const json& j) {
    DeliberateProbability table;
    if (j.is_number()) {
        table.fallback = j.get<double>();
        return table;
    }
    if (!j.is_object())
        throw ConfigError("invalid config: 'p_deliberate' must be a number or object");
    for (const auto& [key, value] : j.items()) {
        if (key == "default") {
            table.fallback = as_number(value, "p_deliberate.default");
        } else if (kRelativeSideKeys.count(key)) {
            const RelativeSide side = key == "near" ? RelativeSide::Near : RelativeSide::Far;
            if (value.is_number()) {
                table.set_side(side, value.get<double>());
            } else if (value.is_object()) {
                for (const auto& [ckey, cval] : value.items()) {
                    if (ckey == "default") {
                        table.set_side(side, as_number(cval, "p_deliberate." + key + ".default"));
                    } else if (kCategoryKeys.count(ckey)) {
                        table.set_side_category(side, category_from_key(ckey),
                                                as_number(cval, "p_deliberate." + key + "." + ckey));
                    } else {
                        throw ConfigError("invalid config: unknown p_deliberate category '" +
                                          ckey + "'");
                    }
                }
            } else {
                throw ConfigError("invalid config: 'p_deliberate." + key +
                                  "' must be a number or object");
            }
        } else {
            throw ConfigError("invalid config: unknown p_deliberate key '" + key + "'");
        }
    }
    return table;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("scenario file must contain a JSON object");

    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!kKnownKeys.count(key))
            throw ConfigError("invalid config: unknown key '" + key + "'");
    }

    ScenarioConfig cfg;
    if (j.contains("lane_count")) {
        if (!j["lane_count"].is_number_integer())
            throw ConfigError("invalid config: 'lane_count' must be an integer");
        cfg.lane_count = j["lane_count"].get<int>();
    }
    auto num = [&](const char* key, double& out) {
        if (j.contains(key)) out = as_number(j[key], key);
    };
    num("lane_width", cfg.lane_width);
    num("road_length", cfg.road_length);
    num("crosswalk_position", cfg.crosswalk_position);
    num("crosswalk_width", cfg.crosswalk_width);
    num("curb_band_depth", cfg.curb_band_depth);
    num("cell_size", cfg.cell_size);
    num("time_step", cfg.time_step);
    num("duration", cfg.duration);
    num("veh_arrival_rate", cfg.veh_arrival_rate);
    num("desired_speed_ped", cfg.desired_speed_ped);
    num("decel_max", cfg.decel_max);
    num("ttc_threshold", cfg.ttc_threshold);
    num("safety_margin", cfg.safety_margin);

    if (j.contains("ped_arrival_rate")) {
        const json& p = j["ped_arrival_rate"];
        if (p.is_number()) {
            cfg.ped_arrival_rate = p.get<double>();
        } else if (p.is_object()) {
            for (const auto& [key, value] : p.items()) {
                if (!kSideKeys.count(key))
                    throw ConfigError("invalid config: unknown ped_arrival_rate key '" + key + "'");
                const double rate = as_number(value, "ped_arrival_rate." + key);
                if (key == "side_a") cfg.ped_rate_side_a = rate;
                else cfg.ped_rate_side_b = rate;
            }
            cfg.ped_arrival_rate =
                cfg.ped_rate_side_a.value_or(0.0) + cfg.ped_rate_side_b.value_or(0.0);
        } else {
            throw ConfigError("invalid config: 'ped_arrival_rate' must be a number or object");
        }
    }

    if (j.contains("desired_speed_veh")) {
        const json& v = j["desired_speed_veh"];
        if (v.is_number()) {
            cfg.desired_speed_veh = {v.get<double>(), 0.0};
        } else if (v.is_object()) {
            for (const auto& [key, value] : v.items()) {
                if (key == "mean") cfg.desired_speed_veh.mean = as_number(value, "desired_speed_veh.mean");
                else if (key == "spread") cfg.desired_speed_veh.spread = as_number(value, "desired_speed_veh.spread");
                else throw ConfigError("invalid config: unknown desired_speed_veh key '" + key + "'");
            }
        } else {
            throw ConfigError("invalid config: 'desired_speed_veh' must be a number or object");
        }
    }

    if (j.contains("p_deliberate")) cfg.p_deliberate = parse_p_deliberate(j["p_deliberate"]);

    if (j.contains("resume_scope")) {
        const json& r = j["resume_scope"];
        if (r == "own_lane") cfg.resume_scope = ResumeScope::OwnLane;
        else if (r == "full_zebra") cfg.resume_scope = ResumeScope::FullZebra;
        else throw ConfigError("invalid config: 'resume_scope' must be 'own_lane' or 'full_zebra'");
    }

    if (j.contains("los_bands")) {
        const json& b = j["los_bands"];
        if (!b.is_array() || b.size() != cfg.los_bands.size())
            throw ConfigError("invalid config: 'los_bands' must be an array of 5 numbers");
        for (std::size_t i = 0; i < cfg.los_bands.size(); ++i)
            cfg.los_bands[i] = as_number(b[i], "los_bands");
    }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer())
            throw ConfigError("invalid config: 'seed' must be an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }

    cfg.validate();
    return cfg;
}

ScenarioConfig ScenarioConfig::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string ScenarioConfig::echo_json(int indent) const {
    const Geometry geom(*this);
    json j;
    j["lane_count"] = lane_count;
    j["lane_width"] = lane_width;
    j["road_length"] = road_length;
    j["crosswalk_position"] = crosswalk_position;
    j["crosswalk_width"] = crosswalk_width;
    j["curb_band_depth"] = curb_band_depth;
    j["cell_size"] = cell_size;
    j["time_step"] = time_step;
    j["duration"] = duration;
    j["veh_arrival_rate"] = veh_arrival_rate;
    j["ped_arrival_rate"]["side_a"] = ped_rate(Side::A);
    j["ped_arrival_rate"]["side_b"] = ped_rate(Side::B);
    j["desired_speed_veh"]["mean"] = desired_speed_veh.mean;
    j["desired_speed_veh"]["spread"] = desired_speed_veh.spread;
    j["desired_speed_ped"] = desired_speed_ped;
    j["decel_max"] = decel_max;
    j["p_deliberate"]["default"] = p_deliberate.fallback;
    for (int s = 0; s < 2; ++s) {
        const RelativeSide side = static_cast<RelativeSide>(s);
        if (p_deliberate.per_side[s])
            j["p_deliberate"][to_string(side)]["default"] = *p_deliberate.per_side[s];
        for (int c = 0; c < 3; ++c)
            if (p_deliberate.per_side_category[s][c])
                j["p_deliberate"][to_string(side)][to_string(static_cast<PedCategory>(c))] =
                    *p_deliberate.per_side_category[s][c];
    }
    j["ttc_threshold"] = ttc_threshold;
    j["safety_margin"] = safety_margin;
    j["resume_scope"] = to_string(resume_scope);
    j["los_bands"] = los_bands;
    j["seed"] = seed;

    // derived rounding, so downstream analysis sees the effective geometry
    j["derived"]["curb_band_cells"] = geom.band_rows;
    j["derived"]["curb_band_depth_rounded"] = geom.band_rows * cell_size;
    j["derived"]["zebra_columns"] = geom.cols;
    j["derived"]["carriageway_rows"] = geom.carriage_rows;
    j["derived"]["grid_rows"] = geom.rows_total;
    j["derived"]["ticks"] = total_ticks();
    return j.dump(indent);
}

}  // namespace zebrasim
