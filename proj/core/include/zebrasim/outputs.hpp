#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zebrasim/episode.hpp"
#include "zebrasim/metrics.hpp"

namespace zebrasim {

/// episodes.csv: columns fixed:
/// episode_id,start_s,end_s,car_id,ped_ids,category,side,decision,min_ttc_s
/// ped_ids are semicolon-joined; min_ttc_s is empty when no conflict occurred.
std::string episodes_csv(std::span<const CrossingEpisode> episodes);

/// minutes.csv: columns fixed:
/// minute,vehicles,crossing_peds,episodes,pct_noncompliant
/// pct_noncompliant is empty for minutes without episodes.
std::string minutes_csv(std::span<const MinuteRecord> minutes);

/// FNV-1a 64-bit content hash, as a 16-digit hex string.
std::string fnv1a_hex(const std::string& content);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace zebrasim
