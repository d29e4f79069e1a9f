#include "zebrasim/outputs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zebrasim/errors.hpp"

namespace zebrasim {

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

}  // namespace

std::string episodes_csv(std::span<const CrossingEpisode> episodes) {
    std::ostringstream out;
    out << "episode_id,start_s,end_s,car_id,ped_ids,category,side,decision,min_ttc_s\n";
    for (const CrossingEpisode& ep : episodes) {
        out << ep.id << ',' << fmt("%.1f", ep.start_time) << ',' << fmt("%.1f", ep.end_time)
            << ',' << ep.car_id << ',';
        for (std::size_t i = 0; i < ep.ped_ids.size(); ++i) {
            if (i) out << ';';
            out << ep.ped_ids[i];
        }
        out << ',' << to_string(ep.category) << ',' << to_string(ep.side) << ','
            << (ep.decision ? to_string(ep.decision->kind) : "undecided") << ',';
        if (std::isfinite(ep.min_ttc)) out << fmt("%.3f", ep.min_ttc);
        out << '\n';
    }
    return out.str();
}

std::string minutes_csv(std::span<const MinuteRecord> minutes) {
    std::ostringstream out;
    out << "minute,vehicles,crossing_peds,episodes,pct_noncompliant\n";
    for (const MinuteRecord& m : minutes) {
        out << m.minute << ',' << m.n_vehicles << ',' << m.n_crossing_peds << ','
            << m.n_episodes << ',';
        if (m.pct_noncompliant) out << fmt("%.2f", *m.pct_noncompliant);
        out << '\n';
    }
    return out.str();
}

std::string fnv1a_hex(const std::string& content) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("failed while writing file: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace zebrasim
