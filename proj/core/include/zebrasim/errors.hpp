#pragma once

#include <stdexcept>
#include <string>

namespace zebrasim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Calibration target below the forced-non-compliance floor.
struct InfeasibleTargetError : std::runtime_error {
    InfeasibleTargetError(const std::string& msg, double floor)
        : std::runtime_error(msg), floor_rate(floor) {}
    double floor_rate;
};

// Defect guard: a second compliance decision was requested for one episode.
struct DecisionAlreadyMadeError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace zebrasim
