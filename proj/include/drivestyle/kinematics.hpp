#pragma once

#include <span>
#include <vector>

#include "drivestyle/preprocess.hpp"

namespace drivestyle {

inline constexpr double kEarthRadiusM = 6371000.0;

struct GeoPoint {
    double longitude;  // degrees
    double latitude;   // degrees
};

/// Great-circle distance in metres on a sphere of radius kEarthRadiusM.
double haversine_m(GeoPoint a, GeoPoint b) noexcept;

/// A sampled derivative: values[i] is located at times[i].
struct Series {
    std::vector<double> values;
    std::vector<double> times;
};

/// Path speed between consecutive samples (m/s), located at interval midpoints.
Series speed_series(const MovementPattern& pattern);

/// First divided difference of a sampled signal, re-anchored at midpoints.
/// Requires matching lengths >= 2 and strictly increasing times.
Series derivative_series(std::span<const double> values, std::span<const double> times);

struct KinematicSeries {
    Series speed;         // length n-1, m/s
    Series acceleration;  // length n-2, m/s^2
    Series jerk;          // length n-3, m/s^3
};

/// Speeds, accelerations and jerks of a pattern with at least 4 samples.
KinematicSeries kinematics_of(const MovementPattern& pattern);

}  // namespace drivestyle
