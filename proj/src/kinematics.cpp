#include "drivestyle/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "drivestyle/error.hpp"

namespace drivestyle {

double haversine_m(GeoPoint a, GeoPoint b) noexcept {
    constexpr double kRad = std::numbers::pi / 180.0;
    const double phi1 = a.latitude * kRad;
    const double phi2 = b.latitude * kRad;
    const double dphi = phi2 - phi1;
    const double dlambda = (b.longitude - a.longitude) * kRad;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = std::min(1.0, s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2);
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

Series speed_series(const MovementPattern& p) {
    const std::size_t n = p.size();
    if (p.x.size() != n || p.y.size() != n) throw InvalidArgument("pattern arrays differ in length");
    if (n < 2) throw InvalidArgument("pattern needs at least two samples for a speed");
    Series s;
    s.values.reserve(n - 1);
    s.times.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto dt = static_cast<double>(p.t[i + 1] - p.t[i]);
        if (!(dt > 0.0)) throw InvalidArgument("timestamps must be strictly increasing");
        const double dist = p.coord_mode == CoordMode::geodetic
                                ? haversine_m({p.x[i], p.y[i]}, {p.x[i + 1], p.y[i + 1]})
                                : std::hypot(p.x[i + 1] - p.x[i], p.y[i + 1] - p.y[i]);
        s.values.push_back(dist / dt);
        s.times.push_back(0.5 * (static_cast<double>(p.t[i]) + static_cast<double>(p.t[i + 1])));
    }
    return s;
}

Series derivative_series(std::span<const double> values, std::span<const double> times) {
    if (values.size() != times.size()) throw InvalidArgument("values and times differ in length");
    if (values.size() < 2) throw InvalidArgument("a derivative needs at least two samples");
    Series d;
    d.values.reserve(values.size() - 1);
    d.times.reserve(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double dt = times[i + 1] - times[i];
        if (!(dt > 0.0)) throw InvalidArgument("times must be strictly increasing");
        d.values.push_back((values[i + 1] - values[i]) / dt);
        d.times.push_back(0.5 * (times[i] + times[i + 1]));
    }
    return d;
}

KinematicSeries kinematics_of(const MovementPattern& pattern) {
    if (pattern.size() < 4) {
        throw InvalidArgument("pattern too short for jerk (" + std::to_string(pattern.size()) + " samples)");
    }
    KinematicSeries k;
    k.speed = speed_series(pattern);
    k.acceleration = derivative_series(k.speed.values, k.speed.times);
    k.jerk = derivative_series(k.acceleration.values, k.acceleration.times);
    return k;
}

}  // namespace drivestyle
