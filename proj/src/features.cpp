#include "drivestyle/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drivestyle/error.hpp"

namespace drivestyle {
namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double window_ratio(std::span<const double> jerks) {
    const JerkStats s = jerk_stats(jerks);
    if (s.stddev == 0.0) return 0.0;
    if (s.mean == 0.0) return kInfiniteRatio;
    return std::min(kInfiniteRatio, s.stddev / std::abs(s.mean));
}

}  // namespace

const char* to_string(MmkClass c) noexcept {
    switch (c) {
        case MmkClass::defensive: return "defensive";
        case MmkClass::aggressive: return "aggressive";
        case MmkClass::calm: return "calm";
        case MmkClass::normal: return "normal";
    }
    return "?";
}

MmkClass mmk_class_from_string(std::string_view text) {
    for (auto c : {MmkClass::defensive, MmkClass::aggressive, MmkClass::calm, MmkClass::normal}) {
        if (text == to_string(c)) return c;
    }
    throw InvalidArgument("unknown MMK class '" + std::string(text) + "'");
}

JerkStats jerk_stats(std::span<const double> jerks) {
    if (jerks.empty()) throw InvalidArgument("jerk statistics of an empty array");
    double sum = 0.0;
    for (double j : jerks) sum += j;
    const double mean = sum / static_cast<double>(jerks.size());
    double ss = 0.0;
    for (double j : jerks) ss += (j - mean) * (j - mean);
    return {mean, std::sqrt(ss / static_cast<double>(jerks.size()))};
}

double omega_from_stddev(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("standard deviation must be finite and >= 0");
    if (sigma == 0.0) return 0.0;
    return std::exp(-1.0 / std::sqrt(sigma));
}

double omega(std::span<const double> jerks) {
    if (jerks.empty()) throw InvalidArgument("omega of an empty jerk array");
    if (!std::all_of(jerks.begin(), jerks.end(), [](double j) { return std::isfinite(j); })) {
        throw InvalidArgument("omega of a non-finite jerk array");
    }
    return omega_from_stddev(jerk_stats(jerks).stddev);
}

MmkResult mmk_feature(const KinematicSeries& kin, const MmkOptions& options) {
    if (!(options.window > 0.0)) throw InvalidArgument("MMK window must be positive");
    const auto& jerks = kin.jerk.values;
    const auto& times = kin.jerk.times;
    if (jerks.empty()) throw InvalidArgument("MMK feature needs at least one jerk sample");

    std::vector<double> ratios;
    std::size_t begin = 0;
    while (begin < jerks.size()) {
        const auto bucket = static_cast<long long>(std::floor((times[begin] - times.front()) / options.window));
        std::size_t end = begin + 1;
        while (end < jerks.size() &&
               static_cast<long long>(std::floor((times[end] - times.front()) / options.window)) == bucket) {
            ++end;
        }
        ratios.push_back(window_ratio(std::span(jerks).subspan(begin, end - begin)));
        begin = end;
    }

    const double ratio = median_of(std::move(ratios));
    MmkClass label;
    if (options.three_way) {
        label = ratio >= options.agg_threshold    ? MmkClass::aggressive
                : ratio >= options.norm_threshold ? MmkClass::normal
                                                  : MmkClass::calm;
    } else {
        label = ratio >= options.agg_threshold ? MmkClass::aggressive : MmkClass::defensive;
    }
    return {ratio, label};
}

FeatureRecord features_of(const MovementPattern& pattern, const FeatureOptions& options) {
    const KinematicSeries kin = kinematics_of(pattern);
    std::vector<double> jerks = kin.jerk.values;
    if (options.jerk_abs) {
        for (double& j : jerks) j = std::abs(j);
    }
    FeatureRecord r;
    r.pattern_id = pattern.id;
    r.omega = omega(jerks);
    const JerkStats s = jerk_stats(jerks);
    r.jerk_mean = s.mean;
    r.jerk_std = s.stddev;
    const MmkResult m = mmk_feature(kin, options.mmk);
    r.mmk_ratio = m.ratio;
    r.mmk_class = m.label;
    return r;
}

FeatureTable feature_table(std::span<const MovementPattern> patterns, const FeatureOptions& options) {
    FeatureTable table;
    table.records.reserve(patterns.size());
    for (const auto& p : patterns) {
        try {
            table.records.push_back(features_of(p, options));
        } catch (const Error& e) {
            table.diagnostics.push_back(p.id + ": " + e.what());
        }
    }
    std::stable_sort(table.records.begin(), table.records.end(),
                     [](const FeatureRecord& a, const FeatureRecord& b) { return a.pattern_id < b.pattern_id; });
    return table;
}

double feature_value(const FeatureRecord& record, std::string_view name) {
    if (name == "omega") return record.omega;
    if (name == "jerk_mean") return record.jerk_mean;
    if (name == "jerk_std") return record.jerk_std;
    if (name == "mmk_ratio") return record.mmk_ratio;
    throw InvalidArgument("unknown feature '" + std::string(name) + "'");
}

std::vector<std::pair<std::size_t, double>> sorted_feature_curve(std::span<const FeatureRecord> table,
                                                                 std::string_view feature_name) {
    if (table.empty()) throw InvalidArgument("sorted feature curve of an empty table");
    std::vector<double> values;
    values.reserve(table.size());
    for (const auto& r : table) values.push_back(feature_value(r, feature_name));
    std::sort(values.begin(), values.end());
    std::vector<std::pair<std::size_t, double>> curve;
    curve.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) curve.emplace_back(i + 1, values[i]);
    return curve;
}

}  // namespace drivestyle
