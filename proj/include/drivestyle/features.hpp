#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drivestyle/kinematics.hpp"
#include "drivestyle/preprocess.hpp"

namespace drivestyle {

/// Stand-in for an infinite window ratio (zero mean jerk, non-zero spread).
inline constexpr double kInfiniteRatio = 1e12;

enum class MmkClass { defensive, aggressive, calm, normal };

const char* to_string(MmkClass c) noexcept;
MmkClass mmk_class_from_string(std::string_view text);

struct JerkStats {
    double mean;
    double stddev;  // population
};

/// Arithmetic mean and population standard deviation. Throws on empty input.
JerkStats jerk_stats(std::span<const double> jerks);

/// omega = exp(-1 / sqrt(sigma)) with sigma the population standard deviation
/// of the jerks; 0 when sigma is 0. Throws on empty or non-finite input.
double omega(std::span<const double> jerks);

/// Same as omega() for a precomputed standard deviation.
double omega_from_stddev(double sigma);

struct MmkOptions {
    double window = 10.0;  // seconds
    double norm_threshold = 0.5;
    double agg_threshold = 1.0;
    /// calm < norm_threshold <= normal < agg_threshold <= aggressive instead of
    /// the two-class defensive/aggressive split.
    bool three_way = false;
};

struct MmkResult {
    double ratio;
    MmkClass label;
};

/// Median over tumbling windows (anchored at the first jerk time) of
/// stddev/|mean| of the jerk, thresholded into a class.
MmkResult mmk_feature(const KinematicSeries& kin, const MmkOptions& options = {});

struct FeatureRecord {
    std::string pattern_id;
    double omega = 0.0;
    double jerk_mean = 0.0;
    double jerk_std = 0.0;
    double mmk_ratio = 0.0;
    MmkClass mmk_class = MmkClass::defensive;
};

struct FeatureOptions {
    /// Use |jerk| instead of the signed jerk for omega and the jerk statistics.
    bool jerk_abs = false;
    MmkOptions mmk;
};

struct FeatureTable {
    std::vector<FeatureRecord> records;  // sorted by pattern_id
    std::vector<std::string> diagnostics;
};

FeatureRecord features_of(const MovementPattern& pattern, const FeatureOptions& options = {});

/// One record per pattern, sorted by pattern_id. Patterns whose kinematics
/// cannot be computed are skipped with a diagnostic.
FeatureTable feature_table(std::span<const MovementPattern> patterns, const FeatureOptions& options = {});

inline constexpr std::string_view kFeatureNames[] = {"omega", "jerk_mean", "jerk_std", "mmk_ratio"};

/// Value of a named numeric feature. Throws InvalidArgument for unknown names.
double feature_value(const FeatureRecord& record, std::string_view name);

/// (1-based rank, value) pairs of the named feature in ascending order.
std::vector<std::pair<std::size_t, double>> sorted_feature_curve(std::span<const FeatureRecord> table,
                                                                 std::string_view feature_name);

}  // namespace drivestyle
