#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "drivestyle/ingest.hpp"

namespace drivestyle {

enum class CoordMode { geodetic, planar };

const char* to_string(CoordMode mode) noexcept;
CoordMode coord_mode_from_string(const std::string& text);

/// A contiguous run of samples during which the vehicle never stands still.
///
/// In geodetic mode x/y hold longitude/latitude in degrees; in planar mode
/// they are metres.
struct MovementPattern {
    std::string id;
    CoordMode coord_mode = CoordMode::geodetic;
    std::vector<std::int64_t> t;
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const noexcept { return t.size(); }

    friend bool operator==(const MovementPattern&, const MovementPattern&) = default;
};

/// A run of consecutive logs of one driver.
using LogRun = std::vector<GpsLog>;

enum class SplitPolicy { balanced, greedy };

SplitPolicy split_policy_from_string(const std::string& text);

struct PreprocessConfig {
    std::size_t min_len = 10;
    std::size_t max_len = 24;
    std::int64_t max_gap = 60;  // seconds
    SplitPolicy split_policy = SplitPolicy::balanced;
    CoordMode coord_mode = CoordMode::geodetic;

    /// Throws InvalidArgument on min_len < 1, min_len > max_len or max_gap <= 0.
    void validate() const;
};

struct PreprocessSummary {
    std::size_t logs_in = 0;
    std::size_t duplicates_removed = 0;
    std::size_t standstill_removed = 0;
    std::size_t patterns_out = 0;

    PreprocessSummary& operator+=(const PreprocessSummary& other) noexcept;
};

struct PreprocessResult {
    std::vector<MovementPattern> patterns;
    PreprocessSummary summary;
};

/// Collapses each run of consecutive logs with identical (timestamp, lon, lat)
/// to its first log.
DriverRecord dedup_exact(const DriverRecord& record);

/// Drops every log whose position equals its predecessor's and splits the
/// sequence after the first log of each stationary run. Consecutive positions
/// always differ inside a returned run.
std::vector<LogRun> remove_standstill(const DriverRecord& record);

/// Splits wherever the time step exceeds max_gap. Non-positive steps (equal
/// timestamps that survived deduplication) split as well, so every returned
/// run has strictly increasing timestamps.
std::vector<LogRun> split_on_gaps(const LogRun& run, std::int64_t max_gap);

/// Drops runs shorter than min_len and splits runs longer than max_len.
///
/// Balanced policy: ceil(n / max_len) chunks, sizes differing by at most one,
/// larger chunks first. Greedy policy: max_len-sized prefixes with the remainder
/// last. Chunks shorter than min_len are dropped in both cases.
std::vector<LogRun> enforce_length_bounds(const LogRun& run, std::size_t min_len = 10,
                                          std::size_t max_len = 24,
                                          SplitPolicy policy = SplitPolicy::balanced);

/// dedup_exact -> remove_standstill -> split_on_gaps -> enforce_length_bounds
/// for each driver. Pattern ids are `driverId#k`, k counting from 0 in
/// chronological order per driver.
PreprocessResult preprocess_pipeline(std::span<const DriverRecord> records, const PreprocessConfig& config = {});

/// Returns an empty string if the pattern satisfies every movement-pattern
/// invariant for the given bounds, else a description of the first violation.
std::string check_pattern(const MovementPattern& pattern, std::size_t min_len = 10, std::size_t max_len = 24);

/// Views a pattern as a single-driver record (driver id = pattern id).
DriverRecord pattern_to_record(const MovementPattern& pattern);

}  // namespace drivestyle
