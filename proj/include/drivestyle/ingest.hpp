#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drivestyle {

/// One timestamped geographic sample of one driver.
struct GpsLog {
    std::string driver_id;
    std::int64_t timestamp = 0;  // seconds since the Unix epoch
    double longitude = 0.0;      // degrees
    double latitude = 0.0;       // degrees

    friend bool operator==(const GpsLog&, const GpsLog&) = default;
};

/// Closed longitude/latitude box.
class Region {
public:
    /// Throws InvalidArgument unless min < max on both axes and the box lies
    /// within the valid coordinate ranges.
    Region(double min_longitude, double max_longitude, double min_latitude, double max_latitude);

    /// Parses "min_lon,max_lon,min_lat,max_lat".
    static Region parse(std::string_view text);

    bool contains(double longitude, double latitude) const noexcept {
        return longitude >= min_lon_ && longitude <= max_lon_ && latitude >= min_lat_ &&
               latitude <= max_lat_;
    }

    double min_longitude() const noexcept { return min_lon_; }
    double max_longitude() const noexcept { return max_lon_; }
    double min_latitude() const noexcept { return min_lat_; }
    double max_latitude() const noexcept { return max_lat_; }

private:
    double min_lon_, max_lon_, min_lat_, max_lat_;
};

/// All logs of one driver, sorted by timestamp (non-decreasing).
struct DriverRecord {
    std::string driver_id;
    std::vector<GpsLog> logs;

    friend bool operator==(const DriverRecord&, const DriverRecord&) = default;
};

/// Throws InvalidArgument when a coordinate or the timestamp is out of range.
void validate(const GpsLog& log);

/// Converts a wall-clock time "YYYY-MM-DD HH:MM:SS" observed at a fixed
/// offset from UTC into epoch seconds. Throws ParseError.
std::int64_t parse_wall_time(std::string_view text, int utc_offset_hours);

/// Inverse of parse_wall_time.
std::string format_wall_time(std::int64_t epoch_seconds, int utc_offset_hours);

/// Parses `driver_id,YYYY-MM-DD HH:MM:SS,lon,lat`. Throws ParseError with a
/// diagnostic naming the offending field.
GpsLog parse_tdrive_line(std::string_view line, int utc_offset_hours = 8);

/// Renders a log in the T-Drive layout with 6-decimal coordinates (no newline).
std::string format_tdrive_line(const GpsLog& log, int utc_offset_hours = 8);

/// Column mapping for delimited files that are not in the T-Drive layout.
struct CsvColumnMap {
    int driver_col = 0;
    int time_col = 1;
    /// strftime-style pattern understood by std::get_time, or "epoch" for
    /// integer seconds.
    std::string time_format = "%Y-%m-%d %H:%M:%S";
    int lon_col = 2;
    int lat_col = 3;
    bool has_header = false;

    /// Reads the JSON adapter config object. Throws ParseError.
    static CsvColumnMap from_json(std::string_view json_text);
};

GpsLog parse_csv_line(std::string_view line, const CsvColumnMap& columns, int utc_offset_hours = 8);

enum class InputFormat { tdrive, csv };

struct LoadOptions {
    InputFormat format = InputFormat::tdrive;
    CsvColumnMap columns;
    int utc_offset_hours = 8;
    /// Maximum number of per-line diagnostics retained.
    std::size_t max_diagnostics = 100;
};

struct LoadResult {
    /// Sorted by driver_id; logs within a driver stably sorted by timestamp.
    std::vector<DriverRecord> drivers;
    std::size_t lines_read = 0;
    std::size_t skipped = 0;
    std::vector<std::string> diagnostics;
};

/// Reads every file, grouping logs by driver. Throws IoError naming the first
/// unreadable file.
LoadResult load_dataset(std::span<const std::filesystem::path> paths, const LoadOptions& options = {});

/// Expands directories into their regular files (sorted by name, one level);
/// plain files are kept as given.
std::vector<std::filesystem::path> expand_inputs(std::span<const std::filesystem::path> paths);

/// Keeps the logs inside the closed box, preserving order.
DriverRecord filter_region(const DriverRecord& record, const Region& region);

}  // namespace drivestyle
