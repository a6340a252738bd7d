#include "drivestyle/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "drivestyle/error.hpp"

namespace drivestyle {
namespace {

// Days since 1970-01-01 for a proleptic Gregorian date (H. Hinnant's algorithm).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
    std::int64_t year;
    unsigned month, day;
};

Civil civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return {static_cast<std::int64_t>(yoe) + era * 400 + (m <= 2), m, d};
}

bool is_leap(std::int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(std::int64_t y, unsigned m) {
    static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

std::int64_t epoch_from_fields(std::int64_t year, unsigned month, unsigned day, unsigned hour,
                               unsigned minute, unsigned second, int utc_offset_hours) {
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month) || hour > 23 ||
        minute > 59 || second > 59) {
        throw ParseError("datetime field out of range");
    }
    const std::int64_t local = days_from_civil(year, month, day) * 86400 + hour * 3600 +
                               minute * 60 + second;
    return local - static_cast<std::int64_t>(utc_offset_hours) * 3600;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

unsigned parse_digits(std::string_view text) {
    unsigned value = 0;
    if (text.empty() || !parse_number(text, value) ||
        !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError("unparsable datetime '" + std::string(text) + "'");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_coordinate(std::string_view text, const char* name) {
    double value = 0.0;
    text = trim(text);
    if (text.empty() || !parse_number(text, value) || !std::isfinite(value)) {
        throw ParseError(std::string("unparsable ") + name + " '" + std::string(text) + "'");
    }
    return value;
}

GpsLog finish(std::string_view driver, std::int64_t timestamp, double lon, double lat) {
    driver = trim(driver);
    if (driver.empty()) throw ParseError("empty driver id");
    GpsLog log{std::string(driver), timestamp, lon, lat};
    try {
        validate(log);
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
    return log;
}

}  // namespace

Region::Region(double min_longitude, double max_longitude, double min_latitude, double max_latitude)
    : min_lon_(min_longitude), max_lon_(max_longitude), min_lat_(min_latitude), max_lat_(max_latitude) {
    if (!(min_lon_ < max_lon_) || !(min_lat_ < max_lat_)) {
        throw InvalidArgument("region requires min < max on both axes");
    }
    if (min_lon_ < -180.0 || max_lon_ > 180.0 || min_lat_ < -90.0 || max_lat_ > 90.0) {
        throw InvalidArgument("region exceeds the valid coordinate range");
    }
}

Region Region::parse(std::string_view text) {
    const auto fields = split_fields(text, ',');
    if (fields.size() != 4) {
        throw InvalidArgument("bbox must be min_lon,max_lon,min_lat,max_lat");
    }
    double v[4];
    for (int i = 0; i < 4; ++i) {
        if (!parse_number(trim(fields[i]), v[i]) || !std::isfinite(v[i])) {
            throw InvalidArgument("bbox field '" + std::string(fields[i]) + "' is not a number");
        }
    }
    return Region(v[0], v[1], v[2], v[3]);
}

void validate(const GpsLog& log) {
    if (!(log.longitude >= -180.0 && log.longitude <= 180.0)) {
        throw InvalidArgument("longitude out of range");
    }
    if (!(log.latitude >= -90.0 && log.latitude <= 90.0)) {
        throw InvalidArgument("latitude out of range");
    }
    if (log.timestamp < 0) throw InvalidArgument("timestamp before the epoch");
}

std::int64_t parse_wall_time(std::string_view text, int utc_offset_hours) {
    text = trim(text);
    // YYYY-MM-DD HH:MM:SS
    if (text.size() != 19 || text[4] != '-' || text[7] != '-' || text[10] != ' ' ||
        text[13] != ':' || text[16] != ':') {
        throw ParseError("unparsable datetime '" + std::string(text) + "'");
    }
    return epoch_from_fields(parse_digits(text.substr(0, 4)), parse_digits(text.substr(5, 2)),
                             parse_digits(text.substr(8, 2)), parse_digits(text.substr(11, 2)),
                             parse_digits(text.substr(14, 2)), parse_digits(text.substr(17, 2)),
                             utc_offset_hours);
}

std::string format_wall_time(std::int64_t epoch_seconds, int utc_offset_hours) {
    const std::int64_t local = epoch_seconds + static_cast<std::int64_t>(utc_offset_hours) * 3600;
    std::int64_t days = local / 86400;
    std::int64_t secs = local % 86400;
    if (secs < 0) {
        secs += 86400;
        --days;
    }
    const Civil c = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02u %02lld:%02lld:%02lld",
                  static_cast<long long>(c.year), c.month, c.day,
                  static_cast<long long>(secs / 3600), static_cast<long long>(secs / 60 % 60),
                  static_cast<long long>(secs % 60));
    return buf;
}

GpsLog parse_tdrive_line(std::string_view line, int utc_offset_hours) {
    const auto fields = split_fields(trim(line), ',');
    if (fields.size() != 4) {
        throw ParseError("expected 4 fields, found " + std::to_string(fields.size()));
    }
    const std::int64_t ts = parse_wall_time(fields[1], utc_offset_hours);
    return finish(fields[0], ts, parse_coordinate(fields[2], "longitude"),
                  parse_coordinate(fields[3], "latitude"));
}

std::string format_tdrive_line(const GpsLog& log, int utc_offset_hours) {
    char coords[64];
    std::snprintf(coords, sizeof coords, "%.6f,%.6f", log.longitude, log.latitude);
    return log.driver_id + "," + format_wall_time(log.timestamp, utc_offset_hours) + "," + coords;
}

CsvColumnMap CsvColumnMap::from_json(std::string_view json_text) {
    CsvColumnMap map;
    try {
        const auto j = nlohmann::json::parse(json_text);
        map.driver_col = j.at("driver_col").get<int>();
        map.time_col = j.at("time_col").get<int>();
        map.time_format = j.at("time_format").get<std::string>();
        map.lon_col = j.at("lon_col").get<int>();
        map.lat_col = j.at("lat_col").get<int>();
        map.has_header = j.value("has_header", false);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid CSV adapter config: ") + e.what());
    }
    for (int col : {map.driver_col, map.time_col, map.lon_col, map.lat_col}) {
        if (col < 0) throw ParseError("invalid CSV adapter config: negative column index");
    }
    return map;
}

GpsLog parse_csv_line(std::string_view line, const CsvColumnMap& columns, int utc_offset_hours) {
    const auto fields = split_fields(trim(line), ',');
    const int needed = std::max({columns.driver_col, columns.time_col, columns.lon_col, columns.lat_col});
    if (static_cast<int>(fields.size()) <= needed) {
        throw ParseError("expected at least " + std::to_string(needed + 1) + " fields, found " +
                         std::to_string(fields.size()));
    }
    const std::string_view time_text = trim(fields[columns.time_col]);
    std::int64_t ts = 0;
    if (columns.time_format == "epoch") {
        if (!parse_number(time_text, ts)) {
            throw ParseError("unparsable epoch time '" + std::string(time_text) + "'");
        }
    } else {
        std::tm tm{};
        std::istringstream in{std::string(time_text)};
        in >> std::get_time(&tm, columns.time_format.c_str());
        if (in.fail()) throw ParseError("unparsable datetime '" + std::string(time_text) + "'");
        ts = epoch_from_fields(tm.tm_year + 1900, static_cast<unsigned>(tm.tm_mon + 1),
                               static_cast<unsigned>(tm.tm_mday), static_cast<unsigned>(tm.tm_hour),
                               static_cast<unsigned>(tm.tm_min), static_cast<unsigned>(tm.tm_sec),
                               utc_offset_hours);
    }
    return finish(fields[columns.driver_col], ts, parse_coordinate(fields[columns.lon_col], "longitude"),
                  parse_coordinate(fields[columns.lat_col], "latitude"));
}

std::vector<std::filesystem::path> expand_inputs(std::span<const std::filesystem::path> paths) {
    std::vector<std::filesystem::path> out;
    for (const auto& p : paths) {
        std::error_code ec;
        if (std::filesystem::is_directory(p, ec)) {
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(p, ec)) {
                if (entry.is_regular_file()) files.push_back(entry.path());
            }
            if (ec) throw IoError("cannot list directory '" + p.string() + "': " + ec.message());
            std::sort(files.begin(), files.end());
            out.insert(out.end(), files.begin(), files.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

LoadResult load_dataset(std::span<const std::filesystem::path> paths, const LoadOptions& options) {
    LoadResult result;
    std::map<std::string, std::vector<GpsLog>> groups;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot read '" + path.string() + "'");
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (options.format == InputFormat::csv && options.columns.has_header && line_no == 1) continue;
            if (trim(line).empty()) continue;
            ++result.lines_read;
            try {
                GpsLog log = options.format == InputFormat::tdrive
                                 ? parse_tdrive_line(line, options.utc_offset_hours)
                                 : parse_csv_line(line, options.columns, options.utc_offset_hours);
                groups[log.driver_id].push_back(std::move(log));
            } catch (const ParseError& e) {
                ++result.skipped;
                if (result.diagnostics.size() < options.max_diagnostics) {
                    result.diagnostics.push_back(path.string() + ":" + std::to_string(line_no) + ": " +
                                                 e.what());
                }
            }
        }
        if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
    }
    result.drivers.reserve(groups.size());
    for (auto& [id, logs] : groups) {
        std::stable_sort(logs.begin(), logs.end(),
                         [](const GpsLog& a, const GpsLog& b) { return a.timestamp < b.timestamp; });
        result.drivers.push_back(DriverRecord{id, std::move(logs)});
    }
    return result;
}

DriverRecord filter_region(const DriverRecord& record, const Region& region) {
    DriverRecord out{record.driver_id, {}};
    std::copy_if(record.logs.begin(), record.logs.end(), std::back_inserter(out.logs),
                 [&](const GpsLog& log) { return region.contains(log.longitude, log.latitude); });
    return out;
}

}  // namespace drivestyle
