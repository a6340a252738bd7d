#include "drivestyle/preprocess.hpp"

#include <cmath>

#include "drivestyle/error.hpp"

namespace drivestyle {
namespace {

bool same_position(const GpsLog& a, const GpsLog& b) noexcept {
    return a.longitude == b.longitude && a.latitude == b.latitude;
}

MovementPattern to_pattern(const LogRun& run, std::string id, CoordMode mode) {
    MovementPattern p;
    p.id = std::move(id);
    p.coord_mode = mode;
    p.t.reserve(run.size());
    p.x.reserve(run.size());
    p.y.reserve(run.size());
    for (const auto& log : run) {
        p.t.push_back(log.timestamp);
        p.x.push_back(log.longitude);
        p.y.push_back(log.latitude);
    }
    return p;
}

}  // namespace

const char* to_string(CoordMode mode) noexcept {
    return mode == CoordMode::geodetic ? "geodetic" : "planar";
}

CoordMode coord_mode_from_string(const std::string& text) {
    if (text == "geodetic") return CoordMode::geodetic;
    if (text == "planar") return CoordMode::planar;
    throw InvalidArgument("unknown coord_mode '" + text + "'");
}

SplitPolicy split_policy_from_string(const std::string& text) {
    if (text == "balanced") return SplitPolicy::balanced;
    if (text == "greedy") return SplitPolicy::greedy;
    throw InvalidArgument("unknown split policy '" + text + "'");
}

void PreprocessConfig::validate() const {
    if (min_len < 1) throw InvalidArgument("min_len must be at least 1");
    if (min_len > max_len) throw InvalidArgument("min_len must not exceed max_len");
    if (max_gap <= 0) throw InvalidArgument("max_gap must be positive");
}

PreprocessSummary& PreprocessSummary::operator+=(const PreprocessSummary& other) noexcept {
    logs_in += other.logs_in;
    duplicates_removed += other.duplicates_removed;
    standstill_removed += other.standstill_removed;
    patterns_out += other.patterns_out;
    return *this;
}

DriverRecord dedup_exact(const DriverRecord& record) {
    DriverRecord out{record.driver_id, {}};
    out.logs.reserve(record.logs.size());
    for (const auto& log : record.logs) {
        if (!out.logs.empty()) {
            const auto& prev = out.logs.back();
            if (prev.timestamp == log.timestamp && same_position(prev, log)) continue;
        }
        out.logs.push_back(log);
    }
    return out;
}

std::vector<LogRun> remove_standstill(const DriverRecord& record) {
    std::vector<LogRun> runs;
    LogRun current;
    const GpsLog* prev = nullptr;
    bool stationary = false;
    for (const auto& log : record.logs) {
        if (prev != nullptr && same_position(*prev, log)) {
            // First log of the stop stays as the run's last sample.
            if (!stationary && !current.empty()) {
                runs.push_back(std::move(current));
                current.clear();
            }
            stationary = true;
        } else {
            stationary = false;
            current.push_back(log);
        }
        prev = &log;
    }
    if (!current.empty()) runs.push_back(std::move(current));
    return runs;
}

std::vector<LogRun> split_on_gaps(const LogRun& run, std::int64_t max_gap) {
    if (max_gap <= 0) throw InvalidArgument("max_gap must be positive");
    std::vector<LogRun> runs;
    LogRun current;
    for (const auto& log : run) {
        if (!current.empty()) {
            const std::int64_t dt = log.timestamp - current.back().timestamp;
            if (dt > max_gap || dt <= 0) {
                runs.push_back(std::move(current));
                current.clear();
            }
        }
        current.push_back(log);
    }
    if (!current.empty()) runs.push_back(std::move(current));
    return runs;
}

std::vector<LogRun> enforce_length_bounds(const LogRun& run, std::size_t min_len, std::size_t max_len,
                                          SplitPolicy policy) {
    if (min_len > max_len || max_len == 0) throw InvalidArgument("require 0 < min_len <= max_len");
    const std::size_t n = run.size();
    std::vector<LogRun> chunks;
    if (n < min_len) return chunks;

    std::vector<std::size_t> sizes;
    if (n <= max_len) {
        sizes.push_back(n);
    } else if (policy == SplitPolicy::balanced) {
        const std::size_t count = (n + max_len - 1) / max_len;
        const std::size_t base = n / count;
        const std::size_t extra = n % count;
        for (std::size_t i = 0; i < count; ++i) sizes.push_back(base + (i < extra ? 1 : 0));
    } else {
        for (std::size_t left = n; left > 0;) {
            const std::size_t s = std::min(left, max_len);
            sizes.push_back(s);
            left -= s;
        }
    }

    std::size_t offset = 0;
    for (std::size_t s : sizes) {
        if (s >= min_len) {
            chunks.emplace_back(run.begin() + static_cast<std::ptrdiff_t>(offset),
                                run.begin() + static_cast<std::ptrdiff_t>(offset + s));
        }
        offset += s;
    }
    return chunks;
}

PreprocessResult preprocess_pipeline(std::span<const DriverRecord> records, const PreprocessConfig& config) {
    config.validate();
    PreprocessResult result;
    for (const auto& record : records) {
        PreprocessSummary s;
        s.logs_in = record.logs.size();
        const DriverRecord deduped = dedup_exact(record);
        s.duplicates_removed = record.logs.size() - deduped.logs.size();

        const auto moving = remove_standstill(deduped);
        std::size_t kept = 0;
        for (const auto& run : moving) kept += run.size();
        s.standstill_removed = deduped.logs.size() - kept;

        std::size_t k = 0;
        for (const auto& run : moving) {
            for (const auto& piece : split_on_gaps(run, config.max_gap)) {
                for (auto& chunk : enforce_length_bounds(piece, config.min_len, config.max_len, config.split_policy)) {
                    result.patterns.push_back(
                        to_pattern(chunk, record.driver_id + "#" + std::to_string(k++), config.coord_mode));
                }
            }
        }
        s.patterns_out = k;
        result.summary += s;
    }
    return result;
}

std::string check_pattern(const MovementPattern& p, std::size_t min_len, std::size_t max_len) {
    const std::size_t n = p.t.size();
    if (p.x.size() != n || p.y.size() != n) return "coordinate and time arrays differ in length";
    if (n < min_len || n > max_len) {
        return "length " + std::to_string(n) + " outside [" + std::to_string(min_len) + ", " +
               std::to_string(max_len) + "]";
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(p.x[i]) || !std::isfinite(p.y[i])) return "non-finite coordinate";
        if (i == 0) continue;
        if (p.t[i] <= p.t[i - 1]) return "timestamps not strictly increasing at index " + std::to_string(i);
        if (p.x[i] == p.x[i - 1] && p.y[i] == p.y[i - 1]) {
            return "repeated position at index " + std::to_string(i);
        }
    }
    return {};
}

DriverRecord pattern_to_record(const MovementPattern& pattern) {
    DriverRecord r{pattern.id, {}};
    r.logs.reserve(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        r.logs.push_back(GpsLog{pattern.id, pattern.t[i], pattern.x[i], pattern.y[i]});
    }
    return r;
}

}  // namespace drivestyle
