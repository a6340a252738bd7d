#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "drivestyle/cluster.hpp"
#include "drivestyle/features.hpp"
#include "drivestyle/preprocess.hpp"
#include "drivestyle/synth.hpp"

namespace drivestyle {

using Json = nlohmann::ordered_json;

/// Fixed 9-significant-digit rendering (printf "%.9g"). Throws on NaN/inf.
std::string format_number(double value);

/// Serialises JSON with every floating-point number pinned to format_number.
/// indent < 0 gives a single line; arrays of scalars always stay on one line.
std::string dump_json(const Json& value, int indent = 2);

// Pattern file: [{"id", "coord_mode", "t", "x", "y"}, ...]
Json patterns_to_json(std::span<const MovementPattern> patterns);
std::vector<MovementPattern> patterns_from_json(const Json& json);
std::string write_patterns(std::span<const MovementPattern> patterns);
std::vector<MovementPattern> read_patterns(const std::string& text);

// Ground-truth sidecar: {pattern_id: profile}
std::string write_truth(const std::map<std::string, Profile>& truth);
std::map<std::string, Profile> read_truth(const std::string& text);

inline constexpr const char* kFeaturesHeader = "pattern_id,omega,jerk_mean,jerk_std,mmk_ratio,mmk_class";

std::string write_features_csv(std::span<const FeatureRecord> records);
std::vector<FeatureRecord> read_features_csv(const std::string& text);

/// Rows `pattern_id,kind,t,value` with kind in {speed, acceleration, jerk}.
std::string write_kinematics_csv(std::span<const MovementPattern> patterns);

Json clustering_to_json(const ClusteringResult& result);
ClusteringResult clustering_from_json(const Json& json);

std::string read_file(const std::filesystem::path& path);

/// Writes through a sibling temporary file and renames it into place, so a
/// failed run never leaves a partial output. "-" writes to `stdout_stream`.
void write_output(const std::filesystem::path& path, const std::string& content, std::ostream& stdout_stream);

}  // namespace drivestyle
