#include "drivestyle/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "drivestyle/error.hpp"
#include "drivestyle/kinematics.hpp"

namespace drivestyle {
namespace {

void dump_into(const Json& v, int indent, int depth, std::string& out) {
    auto newline = [&](int level) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * level), ' ');
    };
    auto is_scalar = [](const Json& e) { return !e.is_object() && !e.is_array(); };

    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_into(it.value(), indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            const bool inline_array = std::all_of(v.begin(), v.end(), is_scalar);
            out += '[';
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += inline_array && indent >= 0 ? ", " : ",";
                first = false;
                if (!inline_array) newline(depth + 1);
                dump_into(e, indent, depth + 1, out);
            }
            if (!inline_array) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float:
            out += format_number(v.get<double>());
            return;
        default:
            out += v.dump();
            return;
    }
}

double parse_double(std::string_view text, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(std::string("unparsable ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(sep, start)) != std::string_view::npos; start = pos + 1) {
        out.push_back(line.substr(start, pos - start));
    }
    out.push_back(line.substr(start));
    return out;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

std::string format_number(double value) {
    if (!std::isfinite(value)) throw InvalidArgument("cannot serialise a non-finite number");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string dump_json(const Json& value, int indent) {
    std::string out;
    dump_into(value, indent, 0, out);
    out += '\n';
    return out;
}

Json patterns_to_json(std::span<const MovementPattern> patterns) {
    Json arr = Json::array();
    for (const auto& p : patterns) {
        Json o;
        o["id"] = p.id;
        o["coord_mode"] = to_string(p.coord_mode);
        o["t"] = p.t;
        o["x"] = p.x;
        o["y"] = p.y;
        arr.push_back(std::move(o));
    }
    return arr;
}

std::vector<MovementPattern> patterns_from_json(const Json& json) {
    if (!json.is_array()) throw ParseError("pattern file must hold a JSON array");
    std::vector<MovementPattern> out;
    out.reserve(json.size());
    try {
        for (const auto& o : json) {
            MovementPattern p;
            p.id = o.at("id").get<std::string>();
            p.coord_mode = coord_mode_from_string(o.at("coord_mode").get<std::string>());
            p.t = o.at("t").get<std::vector<std::int64_t>>();
            p.x = o.at("x").get<std::vector<double>>();
            p.y = o.at("y").get<std::vector<double>>();
            if (p.x.size() != p.t.size() || p.y.size() != p.t.size()) {
                throw ParseError("pattern '" + p.id + "': t, x and y differ in length");
            }
            out.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed pattern file: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("malformed pattern file: ") + e.what());
    }
    return out;
}

std::string write_patterns(std::span<const MovementPattern> patterns) {
    // One pattern per line keeps large files diffable.
    std::string out = "[";
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        out += i == 0 ? "\n  " : ",\n  ";
        out += dump_json(patterns_to_json(patterns.subspan(i, 1))[0], -1);
        out.pop_back();
    }
    out += patterns.empty() ? "]\n" : "\n]\n";
    return out;
}

std::vector<MovementPattern> read_patterns(const std::string& text) { return patterns_from_json(parse_json(text)); }

std::string write_truth(const std::map<std::string, Profile>& truth) {
    Json o = Json::object();
    for (const auto& [id, profile] : truth) o[id] = to_string(profile);
    return dump_json(o);
}

std::map<std::string, Profile> read_truth(const std::string& text) {
    const Json o = parse_json(text);
    if (!o.is_object()) throw ParseError("truth sidecar must hold a JSON object");
    std::map<std::string, Profile> truth;
    try {
        for (auto it = o.begin(); it != o.end(); ++it) {
            truth.emplace(it.key(), profile_from_string(it.value().get<std::string>()));
        }
    } catch (const std::exception& e) {
        throw ParseError(std::string("malformed truth sidecar: ") + e.what());
    }
    return truth;
}

std::string write_features_csv(std::span<const FeatureRecord> records) {
    std::string out = std::string(kFeaturesHeader) + "\n";
    for (const auto& r : records) {
        out += r.pattern_id + "," + format_number(r.omega) + "," + format_number(r.jerk_mean) + "," +
               format_number(r.jerk_std) + "," + format_number(r.mmk_ratio) + "," + to_string(r.mmk_class) + "\n";
    }
    return out;
}

std::vector<FeatureRecord> read_features_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("features CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kFeaturesHeader) throw ParseError("unexpected features CSV header '" + line + "'");
    std::vector<FeatureRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 6) throw ParseError("features CSV line " + std::to_string(line_no) + ": expected 6 fields");
        try {
            records.push_back(FeatureRecord{std::string(f[0]), parse_double(f[1], "omega"),
                                            parse_double(f[2], "jerk_mean"), parse_double(f[3], "jerk_std"),
                                            parse_double(f[4], "mmk_ratio"), mmk_class_from_string(f[5])});
        } catch (const Error& e) {
            throw ParseError("features CSV line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::string write_kinematics_csv(std::span<const MovementPattern> patterns) {
    std::string out = "pattern_id,kind,t,value\n";
    for (const auto& p : patterns) {
        KinematicSeries k;
        try {
            k = kinematics_of(p);
        } catch (const Error&) {
            continue;
        }
        const std::pair<const char*, const Series*> parts[] = {
            {"speed", &k.speed}, {"acceleration", &k.acceleration}, {"jerk", &k.jerk}};
        for (const auto& [kind, series] : parts) {
            for (std::size_t i = 0; i < series->values.size(); ++i) {
                out += p.id + "," + kind + "," + format_number(series->times[i]) + "," +
                       format_number(series->values[i]) + "\n";
            }
        }
    }
    return out;
}

Json clustering_to_json(const ClusteringResult& r) {
    Json o;
    o["linkage"] = to_string(r.linkage);
    o["k"] = r.k;
    o["theta"] = r.theta;
    o["wcss"] = r.wcss;
    Json labels = Json::object();
    for (std::size_t i = 0; i < r.ids.size(); ++i) labels[r.ids[i]] = r.labels[i];
    o["labels"] = std::move(labels);
    Json merges = Json::array();
    for (const auto& m : r.merges) merges.push_back(Json::array({m.left, m.right, m.criterion, m.size}));
    o["merges"] = std::move(merges);
    Json si = Json::object();
    for (std::size_t i = 0; i < r.silhouettes.size(); ++i) si[r.ids[i]] = r.silhouettes[i];
    o["silhouette"] = std::move(si);
    Json stats = Json::array();
    for (const auto& s : r.cluster_stats) {
        stats.push_back(Json{{"cluster", s.cluster}, {"count", s.count}, {"min", s.min}, {"q1", s.q1},
                             {"median", s.median}, {"q3", s.q3}, {"max", s.max}});
    }
    o["cluster_stats"] = std::move(stats);
    return o;
}

ClusteringResult clustering_from_json(const Json& o) {
    ClusteringResult r;
    try {
        r.linkage = linkage_from_string(o.at("linkage").get<std::string>());
        r.k = o.at("k").get<std::size_t>();
        r.theta = o.at("theta").get<double>();
        r.wcss = o.at("wcss").get<std::vector<double>>();
        for (auto it = o.at("labels").begin(); it != o.at("labels").end(); ++it) {
            r.ids.push_back(it.key());
            r.labels.push_back(it.value().get<int>());
        }
        for (const auto& m : o.at("merges")) {
            r.merges.push_back(Merge{m.at(0).get<std::size_t>(), m.at(1).get<std::size_t>(), m.at(2).get<double>(),
                                     m.at(3).get<std::size_t>()});
        }
        const auto& si = o.at("silhouette");
        if (!si.empty()) {
            r.silhouettes.reserve(r.ids.size());
            for (const auto& id : r.ids) r.silhouettes.push_back(si.at(id).get<double>());
        }
        for (const auto& s : o.at("cluster_stats")) {
            r.cluster_stats.push_back(BoxStats{s.at("cluster").get<int>(), s.at("count").get<std::size_t>(),
                                               s.at("min").get<double>(), s.at("q1").get<double>(),
                                               s.at("median").get<double>(), s.at("q3").get<double>(),
                                               s.at("max").get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed clusters file: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("malformed clusters file: ") + e.what());
    }
    for (int label : r.labels) {
        if (label < 1 || static_cast<std::size_t>(label) > r.k) throw ParseError("cluster label out of range");
    }
    return r;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
    return ss.str();
}

void write_output(const std::filesystem::path& path, const std::string& content, std::ostream& stdout_stream) {
    if (path == "-") {
        stdout_stream << content;
        stdout_stream.flush();
        return;
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + path.string() + "'");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("error while writing '" + path.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

}  // namespace drivestyle
