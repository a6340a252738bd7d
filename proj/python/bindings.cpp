#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "drivestyle/cluster.hpp"
#include "drivestyle/error.hpp"
#include "drivestyle/features.hpp"
#include "drivestyle/ingest.hpp"
#include "drivestyle/io.hpp"
#include "drivestyle/kinematics.hpp"
#include "drivestyle/preprocess.hpp"
#include "drivestyle/synth.hpp"

namespace py = pybind11;
using namespace drivestyle;

namespace {

py::dict series_dict(const Series& s) {
    py::dict d;
    d["values"] = s.values;
    d["times"] = s.times;
    return d;
}

std::vector<MovementPattern> preprocess_logs(const std::vector<std::tuple<std::string, std::int64_t, double, double>>& logs,
                                             std::size_t min_len, std::size_t max_len, std::int64_t max_gap,
                                             const std::string& split_policy, py::dict* summary_out) {
    std::map<std::string, std::vector<GpsLog>> groups;
    for (const auto& [driver, t, lon, lat] : logs) groups[driver].push_back(GpsLog{driver, t, lon, lat});
    std::vector<DriverRecord> records;
    for (auto& [id, group] : groups) {
        std::stable_sort(group.begin(), group.end(),
                         [](const GpsLog& a, const GpsLog& b) { return a.timestamp < b.timestamp; });
        records.push_back(DriverRecord{id, std::move(group)});
    }
    PreprocessConfig config;
    config.min_len = min_len;
    config.max_len = max_len;
    config.max_gap = max_gap;
    config.split_policy = split_policy_from_string(split_policy);
    auto result = preprocess_pipeline(records, config);
    if (summary_out != nullptr) {
        (*summary_out)["logs_in"] = result.summary.logs_in;
        (*summary_out)["duplicates_removed"] = result.summary.duplicates_removed;
        (*summary_out)["standstill_removed"] = result.summary.standstill_removed;
        (*summary_out)["patterns_out"] = result.summary.patterns_out;
    }
    return std::move(result.patterns);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Jerk-based driving-style features and Ward hierarchical clustering";

    py::register_exception<Error>(m, "DrivestyleError", PyExc_ValueError);

    py::class_<GpsLog>(m, "GpsLog")
        .def(py::init<std::string, std::int64_t, double, double>(), py::arg("driver_id"), py::arg("timestamp"),
             py::arg("longitude"), py::arg("latitude"))
        .def_readonly("driver_id", &GpsLog::driver_id)
        .def_readonly("timestamp", &GpsLog::timestamp)
        .def_readonly("longitude", &GpsLog::longitude)
        .def_readonly("latitude", &GpsLog::latitude)
        .def("__eq__", [](const GpsLog& a, const GpsLog& b) { return a == b; })
        .def("__repr__", [](const GpsLog& g) { return "GpsLog(" + format_tdrive_line(g, 0) + " UTC)"; });

    py::class_<MovementPattern>(m, "MovementPattern")
        .def(py::init([](std::string id, std::vector<std::int64_t> t, std::vector<double> x, std::vector<double> y,
                         const std::string& coord_mode) {
                 if (x.size() != t.size() || y.size() != t.size()) throw InvalidArgument("t, x and y differ in length");
                 return MovementPattern{std::move(id), coord_mode_from_string(coord_mode), std::move(t), std::move(x),
                                        std::move(y)};
             }),
             py::arg("id"), py::arg("t"), py::arg("x"), py::arg("y"), py::arg("coord_mode") = "planar")
        .def_readonly("id", &MovementPattern::id)
        .def_readonly("t", &MovementPattern::t)
        .def_readonly("x", &MovementPattern::x)
        .def_readonly("y", &MovementPattern::y)
        .def_property_readonly("coord_mode", [](const MovementPattern& p) { return to_string(p.coord_mode); })
        .def("__len__", &MovementPattern::size);

    py::class_<FeatureRecord>(m, "FeatureRecord")
        .def_readonly("pattern_id", &FeatureRecord::pattern_id)
        .def_readonly("omega", &FeatureRecord::omega)
        .def_readonly("jerk_mean", &FeatureRecord::jerk_mean)
        .def_readonly("jerk_std", &FeatureRecord::jerk_std)
        .def_readonly("mmk_ratio", &FeatureRecord::mmk_ratio)
        .def_property_readonly("mmk_class", [](const FeatureRecord& r) { return to_string(r.mmk_class); });

    py::class_<Dendrogram>(m, "Dendrogram")
        .def_readonly("leaves", &Dendrogram::leaves)
        .def_property_readonly("linkage", [](const Dendrogram& d) { return to_string(d.linkage); })
        .def_property_readonly("merges", [](const Dendrogram& d) {
            std::vector<std::tuple<std::size_t, std::size_t, double, std::size_t>> out;
            for (const auto& mg : d.merges) out.emplace_back(mg.left, mg.right, mg.criterion, mg.size);
            return out;
        });

    m.def("parse_tdrive_line", &parse_tdrive_line, py::arg("line"), py::arg("utc_offset_hours") = 8);
    m.def("format_tdrive_line", &format_tdrive_line, py::arg("log"), py::arg("utc_offset_hours") = 8);

    m.def(
        "haversine_m",
        [](double lon1, double lat1, double lon2, double lat2) { return haversine_m({lon1, lat1}, {lon2, lat2}); },
        py::arg("lon1"), py::arg("lat1"), py::arg("lon2"), py::arg("lat2"));

    m.def(
        "preprocess",
        [](const std::vector<std::tuple<std::string, std::int64_t, double, double>>& logs, std::size_t min_len,
           std::size_t max_len, std::int64_t max_gap, const std::string& split_policy) {
            py::dict summary;
            auto patterns = preprocess_logs(logs, min_len, max_len, max_gap, split_policy, &summary);
            return py::make_tuple(std::move(patterns), summary);
        },
        py::arg("logs"), py::arg("min_len") = 10, py::arg("max_len") = 24, py::arg("max_gap") = 60,
        py::arg("split_policy") = "balanced",
        "Preprocess (driver_id, timestamp, lon, lat) tuples into movement patterns; returns (patterns, summary).");

    m.def(
        "kinematics",
        [](const MovementPattern& p) {
            const auto k = kinematics_of(p);
            py::dict d;
            d["speed"] = series_dict(k.speed);
            d["acceleration"] = series_dict(k.acceleration);
            d["jerk"] = series_dict(k.jerk);
            return d;
        },
        py::arg("pattern"));

    m.def("omega", [](const std::vector<double>& jerks) { return omega(jerks); }, py::arg("jerks"));
    m.def(
        "jerk_stats",
        [](const std::vector<double>& jerks) {
            const auto s = jerk_stats(jerks);
            return py::make_tuple(s.mean, s.stddev);
        },
        py::arg("jerks"));
    m.def(
        "feature_table",
        [](const std::vector<MovementPattern>& patterns, bool jerk_abs) {
            FeatureOptions options;
            options.jerk_abs = jerk_abs;
            return feature_table(patterns, options).records;
        },
        py::arg("patterns"), py::arg("jerk_abs") = false);

    m.def(
        "ward_pairwise",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return ward_pairwise(ClusterState::of(a), ClusterState::of(b));
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "ward_standard",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return ward_standard(ClusterState::of(a), ClusterState::of(b));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "agglomerate",
        [](const std::vector<double>& values, const std::string& linkage) {
            return agglomerate(values, linkage_from_string(linkage));
        },
        py::arg("values"), py::arg("linkage") = "pairwise");
    m.def("cut", &cut, py::arg("dendrogram"), py::arg("k"));
    m.def(
        "wcss", [](const std::vector<int>& labels, const std::vector<double>& values) { return wcss(labels, values); },
        py::arg("labels"), py::arg("values"));
    m.def("wcss_curve", &wcss_curve, py::arg("dendrogram"), py::arg("k_max") = 10);
    m.def("select_k", &select_k, py::arg("dendrogram"), py::arg("theta") = 0.05, py::arg("k_max") = 10);
    m.def(
        "silhouette",
        [](const std::vector<int>& labels, const std::vector<double>& values) { return silhouette(labels, values); },
        py::arg("labels"), py::arg("values"));

    m.def(
        "cluster_report_json",
        [](const std::vector<std::string>& ids, const std::vector<double>& values, const std::string& linkage,
           double theta, std::size_t k_max, std::optional<std::size_t> k) {
            if (ids.size() != values.size()) throw InvalidArgument("ids and values differ in length");
            std::vector<LabelledValue> features;
            for (std::size_t i = 0; i < ids.size(); ++i) features.push_back({ids[i], values[i]});
            ClusterConfig config{linkage_from_string(linkage), theta, k_max, k};
            return dump_json(clustering_to_json(cluster_report(features, config)));
        },
        py::arg("ids"), py::arg("values"), py::arg("linkage") = "pairwise", py::arg("theta") = 0.05,
        py::arg("k_max") = 10, py::arg("k") = std::nullopt);

    m.def(
        "generate_benchmark",
        [](std::uint64_t seed) {
            auto set = generate_benchmark(seed);
            std::map<std::string, std::string> truth;
            for (const auto& [id, p] : set.truth) truth.emplace(id, to_string(p));
            return py::make_tuple(std::move(set.patterns), truth);
        },
        py::arg("seed") = 42);

    m.def(
        "patterns_to_json", [](const std::vector<MovementPattern>& p) { return write_patterns(p); },
        py::arg("patterns"));
    m.def("patterns_from_json", &read_patterns, py::arg("text"));
}
