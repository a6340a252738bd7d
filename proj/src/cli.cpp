#include "drivestyle/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drivestyle/cluster.hpp"
#include "drivestyle/error.hpp"
#include "drivestyle/features.hpp"
#include "drivestyle/ingest.hpp"
#include "drivestyle/io.hpp"
#include "drivestyle/preprocess.hpp"
#include "drivestyle/synth.hpp"

namespace drivestyle::cli {
namespace {

namespace fs = std::filesystem;

/// Raised for flag combinations CLI11 cannot check on its own.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Collects every output of a subcommand and writes them together; if any
/// write fails the files already written are removed again.
class Outputs {
public:
    void add(fs::path path, std::string content) { items_.push_back({std::move(path), std::move(content)}); }

    void commit(std::ostream& out) {
        std::vector<fs::path> written;
        try {
            for (const auto& [path, content] : items_) {
                write_output(path, content, out);
                if (path != "-") written.push_back(path);
            }
        } catch (...) {
            std::error_code ec;
            for (const auto& p : written) fs::remove(p, ec);
            throw;
        }
    }

private:
    std::vector<std::pair<fs::path, std::string>> items_;
};

struct PreprocessArgs {
    std::vector<std::string> inputs;
    std::string out;
    std::string summary;
    std::string bbox;
    std::string format = "tdrive";
    std::string csv_config;
    int utc_offset = 8;
    std::size_t min_len = 10;
    std::size_t max_len = 24;
    std::int64_t max_gap = 60;
    std::string split_policy = "balanced";
};

struct FeaturesArgs {
    std::string patterns;
    std::string out;
    std::string dump_kinematics;
    bool jerk_abs = false;
    bool three_way = false;
    double window = 10.0;
    double norm_threshold = 0.5;
    double agg_threshold = 1.0;
};

struct ClusterArgs {
    std::string features;
    std::string out;
    std::string feature = "omega";
    std::string linkage = "pairwise";
    double theta = 0.05;
    std::string k = "auto";
    std::size_t k_max = 10;
};

struct ReportArgs {
    std::string features;
    std::string clusters;
    std::string out_dir;
};

struct SynthArgs {
    std::string out;
    std::string truth;
    std::uint64_t seed = 42;
    std::string profile;
    std::size_t count = 100;
    std::size_t length = 20;
    std::int64_t interval = 1;
};

std::string summary_json(const PreprocessSummary& s, std::size_t drivers, std::size_t skipped) {
    Json o;
    o["logs_in"] = s.logs_in;
    o["duplicates_removed"] = s.duplicates_removed;
    o["standstill_removed"] = s.standstill_removed;
    o["patterns_out"] = s.patterns_out;
    o["drivers"] = drivers;
    o["lines_skipped"] = skipped;
    return dump_json(o);
}

int cmd_preprocess(const PreprocessArgs& a, std::ostream& out, std::ostream& err) {
    PreprocessConfig config;
    config.min_len = a.min_len;
    config.max_len = a.max_len;
    config.max_gap = a.max_gap;
    config.split_policy = split_policy_from_string(a.split_policy);
    std::optional<Region> region;
    LoadOptions load;
    load.utc_offset_hours = a.utc_offset;
    try {
        config.validate();
        if (!a.bbox.empty()) region = Region::parse(a.bbox);
        if (a.format == "csv") {
            if (a.csv_config.empty()) throw UsageError("--format csv requires --csv-config");
            load.format = InputFormat::csv;
            load.columns = CsvColumnMap::from_json(read_file(a.csv_config));
        }
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }

    std::vector<fs::path> paths(a.inputs.begin(), a.inputs.end());
    for (const auto& p : paths) {
        if (!fs::exists(p)) throw IoError("input '" + p.string() + "' does not exist");
    }
    const auto files = expand_inputs(paths);
    LoadResult loaded = load_dataset(files, load);
    for (const auto& d : loaded.diagnostics) err << "skipped " << d << "\n";
    if (region) {
        for (auto& r : loaded.drivers) r = filter_region(r, *region);
    }
    const PreprocessResult result = preprocess_pipeline(loaded.drivers, config);

    Outputs outputs;
    outputs.add(a.out, write_patterns(result.patterns));
    const std::string summary = summary_json(result.summary, loaded.drivers.size(), loaded.skipped);
    if (!a.summary.empty()) outputs.add(a.summary, summary);
    outputs.commit(out);
    if (a.summary.empty()) err << summary;
    return kExitOk;
}

int cmd_features(const FeaturesArgs& a, std::ostream& out, std::ostream& err) {
    FeatureOptions options;
    options.jerk_abs = a.jerk_abs;
    options.mmk = MmkOptions{a.window, a.norm_threshold, a.agg_threshold, a.three_way};
    if (!(a.norm_threshold <= a.agg_threshold)) throw UsageError("--norm-threshold must not exceed --agg-threshold");

    const auto patterns = read_patterns(read_file(a.patterns));
    const FeatureTable table = feature_table(patterns, options);
    for (const auto& d : table.diagnostics) err << "skipped pattern " << d << "\n";

    Outputs outputs;
    outputs.add(a.out, write_features_csv(table.records));
    if (!a.dump_kinematics.empty()) outputs.add(a.dump_kinematics, write_kinematics_csv(patterns));
    outputs.commit(out);
    return kExitOk;
}

ClusterConfig cluster_config(const ClusterArgs& a) {
    ClusterConfig config;
    try {
        config.linkage = linkage_from_string(a.linkage);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    config.theta = a.theta;
    config.k_max = a.k_max;
    if (a.k != "auto") {
        std::size_t k = 0;
        const auto [ptr, ec] = std::from_chars(a.k.data(), a.k.data() + a.k.size(), k);
        if (ec != std::errc{} || ptr != a.k.data() + a.k.size() || k < 1) {
            throw UsageError("--k must be 'auto' or a positive integer");
        }
        config.k = k;
    }
    if (std::find(std::begin(kFeatureNames), std::end(kFeatureNames), a.feature) == std::end(kFeatureNames)) {
        throw UsageError("unknown feature '" + a.feature + "'");
    }
    try {
        config.validate();
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    return config;
}

int cmd_cluster(const ClusterArgs& a, std::ostream& out, std::ostream&) {
    const ClusterConfig config = cluster_config(a);
    const auto records = read_features_csv(read_file(a.features));
    if (records.empty()) throw Error("features file holds no records");
    std::vector<LabelledValue> values;
    values.reserve(records.size());
    for (const auto& r : records) values.push_back({r.pattern_id, feature_value(r, a.feature)});
    if (config.k && *config.k > values.size()) {
        throw UsageError("--k " + std::to_string(*config.k) + " exceeds the " + std::to_string(values.size()) +
                         " feature values");
    }
    const ClusteringResult result = cluster_report(values, config);
    Outputs outputs;
    outputs.add(a.out, dump_json(clustering_to_json(result)));
    outputs.commit(out);
    return kExitOk;
}

int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream&) {
    const auto records = read_features_csv(read_file(a.features));
    const ClusteringResult clusters = clustering_from_json(Json::parse(read_file(a.clusters)));
    if (records.empty()) throw Error("features file holds no records");

    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec) throw IoError("cannot create '" + a.out_dir + "': " + ec.message());

    Outputs outputs;
    for (std::string_view name : kFeatureNames) {
        std::string csv = "rank,value\n";
        for (const auto& [rank, value] : sorted_feature_curve(records, name)) {
            csv += std::to_string(rank) + "," + format_number(value) + "\n";
        }
        outputs.add(fs::path(a.out_dir) / ("sorted_" + std::string(name) + ".csv"), std::move(csv));
    }

    std::string si_csv = "pattern_id,cluster,silhouette\n";
    std::vector<std::size_t> negatives(clusters.k, 0);
    std::vector<double> si_sum(clusters.k, 0.0);
    for (std::size_t i = 0; i < clusters.ids.size(); ++i) {
        const auto c = static_cast<std::size_t>(clusters.labels[i] - 1);
        si_csv += clusters.ids[i] + "," + std::to_string(clusters.labels[i]) + ",";
        if (!clusters.silhouettes.empty()) {
            const double si = clusters.silhouettes[i];
            si_csv += format_number(si);
            negatives[c] += si < 0.0;
            si_sum[c] += si;
        }
        si_csv += "\n";
    }
    outputs.add(fs::path(a.out_dir) / "silhouette.csv", std::move(si_csv));

    Json report;
    report["linkage"] = to_string(clusters.linkage);
    report["k"] = clusters.k;
    report["theta"] = clusters.theta;
    report["patterns"] = clusters.ids.size();
    report["wcss"] = clusters.wcss;
    Json stats = Json::array();
    std::size_t total_negative = 0;
    for (const auto& s : clusters.cluster_stats) {
        const auto c = static_cast<std::size_t>(s.cluster - 1);
        Json row{{"cluster", s.cluster}, {"count", s.count}, {"min", s.min},       {"q1", s.q1},
                 {"median", s.median},   {"q3", s.q3},       {"max", s.max}};
        if (!clusters.silhouettes.empty()) {
            row["negative_silhouettes"] = negatives[c];
            row["mean_silhouette"] = si_sum[c] / static_cast<double>(s.count);
            total_negative += negatives[c];
        }
        stats.push_back(std::move(row));
    }
    report["cluster_stats"] = std::move(stats);
    if (!clusters.silhouettes.empty()) report["negative_silhouettes"] = total_negative;
    outputs.add(fs::path(a.out_dir) / "report.json", dump_json(report));
    outputs.commit(out);
    return kExitOk;
}

int cmd_synth(const SynthArgs& a, std::ostream& out, std::ostream&) {
    SyntheticSet set;
    if (a.profile.empty()) {
        set = generate_benchmark(a.seed);
    } else {
        ProfileSpec spec;
        try {
            spec = ProfileSpec{profile_from_string(a.profile), a.count, a.length, a.interval, a.seed};
            spec.validate();
        } catch (const InvalidArgument& e) {
            throw UsageError(e.what());
        }
        set = generate_set({spec});
    }
    Outputs outputs;
    outputs.add(a.out, write_patterns(set.patterns));
    if (!a.truth.empty()) outputs.add(a.truth, write_truth(set.truth));
    outputs.commit(out);
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Driving-style classification from GPS logs via a jerk-based feature and Ward clustering",
                 "drivestyle"};
    app.require_subcommand(1);

    PreprocessArgs pre;
    auto* preprocess = app.add_subcommand("preprocess", "Turn raw GPS logs into movement patterns");
    preprocess->add_option("-i,--input", pre.inputs, "Log files or directories")->required();
    preprocess->add_option("-o,--out", pre.out, "Pattern JSON output ('-' for stdout)")->required();
    preprocess->add_option("--summary", pre.summary, "Summary JSON output (default: stderr)");
    preprocess->add_option("--bbox", pre.bbox, "Region filter min_lon,max_lon,min_lat,max_lat");
    preprocess->add_option("--format", pre.format, "Input format")->check(CLI::IsMember({"tdrive", "csv"}));
    preprocess->add_option("--csv-config", pre.csv_config, "Column mapping JSON for --format csv");
    preprocess->add_option("--utc-offset", pre.utc_offset, "Hours east of UTC of the logged wall times")
        ->check(CLI::Range(-12, 14));
    preprocess->add_option("--min-len", pre.min_len, "Minimum pattern length")->check(CLI::Range(1, 100000));
    preprocess->add_option("--max-len", pre.max_len, "Maximum pattern length")->check(CLI::Range(1, 100000));
    preprocess->add_option("--max-gap", pre.max_gap, "Largest time step inside a pattern (s)")
        ->check(CLI::PositiveNumber);
    preprocess->add_option("--split-policy", pre.split_policy, "Splitting of over-long runs")
        ->check(CLI::IsMember({"balanced", "greedy"}));

    FeaturesArgs feat;
    auto* features = app.add_subcommand("features", "Compute per-pattern features");
    features->add_option("-p,--patterns", feat.patterns, "Pattern JSON input")->required()->check(CLI::ExistingFile);
    features->add_option("-o,--out", feat.out, "Features CSV output ('-' for stdout)")->required();
    features->add_option("--dump-kinematics", feat.dump_kinematics, "Per-pattern speed/acceleration/jerk CSV");
    features->add_flag("--jerk-abs", feat.jerk_abs, "Use jerk magnitudes for omega and the jerk statistics");
    features->add_flag("--three-way", feat.three_way, "calm/normal/aggressive MMK classes");
    features->add_option("--window", feat.window, "MMK window length (s)")->check(CLI::PositiveNumber);
    features->add_option("--norm-threshold", feat.norm_threshold, "MMK calm/normal threshold")
        ->check(CLI::NonNegativeNumber);
    features->add_option("--agg-threshold", feat.agg_threshold, "MMK aggressive threshold")
        ->check(CLI::NonNegativeNumber);

    ClusterArgs clu;
    auto* cluster = app.add_subcommand("cluster", "Hierarchically cluster one feature");
    cluster->add_option("-f,--features", clu.features, "Features CSV input")->required()->check(CLI::ExistingFile);
    cluster->add_option("-o,--out", clu.out, "Clusters JSON output ('-' for stdout)")->required();
    cluster->add_option("--feature", clu.feature, "Feature column to cluster");
    cluster->add_option("--linkage", clu.linkage, "Merge criterion")->check(CLI::IsMember({"pairwise", "standard"}));
    cluster->add_option("--theta", clu.theta, "Relative WCSS-decrease threshold for --k auto")
        ->check(CLI::Range(0.0, 1.0));
    cluster->add_option("--k", clu.k, "'auto' or a fixed cluster count");
    cluster->add_option("--k-max", clu.k_max, "Largest cluster count considered by --k auto")
        ->check(CLI::Range(1, 1000000));

    ReportArgs rep;
    auto* report = app.add_subcommand("report", "Emit sorted curves, silhouettes and cluster statistics");
    report->add_option("-f,--features", rep.features, "Features CSV input")->required()->check(CLI::ExistingFile);
    report->add_option("-c,--clusters", rep.clusters, "Clusters JSON input")->required()->check(CLI::ExistingFile);
    report->add_option("-o,--out-dir", rep.out_dir, "Output directory")->required();

    SynthArgs syn;
    auto* synth = app.add_subcommand("synth", "Generate the synthetic benchmark or a single-profile set");
    synth->add_option("-o,--out", syn.out, "Pattern JSON output ('-' for stdout)")->required();
    synth->add_option("--truth", syn.truth, "Ground-truth sidecar JSON output");
    synth->add_option("--seed", syn.seed, "Master seed");
    synth->add_option("--profile", syn.profile, "Generate only this profile")
        ->check(CLI::IsMember({"calm", "average", "racy", "noisy"}));
    synth->add_option("--count", syn.count, "Patterns for --profile");
    synth->add_option("--length", syn.length, "Samples per pattern for --profile")->check(CLI::Range(10, 24));
    synth->add_option("--interval", syn.interval, "Sampling interval (s) for --profile")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*preprocess) return cmd_preprocess(pre, out, err);
        if (*features) return cmd_features(feat, out, err);
        if (*cluster) return cmd_cluster(clu, out, err);
        if (*report) return cmd_report(rep, out, err);
        if (*synth) return cmd_synth(syn, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace drivestyle::cli
