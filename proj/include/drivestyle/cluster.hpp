#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace drivestyle {

/// Running aggregates of a cluster of scalar feature values.
struct ClusterState {
    std::size_t size = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    static ClusterState singleton(double value) noexcept { return {1, value, value * value}; }
    static ClusterState of(std::span<const double> values) noexcept;

    double mean() const noexcept { return sum / static_cast<double>(size); }
    /// Sum of squared deviations from the mean.
    double sse() const noexcept;

    friend ClusterState merge(const ClusterState& a, const ClusterState& b) noexcept {
        return {a.size + b.size, a.sum + b.sum, a.sum_sq + b.sum_sq};
    }
};

enum class Linkage {
    /// (|A||B| / (|A|+|B|)) * sum over all member pairs (a - b)^2
    pairwise,
    /// (|A||B| / (|A|+|B|)) * (mean_A - mean_B)^2, i.e. the SSE increase.
    standard,
};

const char* to_string(Linkage linkage) noexcept;
Linkage linkage_from_string(const std::string& text);

double ward_pairwise(const ClusterState& a, const ClusterState& b) noexcept;
double ward_standard(const ClusterState& a, const ClusterState& b) noexcept;
double ward_criterion(Linkage linkage, const ClusterState& a, const ClusterState& b) noexcept;

struct Merge {
    std::size_t left;   // smaller node index
    std::size_t right;  // larger node index
    double criterion;
    std::size_t size;   // members of the merged node

    friend bool operator==(const Merge&, const Merge&) = default;
};

/// Leaves are nodes 0..N-1; merge i creates node N+i.
struct Dendrogram {
    Linkage linkage = Linkage::pairwise;
    std::vector<double> leaves;
    std::vector<Merge> merges;

    std::size_t leaf_count() const noexcept { return leaves.size(); }
};

/// Greedy bottom-up merging of the pair with the smallest criterion. Ties go to
/// the pair with the smallest node index, then the smallest second index.
Dendrogram agglomerate(std::span<const double> values, Linkage linkage = Linkage::pairwise);

/// Cluster labels 1..k for each leaf after undoing the last k-1 merges.
/// Clusters are numbered by ascending mean (ties: smallest leaf index first).
std::vector<int> cut(const Dendrogram& dendrogram, std::size_t k);

/// Within-cluster sum of squares of a labelling.
double wcss(std::span<const int> labels, std::span<const double> values);

/// WCSS(k) for k = 1..k_max (element k-1 holds WCSS(k)).
std::vector<double> wcss_curve(const Dendrogram& dendrogram, std::size_t k_max);

/// Smallest k whose relative WCSS decrease (WCSS(k) - WCSS(k+1)) / WCSS(1)
/// falls below theta; the last k of the curve if none does; 1 if WCSS(1) is 0.
std::size_t select_k_from_curve(std::span<const double> curve, double theta);

std::size_t select_k(const Dendrogram& dendrogram, double theta = 0.05, std::size_t k_max = 10);

/// Silhouette index per value; 0 for members of singleton clusters and when
/// both mean distances vanish. Requires at least two clusters.
std::vector<double> silhouette(std::span<const int> labels, std::span<const double> values);

/// Five-number summary with Tukey (median-of-halves) quartiles.
struct BoxStats {
    int cluster = 0;
    std::size_t count = 0;
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

BoxStats box_stats(std::vector<double> values);

struct ClusterConfig {
    Linkage linkage = Linkage::pairwise;
    double theta = 0.05;
    std::size_t k_max = 10;
    /// Forces the cut instead of selecting k from the WCSS curve.
    std::optional<std::size_t> k;

    void validate() const;
};

struct ClusteringResult {
    Linkage linkage = Linkage::pairwise;
    double theta = 0.05;
    std::size_t k = 1;
    std::vector<std::string> ids;  // sorted
    std::vector<double> values;    // aligned with ids
    std::vector<int> labels;       // aligned with ids, 1..k
    std::vector<double> wcss;      // WCSS(1..)
    std::vector<Merge> merges;
    std::vector<double> silhouettes;  // empty when k < 2
    std::vector<BoxStats> cluster_stats;
};

struct LabelledValue {
    std::string id;
    double value;
};

/// Sorts by id, agglomerates, chooses (or forces) k, cuts and validates.
ClusteringResult cluster_report(std::span<const LabelledValue> features, const ClusterConfig& config = {});

}  // namespace drivestyle
