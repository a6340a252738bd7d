#include "drivestyle/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include "drivestyle/error.hpp"

namespace drivestyle {
namespace {

struct PairKey {
    double criterion;
    std::size_t lo;
    std::size_t hi;

    bool operator<(const PairKey& o) const noexcept {
        return std::tie(criterion, lo, hi) < std::tie(o.criterion, o.lo, o.hi);
    }
};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Cluster membership of every leaf once the first `applied` merges are done,
// as indices into the list of surviving nodes.
std::vector<std::size_t> roots_after(const Dendrogram& d, std::size_t applied) {
    const std::size_t n = d.leaf_count();
    std::vector<std::size_t> parent(n + applied, kNone);
    for (std::size_t m = 0; m < applied; ++m) {
        parent[d.merges[m].left] = n + m;
        parent[d.merges[m].right] = n + m;
    }
    std::vector<std::size_t> root(n);
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        std::size_t node = leaf;
        while (parent[node] != kNone) node = parent[node];
        root[leaf] = node;
    }
    return root;
}

}  // namespace

ClusterState ClusterState::of(std::span<const double> values) noexcept {
    ClusterState s;
    for (double v : values) s = merge(s, singleton(v));
    return s;
}

double ClusterState::sse() const noexcept {
    if (size == 0) return 0.0;
    return std::max(0.0, sum_sq - sum * sum / static_cast<double>(size));
}

const char* to_string(Linkage linkage) noexcept {
    return linkage == Linkage::pairwise ? "pairwise" : "standard";
}

Linkage linkage_from_string(const std::string& text) {
    if (text == "pairwise") return Linkage::pairwise;
    if (text == "standard") return Linkage::standard;
    throw InvalidArgument("unknown linkage '" + text + "'");
}

double ward_pairwise(const ClusterState& a, const ClusterState& b) noexcept {
    const auto na = static_cast<double>(a.size);
    const auto nb = static_cast<double>(b.size);
    // sum_{u in A} sum_{w in B} (u - w)^2 expanded over the cached aggregates.
    const double pair_sum = nb * a.sum_sq + na * b.sum_sq - 2.0 * a.sum * b.sum;
    return na * nb / (na + nb) * std::max(0.0, pair_sum);
}

double ward_standard(const ClusterState& a, const ClusterState& b) noexcept {
    const auto na = static_cast<double>(a.size);
    const auto nb = static_cast<double>(b.size);
    const double diff = a.mean() - b.mean();
    return na * nb / (na + nb) * diff * diff;
}

double ward_criterion(Linkage linkage, const ClusterState& a, const ClusterState& b) noexcept {
    return linkage == Linkage::pairwise ? ward_pairwise(a, b) : ward_standard(a, b);
}

Dendrogram agglomerate(std::span<const double> values, Linkage linkage) {
    if (values.empty()) throw InvalidArgument("agglomerate needs at least one value");
    const std::size_t n = values.size();
    Dendrogram d{linkage, std::vector<double>(values.begin(), values.end()), {}};
    d.merges.reserve(n - 1);

    std::vector<ClusterState> state(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) state[i] = ClusterState::singleton(values[i]);
    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), std::size_t{0});

    auto key = [&](std::size_t i, std::size_t j) {
        const std::size_t lo = std::min(i, j), hi = std::max(i, j);
        return PairKey{ward_criterion(linkage, state[lo], state[hi]), lo, hi};
    };

    // Cached best partner of each active node.
    std::vector<std::size_t> nn(2 * n - 1, kNone);
    std::vector<PairKey> nn_key(2 * n - 1);
    auto refresh = [&](std::size_t i) {
        nn[i] = kNone;
        for (std::size_t j : active) {
            if (j == i) continue;
            const PairKey k = key(i, j);
            if (nn[i] == kNone || k < nn_key[i]) {
                nn[i] = j;
                nn_key[i] = k;
            }
        }
    };
    for (std::size_t i : active) refresh(i);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t best = kNone;
        for (std::size_t i : active) {
            if (best == kNone || nn_key[i] < nn_key[best]) best = i;
        }
        const PairKey chosen = nn_key[best];
        const std::size_t node = n + step;
        state[node] = merge(state[chosen.lo], state[chosen.hi]);
        d.merges.push_back(Merge{chosen.lo, chosen.hi, chosen.criterion, state[node].size});

        std::erase_if(active, [&](std::size_t i) { return i == chosen.lo || i == chosen.hi; });
        active.push_back(node);

        for (std::size_t i : active) {
            if (i == node) continue;
            if (nn[i] == chosen.lo || nn[i] == chosen.hi) {
                refresh(i);
            } else {
                const PairKey k = key(i, node);
                if (k < nn_key[i]) {
                    nn[i] = node;
                    nn_key[i] = k;
                }
            }
        }
        refresh(node);
    }
    return d;
}

std::vector<int> cut(const Dendrogram& d, std::size_t k) {
    const std::size_t n = d.leaf_count();
    if (k < 1 || k > n) {
        throw InvalidArgument("cut requires 1 <= k <= " + std::to_string(n) + ", got " + std::to_string(k));
    }
    const auto root = roots_after(d, n - k);

    struct Group {
        std::size_t root;
        std::size_t first_leaf;
        double sum = 0.0;
        std::size_t count = 0;
    };
    std::vector<Group> groups;
    std::map<std::size_t, std::size_t> index_of;
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        auto [it, inserted] = index_of.try_emplace(root[leaf], groups.size());
        if (inserted) groups.push_back(Group{root[leaf], leaf});
        groups[it->second].sum += d.leaves[leaf];
        ++groups[it->second].count;
    }
    std::vector<std::size_t> order(groups.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = groups[a].sum / static_cast<double>(groups[a].count);
        const double mb = groups[b].sum / static_cast<double>(groups[b].count);
        if (ma != mb) return ma < mb;
        return groups[a].first_leaf < groups[b].first_leaf;
    });
    std::vector<int> label_of_group(groups.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) label_of_group[order[rank]] = static_cast<int>(rank + 1);

    std::vector<int> labels(n);
    for (std::size_t leaf = 0; leaf < n; ++leaf) labels[leaf] = label_of_group[index_of.at(root[leaf])];
    return labels;
}

double wcss(std::span<const int> labels, std::span<const double> values) {
    if (labels.size() != values.size()) throw InvalidArgument("labels and values differ in length");
    std::map<int, std::pair<double, std::size_t>> acc;
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto& [sum, count] = acc[labels[i]];
        sum += values[i];
        ++count;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& [sum, count] = acc.at(labels[i]);
        const double dev = values[i] - sum / static_cast<double>(count);
        total += dev * dev;
    }
    return total;
}

std::vector<double> wcss_curve(const Dendrogram& d, std::size_t k_max) {
    k_max = std::min(k_max, d.leaf_count());
    std::vector<double> curve;
    curve.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) curve.push_back(wcss(cut(d, k), d.leaves));
    return curve;
}

std::size_t select_k_from_curve(std::span<const double> curve, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("theta must lie in (0, 1)");
    if (curve.empty()) throw InvalidArgument("empty WCSS curve");
    if (curve[0] <= 0.0) return 1;
    for (std::size_t k = 1; k < curve.size(); ++k) {
        if ((curve[k - 1] - curve[k]) / curve[0] < theta) return k;
    }
    return curve.size();
}

std::size_t select_k(const Dendrogram& d, double theta, std::size_t k_max) {
    if (k_max < 1) throw InvalidArgument("k_max must be at least 1");
    const auto curve = wcss_curve(d, k_max);
    return select_k_from_curve(curve, theta);
}

std::vector<double> silhouette(std::span<const int> labels, std::span<const double> values) {
    if (labels.size() != values.size()) throw InvalidArgument("labels and values differ in length");
    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);
    if (members.size() < 2) throw InvalidArgument("silhouette requires at least two clusters");

    std::vector<double> si(values.size(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& own = members.at(labels[i]);
        if (own.size() == 1) continue;
        double a = 0.0;
        for (std::size_t j : own) a += std::abs(values[i] - values[j]);
        a /= static_cast<double>(own.size() - 1);
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [label, other] : members) {
            if (label == labels[i]) continue;
            double dist = 0.0;
            for (std::size_t j : other) dist += std::abs(values[i] - values[j]);
            b = std::min(b, dist / static_cast<double>(other.size()));
        }
        const double denom = std::max(a, b);
        si[i] = denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return si;
}

BoxStats box_stats(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("box statistics of an empty cluster");
    std::sort(values.begin(), values.end());
    auto median = [](std::span<const double> v) {
        const std::size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    const std::size_t n = values.size();
    const std::span<const double> all(values);
    BoxStats s;
    s.count = n;
    s.min = values.front();
    s.max = values.back();
    s.median = median(all);
    if (n == 1) {
        s.q1 = s.q3 = values.front();
    } else {
        s.q1 = median(all.first(n / 2));
        s.q3 = median(all.last(n / 2));
    }
    return s;
}

void ClusterConfig::validate() const {
    if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("theta must lie in (0, 1)");
    if (k_max < 1) throw InvalidArgument("k_max must be at least 1");
    if (k && *k < 1) throw InvalidArgument("k must be at least 1");
}

ClusteringResult cluster_report(std::span<const LabelledValue> features, const ClusterConfig& config) {
    config.validate();
    if (features.empty()) throw InvalidArgument("cluster_report needs at least one feature value");
    std::vector<LabelledValue> sorted(features.begin(), features.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const LabelledValue& a, const LabelledValue& b) { return a.id < b.id; });

    ClusteringResult r;
    r.linkage = config.linkage;
    r.theta = config.theta;
    for (const auto& f : sorted) {
        if (!std::isfinite(f.value)) throw InvalidArgument("non-finite feature value for '" + f.id + "'");
        r.ids.push_back(f.id);
        r.values.push_back(f.value);
    }
    const std::size_t n = r.values.size();
    if (config.k && *config.k > n) {
        throw InvalidArgument("k=" + std::to_string(*config.k) + " exceeds the " + std::to_string(n) + " values");
    }

    const Dendrogram d = agglomerate(r.values, config.linkage);
    r.merges = d.merges;
    const std::size_t k_max = std::min(n, std::max(config.k_max, config.k.value_or(1)));
    r.wcss = wcss_curve(d, k_max);
    r.k = config.k ? *config.k : select_k_from_curve(std::span(r.wcss).first(std::min(config.k_max, n)), config.theta);
    r.labels = cut(d, r.k);
    if (r.k >= 2) r.silhouettes = silhouette(r.labels, r.values);

    std::vector<std::vector<double>> per_cluster(r.k);
    for (std::size_t i = 0; i < n; ++i) per_cluster[static_cast<std::size_t>(r.labels[i] - 1)].push_back(r.values[i]);
    for (std::size_t c = 0; c < r.k; ++c) {
        BoxStats s = box_stats(std::move(per_cluster[c]));
        s.cluster = static_cast<int>(c + 1);
        r.cluster_stats.push_back(s);
    }
    return r;
}

}  // namespace drivestyle
