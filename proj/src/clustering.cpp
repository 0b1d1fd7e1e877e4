#include "wsnsim/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

void check_radius(double radius) {
    if (!(radius > 0)) throw ConfigError("neighborhood radius must be positive");
}

}  // namespace

std::vector<int> local_density_centrality(std::span<const Point> positions, double radius) {
    check_radius(radius);
    if (positions.empty()) throw StateError("local_density_centrality: empty position list");
    const int n = static_cast<int>(positions.size());
    std::vector<int> counts(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (euclidean_distance(positions[i], positions[j]) <= radius) {
                ++counts[i];
                ++counts[j];
            }
        }
    }
    return counts;
}

std::vector<std::vector<int>> neighbor_sets(std::span<const Point> positions, double radius) {
    check_radius(radius);
    const int n = static_cast<int>(positions.size());
    std::vector<std::vector<int>> sets(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (euclidean_distance(positions[i], positions[j]) <= radius) {
                sets[i].push_back(j);
                sets[j].push_back(i);
            }
        }
    }
    for (auto& s : sets) std::sort(s.begin(), s.end());
    return sets;
}

std::vector<double> convergence_metric(std::span<const Point> positions,
                                       const std::vector<std::vector<int>>& neighbors,
                                       double radius) {
    check_radius(radius);
    std::vector<double> theta(positions.size(), 0.0);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (neighbors[i].empty()) continue;
        double sum = 0.0;
        for (int j : neighbors[i]) {
            sum += euclidean_distance(positions[i], positions[j]);
        }
        theta[i] = 1.0 - (sum / static_cast<double>(neighbors[i].size())) / radius;
    }
    return theta;
}

std::vector<NodeScore> normalize_scores(std::span<const double> energies,
                                        std::span<const double> dists_to_bs,
                                        std::span<const int> centralities,
                                        std::span<const double> thetas) {
    const std::size_t n = energies.size();
    if (n == 0) throw StateError("normalize_scores: no alive nodes");
    if (dists_to_bs.size() != n || centralities.size() != n || thetas.size() != n) {
        throw ShapeError("normalize_scores: input lengths differ");
    }
    double e_max = 0.0, d_max = 0.0, theta_max = 0.0;
    int c_max = 0;
    for (std::size_t i = 0; i < n; ++i) {
        e_max = std::max(e_max, energies[i]);
        d_max = std::max(d_max, dists_to_bs[i]);
        c_max = std::max(c_max, centralities[i]);
        theta_max = std::max(theta_max, thetas[i]);
    }
    std::vector<NodeScore> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        NodeScore& s = scores[i];
        s.node_id = static_cast<int>(i);
        s.e_norm = e_max > 0 ? energies[i] / e_max : 0.0;
        s.d_norm = d_max > 0 ? 1.0 - dists_to_bs[i] / d_max : 0.0;
        s.c_norm = c_max > 0 ? static_cast<double>(centralities[i]) / c_max : 0.0;
        s.theta_norm = theta_max > 0 ? thetas[i] / theta_max : 0.0;
    }
    return scores;
}

double ch_probability(const NodeScore& score) {
    const double v[4] = {score.e_norm, score.d_norm, score.c_norm, score.theta_norm};
    for (double x : v) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw DomainError("ch_probability: normalized input outside [0,1]");
        }
    }
    return (score.e_norm + score.d_norm + score.c_norm + score.theta_norm) / 4.0;
}

std::vector<int> select_cluster_heads(std::span<const NodeScore> scores, double percentile) {
    if (scores.empty()) throw StateError("select_cluster_heads: empty score list");
    if (!(percentile > 0.0 && percentile < 1.0)) {
        throw ConfigError("ch percentile must lie in (0,1)");
    }
    const std::size_t n = scores.size();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = scores[i].p_ch;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    // Nearest-rank quantile: the ceil(p*n)-th smallest value.
    auto rank = static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    const double threshold = sorted[rank - 1];

    std::vector<int> chs;
    for (const NodeScore& s : scores) {
        if (s.p_ch > threshold) chs.push_back(s.node_id);
    }
    if (chs.empty()) {
        int best = scores[0].node_id;
        double best_p = scores[0].p_ch;
        for (const NodeScore& s : scores) {
            if (s.p_ch > best_p || (s.p_ch == best_p && s.node_id < best)) {
                best = s.node_id;
                best_p = s.p_ch;
            }
        }
        chs.push_back(best);
    }
    std::sort(chs.begin(), chs.end());
    return chs;
}

ClusterLayout assign_members(std::span<const Point> positions, std::span<const int> ch_ids,
                             double r_cluster, bool strict) {
    if (ch_ids.empty()) throw StateError("assign_members: no cluster heads");
    ClusterLayout layout;
    layout.ch_ids.assign(ch_ids.begin(), ch_ids.end());
    std::sort(layout.ch_ids.begin(), layout.ch_ids.end());

    for (int i = 0; i < static_cast<int>(positions.size()); ++i) {
        if (std::binary_search(layout.ch_ids.begin(), layout.ch_ids.end(), i)) continue;
        int best_ch = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int ch : layout.ch_ids) {
            const double d = euclidean_distance(positions[i], positions[ch]);
            if (d < best_d) {  // ties keep the earlier (lower) ch id
                best_d = d;
                best_ch = ch;
            }
        }
        if (strict && best_d > r_cluster) {
            layout.orphan_ids.push_back(i);
        } else {
            layout.assignment.emplace(i, best_ch);
        }
    }
    return layout;
}

double trapezoid_membership(double x, const TrapezoidParams& p) {
    if (!(p.a <= p.b && p.b <= p.c && p.c <= p.d)) {
        throw ConfigError("trapezoid breakpoints must be ordered a<=b<=c<=d");
    }
    // Plateau first so degenerate a==b / c==d resolve from the plateau side.
    if (x >= p.b && x <= p.c) return 1.0;
    if (x <= p.a || x >= p.d) return 0.0;
    if (x < p.b) return (x - p.a) / (p.b - p.a);
    return (p.d - x) / (p.d - p.c);
}

const char* fuzzy_grade(double x, const TrapezoidSet& set) {
    const double lo = trapezoid_membership(x, set.low);
    const double mid = trapezoid_membership(x, set.medium);
    const double hi = trapezoid_membership(x, set.high);
    if (hi >= mid && hi >= lo) return "high";
    if (mid >= lo) return "medium";
    return "low";
}

}  // namespace wsnsim
