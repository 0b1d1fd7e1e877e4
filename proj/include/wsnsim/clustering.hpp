#pragma once

#include <map>
#include <span>
#include <vector>

#include "wsnsim/geometry.hpp"

namespace wsnsim {

// Normalized per-node inputs to CH selection plus the combined score.
// node_id indexes the arrays the scores were computed from.
struct NodeScore {
    int node_id = 0;
    double e_norm = 0.0;
    double d_norm = 0.0;
    double c_norm = 0.0;
    double theta_norm = 0.0;
    double p_ch = 0.0;
};

// One round's cluster structure: the CH set, member-to-CH assignment and,
// in strict-radius mode, the nodes left without a reachable CH.
struct ClusterLayout {
    std::vector<int> ch_ids;              // sorted ascending
    std::map<int, int> assignment;        // member id -> ch id
    std::vector<int> orphan_ids;          // strict mode only; sorted ascending
};

struct TrapezoidParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

// Number of other nodes within `radius` of each node (boundary inclusive).
std::vector<int> local_density_centrality(std::span<const Point> positions, double radius);

// Index sets of the nodes within `radius` of each node (boundary inclusive,
// symmetric).
std::vector<std::vector<int>> neighbor_sets(std::span<const Point> positions, double radius);

// Neighborhood tightness: 1 - mean neighbor distance / radius, 0 for
// isolated nodes. Always in [0, 1].
std::vector<double> convergence_metric(std::span<const Point> positions,
                                       const std::vector<std::vector<int>>& neighbors,
                                       double radius);

// Max-normalizes the four raw criteria over the given (alive) population.
// p_ch is left unset; combine with ch_probability.
std::vector<NodeScore> normalize_scores(std::span<const double> energies,
                                        std::span<const double> dists_to_bs,
                                        std::span<const int> centralities,
                                        std::span<const double> thetas);

// Equal-weight combination of the four normalized criteria.
double ch_probability(const NodeScore& score);

// Picks every node whose p_ch lies strictly above the `percentile`
// empirical quantile (nearest-rank). Never returns an empty set: if no
// score clears the threshold, the single best node (lowest id on ties)
// is selected. Returned ids ascending.
std::vector<int> select_cluster_heads(std::span<const NodeScore> scores, double percentile);

// Nearest-CH membership. In strict mode nodes farther than r_cluster from
// every CH become orphans; otherwise they join the globally nearest CH.
// Distance ties break toward the lower CH id.
ClusterLayout assign_members(std::span<const Point> positions, std::span<const int> ch_ids,
                             double r_cluster, bool strict);

// Trapezoidal membership on [a,b,c,d]. Degenerate equal breakpoints take
// the limit from the plateau side, so a==b or c==d behaves as a step.
double trapezoid_membership(double x, const TrapezoidParams& p);

// Diagnostic linguistic grading of a normalized value against the three
// standard terms; returns the label with the highest membership.
struct TrapezoidSet {
    TrapezoidParams low{0.0, 0.0, 0.2, 0.4};
    TrapezoidParams medium{0.2, 0.4, 0.6, 0.8};
    TrapezoidParams high{0.6, 0.8, 1.0, 1.0};
};

const char* fuzzy_grade(double x, const TrapezoidSet& set);

}  // namespace wsnsim
