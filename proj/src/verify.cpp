#include "wsnsim/verify.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "wsnsim/bpnn.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

namespace {

struct FlatEdge {
    int a = 0;
    int b = 0;
    double w = 0.0;
};

// Union-find over <= 16 slots, copied freely during backtracking.
struct MiniDsu {
    int parent[16];

    explicit MiniDsu(int n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

void enumerate_trees(const std::vector<FlatEdge>& edges, std::size_t idx, int chosen, int need,
                     double weight, MiniDsu dsu, double& best) {
    if (chosen == need) {
        best = std::min(best, weight);
        return;
    }
    if (idx >= edges.size() || edges.size() - idx < static_cast<std::size_t>(need - chosen)) {
        return;
    }
    if (weight >= best) return;
    // include edges[idx] if it joins two components
    MiniDsu with = dsu;
    if (with.unite(edges[idx].a, edges[idx].b)) {
        enumerate_trees(edges, idx + 1, chosen + 1, need, weight + edges[idx].w, with, best);
    }
    // exclude edges[idx]
    enumerate_trees(edges, idx + 1, chosen, need, weight, dsu, best);
}

// Evaluates half squared error for one (net, input, target) triple.
double half_sq_err(const Mlp& net, std::span<const double> x, double target) {
    const double y = forward(net, x);
    return 0.5 * (y - target) * (y - target);
}

// Smallest |pre-activation| across all hidden layers: finite differences
// are only trustworthy away from the ReLU kinks.
double min_abs_hidden_z(const Mlp& net, std::span<const double> x) {
    ForwardCache cache;
    forward(net, x, cache);
    double m = 1e300;
    for (std::size_t k = 0; k + 1 < cache.z.size(); ++k) {
        for (double z : cache.z[k]) m = std::min(m, std::abs(z));
    }
    return m;
}

}  // namespace

double min_spanning_weight_by_enumeration(std::span<const IndexedPoint> nodes) {
    const int n = static_cast<int>(nodes.size());
    if (n <= 1) return 0.0;
    std::vector<FlatEdge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.push_back({i, j, euclidean_distance(nodes[i].pos, nodes[j].pos)});
        }
    }
    // Cheapest edges first makes the weight-bound pruning effective.
    std::sort(edges.begin(), edges.end(),
              [](const FlatEdge& x, const FlatEdge& y) { return x.w < y.w; });
    double best = 1e300;
    enumerate_trees(edges, 0, 0, n - 1, 0.0, MiniDsu(n), best);
    return best;
}

GradCheckReport run_gradient_check(std::uint64_t seed, int net_count, bool inject_bug) {
    GradCheckReport report;
    Rng rng(seed, "gradcheck");
    constexpr double kH = 1e-5;
    constexpr double kRelTol = 1e-4;
    constexpr double kAbsTol = 1e-7;

    int built = 0;
    while (report.nets_checked < net_count) {
        const int hidden_layers = static_cast<int>(rng.uniform_int(1, 2));
        std::vector<int> sizes{static_cast<int>(rng.uniform_int(1, 8))};
        for (int k = 0; k < hidden_layers; ++k) {
            sizes.push_back(static_cast<int>(rng.uniform_int(1, 8)));
        }
        sizes.push_back(1);
        Mlp net = init_weights(sizes, seed * 1000003ull + built);
        ++built;

        std::vector<double> x(sizes.front());
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
        const double target = rng.uniform(-1.0, 1.0);

        // Skip draws whose pre-activations sit close to a ReLU kink; the
        // numeric oracle is invalid across the non-differentiable point.
        if (min_abs_hidden_z(net, x) < 1e-3) continue;

        ForwardCache cache;
        forward(net, x, cache);
        Gradients grads = backward(net, cache, target);
        if (inject_bug && report.nets_checked == 0) {
            grads.d_weights[0][0] += 0.5;
        }

        for (std::size_t k = 0; k < net.layers.size(); ++k) {
            auto check_param = [&](double& param, double analytic, int index) {
                const double keep = param;
                param = keep + kH;
                const double hi = half_sq_err(net, x, target);
                param = keep - kH;
                const double lo = half_sq_err(net, x, target);
                param = keep;
                const double numeric = (hi - lo) / (2.0 * kH);
                const double abs_err = std::abs(analytic - numeric);
                const double denom = std::max(std::abs(analytic), std::abs(numeric));
                // Entries with near-zero gradient are judged on absolute
                // error; everything else on relative error.
                const double rel = denom >= kAbsTol ? abs_err / denom
                                                    : (abs_err < kAbsTol ? 0.0 : 1.0);
                if (rel > report.max_rel_err) {
                    report.max_rel_err = rel;
                    report.worst_net = report.nets_checked;
                    report.worst_layer = static_cast<int>(k);
                    report.worst_index = index;
                }
            };
            Layer& layer = net.layers[k];
            for (std::size_t i = 0; i < layer.weights.size(); ++i) {
                check_param(layer.weights[i], grads.d_weights[k][i], static_cast<int>(i));
            }
            for (std::size_t i = 0; i < layer.biases.size(); ++i) {
                check_param(layer.biases[i], grads.d_biases[k][i],
                            static_cast<int>(layer.weights.size() + i));
            }
        }
        ++report.nets_checked;
    }
    report.pass = report.max_rel_err < kRelTol;
    return report;
}

MstCheckReport run_mst_check(std::uint64_t seed, int cluster_count) {
    MstCheckReport report;
    Rng rng(seed, "mstcheck");
    for (int c = 0; c < cluster_count; ++c) {
        const int n = static_cast<int>(rng.uniform_int(4, 8));
        std::vector<IndexedPoint> nodes;
        for (int i = 0; i < n; ++i) {
            nodes.push_back({i, {rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)}});
        }
        const double prim = total_weight(build_mst(nodes, 0));
        const double oracle = min_spanning_weight_by_enumeration(nodes);
        const double gap = std::abs(prim - oracle);
        if (gap > report.max_abs_gap) {
            report.max_abs_gap = gap;
            report.worst_cluster = c;
            report.worst_nodes = nodes;
        }
        ++report.clusters_checked;
    }
    report.pass = report.max_abs_gap <= 1e-9;
    return report;
}

std::string gradcheck_report_json(const GradCheckReport& report) {
    nlohmann::ordered_json doc;
    doc["check"] = "gradcheck";
    doc["nets_checked"] = report.nets_checked;
    doc["max_rel_err"] = report.max_rel_err;
    doc["worst_net"] = report.worst_net;
    doc["worst_layer"] = report.worst_layer;
    doc["worst_index"] = report.worst_index;
    doc["pass"] = report.pass;
    return doc.dump(2) + "\n";
}

std::string mstcheck_report_json(const MstCheckReport& report) {
    nlohmann::ordered_json doc;
    doc["check"] = "mstcheck";
    doc["clusters_checked"] = report.clusters_checked;
    doc["max_abs_gap"] = report.max_abs_gap;
    doc["pass"] = report.pass;
    if (!report.worst_nodes.empty() && !report.pass) {
        auto coords = nlohmann::ordered_json::array();
        for (const auto& n : report.worst_nodes) {
            coords.push_back({{"id", n.id}, {"x", n.pos.x}, {"y", n.pos.y}});
        }
        doc["worst_cluster"] = report.worst_cluster;
        doc["worst_nodes"] = coords;
    }
    return doc.dump(2) + "\n";
}

}  // namespace wsnsim
