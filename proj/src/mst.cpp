#include "wsnsim/mst.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "wsnsim/errors.hpp"

namespace wsnsim {

ClusterTree build_mst(std::span<const IndexedPoint> nodes, int root) {
    if (nodes.empty()) throw StateError("build_mst: empty node list");
    std::set<int> seen;
    for (const auto& n : nodes) {
        if (!seen.insert(n.id).second) throw DomainError("build_mst: duplicate node index");
    }
    if (!seen.contains(root)) throw DomainError("build_mst: root is not among the nodes");

    const int n = static_cast<int>(nodes.size());
    ClusterTree tree;
    tree.root = root;
    if (n == 1) return tree;

    int root_slot = 0;
    for (int i = 0; i < n; ++i) {
        if (nodes[i].id == root) root_slot = i;
    }

    // O(n^2) Prim: per outside node track the best inside attachment,
    // inside-id ties resolved toward the lower id.
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<bool> in_tree(n, false);
    std::vector<double> best_dist(n, kInf);
    std::vector<int> best_inside(n, -1);
    std::vector<int> hops(n, 0);

    auto absorb = [&](int slot) {
        in_tree[slot] = true;
        for (int j = 0; j < n; ++j) {
            if (in_tree[j]) continue;
            const double d = euclidean_distance(nodes[j].pos, nodes[slot].pos);
            if (d < best_dist[j] ||
                (d == best_dist[j] && nodes[slot].id < nodes[best_inside[j]].id)) {
                best_dist[j] = d;
                best_inside[j] = slot;
            }
        }
    };

    absorb(root_slot);
    for (int added = 1; added < n; ++added) {
        int pick = -1;
        for (int j = 0; j < n; ++j) {
            if (in_tree[j]) continue;
            if (pick < 0 || best_dist[j] < best_dist[pick] ||
                (best_dist[j] == best_dist[pick] && nodes[j].id < nodes[pick].id)) {
                pick = j;
            }
        }
        const int parent_slot = best_inside[pick];
        tree.edges.push_back({nodes[parent_slot].id, nodes[pick].id, best_dist[pick]});
        hops[pick] = hops[parent_slot] + 1;
        tree.depth = std::max(tree.depth, hops[pick]);
        absorb(pick);
    }
    return tree;
}

double total_weight(const ClusterTree& tree) {
    double sum = 0.0;
    for (const auto& e : tree.edges) sum += e.length;
    return sum;
}

std::vector<Transmission> transmission_schedule(const ClusterTree& tree) {
    std::map<int, const TreeEdge*> edge_of_child;
    std::map<int, int> depth;
    depth[tree.root] = 0;
    for (const auto& e : tree.edges) edge_of_child[e.child] = &e;

    // Edges were appended parents-first, so one forward pass fills depths.
    for (const auto& e : tree.edges) depth[e.child] = depth[e.parent] + 1;

    std::vector<int> order;
    for (const auto& [child, _] : edge_of_child) order.push_back(child);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (depth[a] != depth[b]) return depth[a] > depth[b];
        return a < b;
    });

    std::vector<Transmission> schedule;
    schedule.reserve(order.size());
    for (int child : order) {
        const TreeEdge* e = edge_of_child[child];
        schedule.push_back({e->child, e->parent, e->length});
    }
    return schedule;
}

}  // namespace wsnsim
