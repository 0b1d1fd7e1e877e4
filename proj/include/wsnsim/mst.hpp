#pragma once

#include <span>
#include <vector>

#include "wsnsim/geometry.hpp"

namespace wsnsim {

struct IndexedPoint {
    int id = 0;
    Point pos;
};

struct TreeEdge {
    int parent = 0;
    int child = 0;
    double length = 0.0;
};

// Spanning tree of one cluster, rooted at the CH. Edges appear in the
// order Prim's growth added them.
struct ClusterTree {
    int root = 0;
    std::vector<TreeEdge> edges;
    int depth = 0;  // max hops from any node to the root
};

struct Transmission {
    int sender = 0;
    int receiver = 0;
    double distance = 0.0;
};

// Minimum spanning tree grown from `root` by repeatedly attaching the
// cheapest crossing edge. Weight ties break by (lower outside id, lower
// inside id), so identical inputs always build the identical tree.
ClusterTree build_mst(std::span<const IndexedPoint> nodes, int root);

double total_weight(const ClusterTree& tree);

// Leaf-to-root send order: every non-root node transmits exactly once to
// its parent, after all of its children have transmitted. Nodes at equal
// depth go in ascending id order.
std::vector<Transmission> transmission_schedule(const ClusterTree& tree);

}  // namespace wsnsim
